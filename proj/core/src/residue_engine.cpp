#include "residuum/residue_engine.hpp"

#include "residuum/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace residuum {
namespace {

Complex two_pi_i_power(std::size_t r) { return pow(Complex(Real(0), 2 * real_pi()), static_cast<int>(r)); }

bool same_point(std::span<const Complex> a, std::span<const Complex> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!approx_equal(a[i], b[i], coincidence_tolerance())) return false;
  return true;
}

bool soluble(const Arrangement& a, const Flag& flag, const Polyhedron& pi) {
  const RationalMatrix j = jacobian(a, flag, pi);
  for (std::size_t k = 1; k <= j.rows(); ++k)
    if (leading_principal_minor(j, k) == 0) return false;
  return true;
}

// Row-reduced echelon form; used as a canonical key for a row space.
RationalMatrix rref(RationalMatrix m) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    const Rational d = m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) /= d;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    ++row;
  }
  RationalMatrix out(row, m.cols());
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

}  // namespace

const char* to_string(Convergence c) {
  switch (c) {
    case Convergence::BoundedNumeratorRule: return "BoundedNumeratorRule";
    case Convergence::DecayRule: return "DecayRule";
    case Convergence::UserAsserted: return "UserAsserted";
    case Convergence::Unknown: return "Unknown";
  }
  return "Unknown";
}

Complex truncated_iterated_residue(const Arrangement& a, const Flag& flag, const Polyhedron& pi) {
  const std::size_t r = a.dimension();
  if (flag.depth() != r) throw Error(ErrorKind::DimensionMismatch, "residue needs a complete flag");
  if (pi.dimension() != r) throw Error(ErrorKind::DimensionMismatch, "polyhedron dimension");
  const auto images = linear_images(pi.v());
  ExpRationalFunction g = a.integrand().compose(images, r);
  std::vector<AffineForm> forms;
  for (std::size_t idx : flag.indices) forms.push_back(a.hyperplanes().at(idx).g().compose(images, r));

  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t n = r - k;
    const AffineForm& h = forms[k];
    const Rational lead = h.lin[0];
    if (lead == 0) return Complex();
    AffineForm point(std::vector<Rational>(n - 1), -h.c / Complex(to_real(lead)));
    for (std::size_t j = 1; j < n; ++j) point.lin[j - 1] = -h.lin[j] / lead;
    g = g.residue_1d(0, point);
    const auto sub = substitution_images(n, 0, point);
    for (std::size_t m = k + 1; m < r; ++m) forms[m] = forms[m].compose(sub, n - 1);
  }
  return g(std::span<const Complex>{});
}

std::vector<std::size_t> first_step_poles(const Arrangement& a, const Polyhedron& pi) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::vector<std::size_t> one{k};
    if (jacobian(a, Flag{one}, pi)(0, 0) > 0) out.push_back(k);
  }
  return out;
}

ExpRationalFunction first_step_residue(const Arrangement& a, std::size_t k, const Polyhedron& pi) {
  const std::size_t r = a.dimension();
  const auto images = linear_images(pi.v());
  const AffineForm h = a.hyperplanes().at(k).g().compose(images, r);
  const Rational lead = h.lin[0];
  if (lead == 0) throw Error(ErrorKind::InsolubleFlag, "hyperplane has no pole in z_1");
  AffineForm point(std::vector<Rational>(r - 1), -h.c / Complex(to_real(lead)));
  for (std::size_t j = 1; j < r; ++j) point.lin[j - 1] = -h.lin[j] / lead;
  return a.integrand().compose(images, r).residue_1d(0, point);
}

Complex iterated_residue(const Arrangement& a, const Flag& flag, const Polyhedron& pi) {
  if (!soluble(a, flag, pi))
    throw Error(ErrorKind::InsolubleFlag, "flag " + flag.label() + " lies outside the open Bruhat cell");
  return truncated_iterated_residue(a, flag, pi);
}

Complex intrinsic_iterated_residue(const Arrangement& a, const Flag& flag, const Polyhedron& pi) {
  return Complex(to_real(pi.det_v())) * iterated_residue(a, flag, pi);
}

ResidueResult evaluate_integral(const Arrangement& a, const Polyhedron& pi, const EvaluateOptions& options) {
  const std::size_t r = a.dimension();
  const Complex scale = Complex(to_real(abs(pi.det_v()))) * two_pi_i_power(r);
  ResidueResult result;
  Complex sum;
  for (const auto& group : stable_flags(a, pi)) {
    FlagContribution c{group.representative, group.collections, pole_location(a, group.representative),
                       truncated_iterated_residue(a, group.representative, pi)};
    sum += c.residue;
    result.flag_contributions.push_back(std::move(c));
  }
  result.value = scale * sum;

  result.audit = compatibility_audit(a, pi);
  result.certificate.all_compatible = result.audit.all_compatible;
  const Convergence verdict = convergence_heuristic(a, pi);
  result.certificate.convergence =
      verdict == Convergence::Unknown && options.assert_convergence ? Convergence::UserAsserted : verdict;
  if (!result.audit.all_compatible)
    result.certificate.warnings.push_back("polyhedron is not compatible with every flag; result NOT CERTIFIED");
  if (result.certificate.convergence == Convergence::Unknown)
    result.certificate.warnings.push_back("no sufficient convergence condition applies; result NOT CERTIFIED");
  if (result.flag_contributions.empty()) result.certificate.warnings.push_back("no stable flags; empty residue sum");

  const std::vector<Real> zeros(r > 0 ? r - 1 : 0, Real(0));
  const auto all = enumerate_flags(a, r);
  for (const auto& flag : all) {
    if (!soluble(a, flag, pi)) continue;
    if (z_star(a, flag, pi, zeros).boundary)
      result.certificate.warnings.push_back("flag " + flag.label() + " has a pole on the real contour (Im z* = 0)");
  }
  Complex naive;
  for (const auto& group : group_by_flag(a, all)) {
    const auto point = pole_location(a, group.representative);
    if (pi.contains(point)) naive += truncated_iterated_residue(a, group.representative, pi);
  }
  result.terminal_point_sum = scale * naive;
  return result;
}

std::string DivisorGrouping::label() const {
  std::string out = "(";
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (k) out += ", ";
    for (std::size_t idx : groups[k]) out += "H" + std::to_string(idx + 1);
  }
  return out + ")";
}

std::vector<Flag> arising_collections(const Arrangement& a, const DivisorGrouping& d) {
  const std::size_t r = a.dimension();
  if (d.groups.size() != r) throw Error(ErrorKind::DimensionMismatch, "grouping needs r divisors");
  std::vector<Flag> out;
  Flag current;
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == r) {
      out.push_back(current);
      return;
    }
    for (std::size_t idx : d.groups[k]) {
      if (idx >= a.size()) throw Error(ErrorKind::IndexOutOfRange, "grouping references an unknown hyperplane");
      if (std::find(current.indices.begin(), current.indices.end(), idx) != current.indices.end()) continue;
      current.indices.push_back(idx);
      if (rank(a.f_matrix(current.indices)) == current.depth()) self(self, k + 1);
      current.indices.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<Flag> arising_collections(const Arrangement& a, const DivisorGrouping& d, std::span<const Complex> m) {
  std::vector<Flag> out;
  for (auto& f : arising_collections(a, d))
    if (same_point(pole_location(a, f), m)) out.push_back(std::move(f));
  return out;
}

std::vector<std::vector<Complex>> grouping_points(const Arrangement& a, const DivisorGrouping& d) {
  std::vector<std::vector<Complex>> points;
  for (const auto& f : arising_collections(a, d)) {
    auto p = pole_location(a, f);
    const bool seen = std::any_of(points.begin(), points.end(), [&](const auto& q) { return same_point(p, q); });
    if (!seen) points.push_back(std::move(p));
  }
  return points;
}

std::vector<Polyhedron> coordinate_candidates(const Polyhedron& pi) {
  const std::size_t r = pi.dimension();
  std::vector<Polyhedron> out;
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do out.push_back(pi.permuted(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  const Polyhedron standard = Polyhedron::standard(r);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do out.push_back(standard.permuted(perm));
  while (std::next_permutation(perm.begin(), perm.end()));
  // Small integer bases; some of them is generic for any finite set of flags.
  for (int bound = 1; bound <= 2; ++bound) {
    const std::size_t width = static_cast<std::size_t>(2 * bound + 1);
    std::size_t total = 1;
    for (std::size_t k = 0; k < r * r; ++k) total *= width;
    for (std::size_t code = 0; code < total && out.size() < 4000; ++code) {
      std::vector<std::vector<Rational>> gens(r, std::vector<Rational>(r));
      std::size_t c = code;
      for (std::size_t k = 0; k < r * r; ++k, c /= width)
        gens[k / r][k % r] = static_cast<int>(c % width) - bound;
      if (determinant(RationalMatrix::from_columns(gens)) == 0) continue;
      out.push_back(Polyhedron::from_generators(gens));
    }
  }
  return out;
}

Complex grothendieck_residue(const Arrangement& a, const DivisorGrouping& d, std::span<const Complex> m,
                             const Polyhedron& pi) {
  const auto collections = arising_collections(a, d, m);
  const auto groups = group_by_flag(a, collections);
  for (const auto& coords : coordinate_candidates(pi)) {
    const bool ok = std::all_of(groups.begin(), groups.end(),
                                [&](const FlagGroup& g) { return soluble(a, g.representative, coords); });
    if (!ok) continue;
    Complex sum;
    for (const auto& g : groups) sum += truncated_iterated_residue(a, g.representative, coords);
    return Complex(to_real(coords.det_v())) * sum;
  }
  throw Error(ErrorKind::BruhatViolation,
              "no coordinate system puts every flag arising from " + d.label() + " in the open Bruhat cell");
}

DivisorGrouping canonical_grouping(const Arrangement& a, const Polyhedron& pi) {
  const auto stable = stable_collections(a, pi);
  if (stable.empty()) throw Error(ErrorKind::EmptyStableSet, "no Π-stable collections");
  DivisorGrouping d;
  d.groups.resize(a.dimension());
  for (const auto& c : stable)
    for (std::size_t k = 0; k < c.depth(); ++k)
      if (std::find(d.groups[k].begin(), d.groups[k].end(), c.indices[k]) == d.groups[k].end())
        d.groups[k].push_back(c.indices[k]);
  for (auto& g : d.groups) std::sort(g.begin(), g.end());
  return d;
}

GroupingReport grouping_report(const Arrangement& a, const Polyhedron& pi) {
  GroupingReport report;
  report.grouping = canonical_grouping(a, pi);
  for (auto& p : grouping_points(a, report.grouping)) {
    Complex res = grothendieck_residue(a, report.grouping, p, pi);
    report.sum += res;
    report.points.push_back({std::move(p), std::move(res)});
  }
  const Complex sign(pi.det_v() > 0 ? 1 : -1);
  report.expected = sign * evaluate_integral(a, pi).value / two_pi_i_power(a.dimension());
  return report;
}

bool exponent_bounded_on(const ExpForm& e, const Polyhedron& pi) {
  const Real tol = coincidence_tolerance();
  for (const auto& l : e.lin)
    if (abs(l.real()) > tol) return false;
  for (std::size_t k = 0; k < pi.dimension(); ++k) {
    Real growth = 0;
    const auto v = pi.generator(k);
    for (std::size_t j = 0; j < v.size(); ++j) growth += e.lin[j].imag() * to_real(v[j]);
    if (growth < -tol) return false;
  }
  return true;
}

bool absolutely_convergent(const Arrangement& a, unsigned numerator_degree) {
  const std::size_t r = a.dimension();
  const std::size_t n = a.size();
  if (n > 20) throw Error(ErrorKind::BudgetExceeded, "too many hyperplanes for the flat enumeration");
  std::vector<RationalMatrix> seen;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) subset.push_back(i);
    const RationalMatrix key = subset.empty() ? RationalMatrix(0, r) : rref(a.f_matrix(subset));
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    const std::size_t dim_w = r - key.rows();
    if (dim_w == 0) continue;
    unsigned weight = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::size_t> with = subset;
      with.push_back(k);
      if (rank(a.f_matrix(with)) > key.rows()) weight += a.hyperplanes()[k].multiplicity;
    }
    if (weight <= dim_w + numerator_degree) return false;
  }
  return true;
}

Convergence convergence_heuristic(const Arrangement& a, const Polyhedron& pi) {
  if (!compatibility_audit(a, pi).all_compatible) return Convergence::Unknown;
  bool bounded = true;
  unsigned degree = 0;
  for (const auto& t : a.numerator().terms()) {
    bounded = bounded && exponent_bounded_on(t.exponent, pi);
    degree = std::max(degree, t.poly.total_degree());
  }
  if (!bounded) return Convergence::Unknown;
  const unsigned big_r = a.denominator_degree();
  if (big_r > a.dimension() && degree == 0) return Convergence::BoundedNumeratorRule;
  if (degree < big_r && absolutely_convergent(a, degree)) return Convergence::DecayRule;
  return Convergence::Unknown;
}

PermutationProbe permutation_stability_probe(const Arrangement& a, const Polyhedron& pi) {
  PermutationProbe probe;
  for (const auto& flag : stable_collections(a, pi)) {
    ++probe.stable_checked;
    std::vector<std::size_t> perm(flag.depth());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    while (std::next_permutation(perm.begin(), perm.end())) {
      Flag permuted;
      for (std::size_t i : perm) permuted.indices.push_back(flag.indices[i]);
      if (minor_profile(jacobian(a, permuted, pi)).stable) probe.counterexamples.push_back({flag, permuted});
    }
  }
  return probe;
}

}  // namespace residuum
