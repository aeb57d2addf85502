#include "residuum/arrangement.hpp"

#include "residuum/errors.hpp"

#include <algorithm>
#include <numeric>

namespace residuum {
namespace {

Integer lcm_of_denominators(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, Integer(denominator(q)));
  return l;
}

Integer gcd_of_numerators(std::span<const Rational> v) {
  Integer g = 0;
  for (const auto& q : v) g = gcd(g, Integer(numerator(q)));
  return g;
}

// Some k columns of the k x r matrix m that form an invertible block.
std::vector<std::size_t> independent_columns(const RationalMatrix& m) {
  const std::size_t k = m.rows();
  const std::size_t r = m.cols();
  std::vector<bool> choose(r, false);
  std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), true);
  std::vector<std::size_t> rows(k);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  do {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < r; ++j)
      if (choose[j]) cols.push_back(j);
    if (determinant(m.submatrix(rows, cols)) != 0) return cols;
  } while (std::prev_permutation(choose.begin(), choose.end()));
  throw Error(ErrorKind::SingularSystem, "flag rows are not transverse");
}

bool contains_hyperplane(const Arrangement& a, std::span<const std::size_t> prefix, std::size_t h) {
  const auto& hs = a.hyperplanes();
  const RationalMatrix f = a.f_matrix(prefix);
  const auto cols = independent_columns(f);
  std::vector<std::size_t> rows(prefix.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  const auto block_inv = inverse(f.submatrix(rows, cols));
  // c · F = f_h, determined from the invertible block, then verified on all columns.
  std::vector<Rational> c(prefix.size(), Rational(0));
  for (std::size_t i = 0; i < prefix.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) c[i] += hs[h].f[cols[j]] * (*block_inv)(j, i);
  for (std::size_t col = 0; col < f.cols(); ++col) {
    Rational v = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) v += c[i] * f(i, col);
    if (v != hs[h].f[col]) return false;
  }
  Complex s;
  for (std::size_t i = 0; i < prefix.size(); ++i) s += Complex(to_real(c[i])) * hs[prefix[i]].s;
  return approx_equal(s, hs[h].s, coincidence_tolerance());
}

}  // namespace

AffineForm Hyperplane::g() const { return {f, -Complex::i() * s}; }

CanonicalHyperplane canonicalize_hyperplane(std::span<const GaussianRational> a, const Complex& b) {
  const std::size_t n = a.size();
  std::vector<Rational> re(n), im(n);
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = a[j].re;
    im[j] = a[j].im;
  }
  const bool re_zero = std::all_of(re.begin(), re.end(), [](const Rational& q) { return q == 0; });
  std::vector<Rational> d = re_zero ? im : re;
  const auto lead = std::find_if(d.begin(), d.end(), [](const Rational& q) { return q != 0; });
  if (lead == d.end()) throw Error(ErrorKind::InvalidProblem, "denominator factor has no linear part");
  const std::size_t p = static_cast<std::size_t>(lead - d.begin());
  GaussianRational mu = a[p] / GaussianRational{d[p], 0};
  for (std::size_t j = 0; j < n; ++j)
    if (!(a[j] == mu * GaussianRational{d[j], 0}))
      throw Error(ErrorKind::NotAlignable, "real and imaginary parts of the linear form are not parallel");

  const Integer l = lcm_of_denominators(d);
  for (auto& q : d) q *= l;
  const Integer g = gcd_of_numerators(d);
  for (auto& q : d) q /= g;
  mu = mu / GaussianRational{Rational(l, g), 0};

  Complex lambda = mu.to_complex();
  Complex s = Complex::i() * b / lambda;
  if (abs(s.real()) <= coincidence_tolerance() * max(Real(1), abs(s)))
    throw Error(ErrorKind::MeetsRealLocus, "hyperplane meets the real locus");
  if (s.real() < 0) {
    for (auto& q : d) q = -q;
    lambda = -lambda;
    s = -s;
  }
  return {Hyperplane{std::move(d), std::move(s), 1}, std::move(lambda)};
}

Polyhedron Polyhedron::from_generators(const std::vector<std::vector<Rational>>& generators) {
  Polyhedron p;
  p.v_ = RationalMatrix::from_columns(generators);
  if (p.v_.rows() != p.v_.cols()) throw Error(ErrorKind::InvalidProblem, "cone needs exactly r generators");
  auto inv = inverse(p.v_);
  if (!inv) throw Error(ErrorKind::InvalidProblem, "cone generators are linearly dependent");
  p.z_ = std::move(*inv);
  p.det_ = determinant(p.v_);
  return p;
}

Polyhedron Polyhedron::standard(std::size_t r) {
  std::vector<std::vector<Rational>> gens(r, std::vector<Rational>(r, Rational(0)));
  for (std::size_t k = 0; k < r; ++k) gens[k][k] = 1;
  return from_generators(gens);
}

Polyhedron Polyhedron::permuted(std::span<const std::size_t> perm) const {
  std::vector<std::vector<Rational>> gens;
  for (std::size_t k : perm) gens.push_back(generator(k));
  return from_generators(gens);
}

bool Polyhedron::contains(std::span<const Complex> point) const {
  for (std::size_t k = 0; k < z_.rows(); ++k) {
    Real im = 0;
    for (std::size_t j = 0; j < z_.cols(); ++j) im += to_real(z_(k, j)) * point[j].imag();
    if (im < -coincidence_tolerance()) return false;
  }
  return true;
}

std::string Flag::label() const {
  bool small = std::all_of(indices.begin(), indices.end(), [](std::size_t i) { return i < 9; });
  std::string out = "γ";
  if (!small) out += "(";
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (!small && k) out += ",";
    out += std::to_string(indices[k] + 1);
  }
  if (!small) out += ")";
  return out;
}

Arrangement::Arrangement(std::size_t r, ExpRationalFunction numerator)
    : r_(r), numerator_(std::move(numerator)) {
  if (numerator_.arity() != r_) throw Error(ErrorKind::DimensionMismatch, "numerator arity");
  for (const auto& t : numerator_.terms())
    if (!t.denominator.empty())
      throw Error(ErrorKind::InvalidProblem, "numerator must not carry denominators");
}

unsigned Arrangement::denominator_degree() const {
  unsigned d = 0;
  for (const auto& h : hyperplanes_) d += h.multiplicity;
  return d;
}

std::size_t Arrangement::add_factor(std::span<const GaussianRational> a, const Complex& b, unsigned multiplicity) {
  if (a.size() != r_) throw Error(ErrorKind::DimensionMismatch, "factor arity");
  auto canon = canonicalize_hyperplane(a, b);
  canon.hyperplane.multiplicity = multiplicity;
  multiply_numerator(pow(Complex(1) / canon.scale, static_cast<int>(multiplicity)));
  return add_hyperplane(std::move(canon.hyperplane));
}

std::size_t Arrangement::add_hyperplane(Hyperplane h) {
  if (h.dimension() != r_) throw Error(ErrorKind::DimensionMismatch, "hyperplane dimension");
  if (!(h.s.real() > 0)) throw Error(ErrorKind::MeetsRealLocus, "hyperplane needs Re s > 0");
  for (std::size_t k = 0; k < hyperplanes_.size(); ++k) {
    if (hyperplanes_[k].f == h.f && approx_equal(hyperplanes_[k].s, h.s, coincidence_tolerance())) {
      hyperplanes_[k].multiplicity += h.multiplicity;
      return k;
    }
  }
  hyperplanes_.push_back(std::move(h));
  return hyperplanes_.size() - 1;
}

void Arrangement::multiply_numerator(const Complex& c) { numerator_ *= c; }

ExpRationalFunction Arrangement::integrand() const {
  ExpRationalFunction f = numerator_;
  for (const auto& h : hyperplanes_) f = f.divided_by(h.g(), h.multiplicity);
  return f;
}

RationalMatrix Arrangement::f_matrix(std::span<const std::size_t> indices) const {
  RationalMatrix m(indices.size(), r_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= hyperplanes_.size()) throw Error(ErrorKind::IndexOutOfRange, "hyperplane index");
    for (std::size_t j = 0; j < r_; ++j) m(i, j) = hyperplanes_[indices[i]].f[j];
  }
  return m;
}

RationalMatrix jacobian(std::span<const Hyperplane> hyperplanes, const Polyhedron& pi) {
  if (hyperplanes.empty() || hyperplanes.size() > pi.dimension())
    throw Error(ErrorKind::DimensionMismatch, "jacobian needs 1..r hyperplanes");
  RationalMatrix f(hyperplanes.size(), pi.dimension());
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    if (hyperplanes[i].dimension() != pi.dimension()) throw Error(ErrorKind::DimensionMismatch, "hyperplane dimension");
    for (std::size_t j = 0; j < pi.dimension(); ++j) f(i, j) = hyperplanes[i].f[j];
  }
  return f * pi.v();
}

RationalMatrix jacobian(const Arrangement& a, const Flag& flag, const Polyhedron& pi) {
  if (flag.indices.empty() || flag.depth() > pi.dimension())
    throw Error(ErrorKind::DimensionMismatch, "jacobian needs 1..r hyperplanes");
  if (a.dimension() != pi.dimension()) throw Error(ErrorKind::DimensionMismatch, "polyhedron dimension");
  return a.f_matrix(flag.indices) * pi.v();
}

std::vector<Flag> enumerate_flags(const Arrangement& a, std::size_t k) {
  if (k < 1 || k > a.dimension()) throw Error(ErrorKind::IndexOutOfRange, "flag depth");
  std::vector<Flag> out;
  Flag current;
  std::vector<bool> used(a.size(), false);
  auto recurse = [&](auto&& self) -> void {
    if (current.depth() == k) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used[i]) continue;
      current.indices.push_back(i);
      if (rank(a.f_matrix(current.indices)) == current.depth()) {
        used[i] = true;
        self(self);
        used[i] = false;
      }
      current.indices.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

std::vector<FlagClass> classify_flags(const Arrangement& a, const Polyhedron& pi) {
  std::vector<FlagClass> out;
  for (auto& flag : enumerate_flags(a, a.dimension())) {
    RationalMatrix j = jacobian(a, flag, pi);
    MinorProfile prof = minor_profile(j);
    out.push_back({std::move(flag), std::move(j), std::move(prof)});
  }
  return out;
}

std::vector<Flag> stable_collections(const Arrangement& a, const Polyhedron& pi) {
  std::vector<Flag> out;
  for (auto& c : classify_flags(a, pi))
    if (c.profile.stable) out.push_back(std::move(c.flag));
  return out;
}

bool same_flag(const Arrangement& a, const Flag& x, const Flag& y) {
  if (x.depth() != y.depth()) return false;
  for (std::size_t k = 1; k <= x.depth(); ++k) {
    std::span<const std::size_t> prefix(x.indices.data(), k);
    for (std::size_t i = 0; i < k; ++i)
      if (!contains_hyperplane(a, prefix, y.indices[i])) return false;
  }
  return true;
}

std::vector<FlagGroup> group_by_flag(const Arrangement& a, std::span<const Flag> collections) {
  std::vector<FlagGroup> groups;
  for (const auto& c : collections) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const FlagGroup& g) { return same_flag(a, g.representative, c); });
    if (it == groups.end()) groups.push_back({c, {c}});
    else it->collections.push_back(c);
  }
  return groups;
}

std::vector<FlagGroup> stable_flags(const Arrangement& a, const Polyhedron& pi) {
  const auto collections = stable_collections(a, pi);
  return group_by_flag(a, collections);
}

AuditReport compatibility_audit(const Arrangement& a, const Polyhedron& pi) {
  AuditReport report;
  for (auto& c : classify_flags(a, pi)) {
    if (c.profile.compatible) continue;
    report.all_compatible = false;
    ++report.violation_count;
    if (report.violators.size() >= AuditReport::kMaxViolators) continue;
    Violation v{std::move(c.flag), std::move(c.jacobian), {}};
    for (const auto& [jl, q] : c.profile.q)
      if (q > 0) v.positive_q.emplace_back(jl.first, jl.second, q);
    report.violators.push_back(std::move(v));
  }
  return report;
}

std::vector<Complex> pole_location(const Arrangement& a, const Flag& flag) {
  if (flag.depth() != a.dimension()) throw Error(ErrorKind::DimensionMismatch, "pole location needs a complete flag");
  const auto inv = inverse(a.f_matrix(flag.indices));
  if (!inv) throw Error(ErrorKind::SingularSystem, "flag hyperplanes are not transverse");
  const std::size_t r = a.dimension();
  std::vector<Complex> z(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if ((*inv)(i, j) != 0)
        z[i] += Complex(to_real((*inv)(i, j))) * Complex::i() * a.hyperplanes()[flag.indices[j]].s;
  return z;
}

ZStar z_star(const Arrangement& a, const Flag& flag, const Polyhedron& pi, std::span<const Real> x) {
  const std::size_t r = a.dimension();
  if (flag.depth() != r) throw Error(ErrorKind::DimensionMismatch, "z* needs a complete flag");
  if (x.size() + 1 != r) throw Error(ErrorKind::DimensionMismatch, "z* needs r-1 real samples");
  const RationalMatrix j = jacobian(a, flag, pi);
  ZStar out;
  out.arises_in_expansion = true;
  for (std::size_t k = 1; k <= r; ++k) {
    const Rational pk = leading_principal_minor(j, k);
    if (pk == 0) throw Error(ErrorKind::InsolubleFlag, "flag lies outside the open Bruhat cell");
    Complex alt;
    for (std::size_t i = 1; i <= k; ++i) {
      const Rational m = i == k ? leading_principal_minor(j, k - 1) : r_minor(j, i, k);
      const Rational sign = (k - i) % 2 == 0 ? 1 : -1;
      alt += Complex(to_real(sign * m)) * a.hyperplanes()[flag.indices[i - 1]].s;
    }
    Complex z = Complex::i() * alt;
    for (std::size_t l = k + 1; l <= r; ++l) z -= Complex(x[l - 2] * to_real(q_minor(j, k, l)));
    z /= Complex(to_real(pk));
    if (abs(z.imag()) <= coincidence_tolerance()) out.boundary = true;
    if (!(z.imag() > coincidence_tolerance())) out.arises_in_expansion = false;
    out.values.push_back(std::move(z));
  }
  return out;
}

}  // namespace residuum
