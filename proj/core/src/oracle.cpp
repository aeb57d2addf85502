#include "residuum/oracle.hpp"

#include "residuum/errors.hpp"
#include "residuum/residue_engine.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace residuum {

namespace {

using cd = std::complex<double>;
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
constexpr std::size_t kRule = 61;
constexpr std::size_t kMaxDepth = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double smooth_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const double a = std::exp(-1 / u);
  const double b = std::exp(-1 / (1 - u));
  return a / (a + b);
}

// 1 on [-flat, flat], C^∞ down to 0 at ±edge.
struct Window {
  double flat = 0;
  double edge = 0;
  double operator()(double x) const {
    const double ax = std::abs(x);
    if (ax <= flat) return 1;
    return 1 - smooth_step((ax - flat) / (edge - flat));
  }
};

struct Segment {
  double lo;
  double hi;
};

struct Axis {
  bool oscillatory = false;
  Window window;
  std::vector<Segment> segments;
  unsigned depth = 0;
  std::size_t nodes() const { return segments.size() * kRule + 2 * kRule * depth; }
};

struct Stats {
  double inner_error = 0;
  double inner_l1 = 0;
  std::size_t evaluations = 0;
};

// One pass over the panels plus a bisection path of the given depth into a
// single near-singular spot must fit the budget.
unsigned depth_for(std::size_t budget, std::size_t segments) {
  const std::size_t base = segments * kRule;
  if (base >= budget) return 0;
  return static_cast<unsigned>(std::min<std::size_t>(kMaxDepth, (budget - base) / (2 * kRule)));
}

Axis plan_axis(double omega, double box, std::size_t budget) {
  Axis axis;
  if (std::abs(omega) > 1e-12) {
    axis.oscillatory = true;
    // The cutoff error decays like exp(-sqrt(2 ω L)) in the taper length L.
    const double flat = 2 * box / 3;
    const double edge = flat + std::max(box / 3, 60 / std::abs(omega));
    axis.window = {flat, edge};
    const double width = 8 * std::numbers::pi / std::abs(omega);
    const auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(2 * edge / width)));
    if (count * kRule > budget)
      throw Error(ErrorKind::BudgetExceeded, "oscillation needs " + std::to_string(count * kRule) +
                                                 " nodes on one axis, budget is " + std::to_string(budget));
    for (std::size_t i = 0; i < count; ++i)
      axis.segments.push_back({-edge + 2 * edge * static_cast<double>(i) / static_cast<double>(count),
                               -edge + 2 * edge * static_cast<double>(i + 1) / static_cast<double>(count)});
  } else {
    constexpr std::size_t panels = 4;
    axis.segments.push_back({-kInf, -box});
    for (std::size_t i = 0; i < panels; ++i)
      axis.segments.push_back({-box + 2 * box * static_cast<double>(i) / panels,
                               -box + 2 * box * static_cast<double>(i + 1) / panels});
    axis.segments.push_back({box, kInf});
    if (axis.segments.size() * kRule > budget) throw Error(ErrorKind::BudgetExceeded, "node budget below one pass");
  }
  axis.depth = depth_for(budget, axis.segments.size());
  return axis;
}

// x = iθ + Q u with Q orthogonal; u_k runs along axis k.
class Nested {
 public:
  Nested(const CompiledFunction& f, std::vector<Axis> axes, std::vector<std::vector<double>> q, std::vector<double> theta,
         double tol)
      : f_(f), axes_(std::move(axes)), q_(std::move(q)), theta_(std::move(theta)), tol_(tol) {}

  const std::vector<Axis>& axes() const { return axes_; }

  cd segment(std::size_t k, std::size_t s, std::vector<double>& u, Stats& st, double& err, double& l1) const {
    const Axis& axis = axes_[k];
    auto g = [&](double t) -> cd {
      const double w = axis.oscillatory ? axis.window(t) : 1.0;
      if (w == 0) return 0;
      u[k] = t;
      if (k == 0) {
        ++st.evaluations;
        return w * f_(point(u).data());
      }
      double e = 0;
      double l = 0;
      const cd v = full(k - 1, u, st, e, l);
      st.inner_error += e;
      st.inner_l1 += l;
      return w * v;
    };
    const double tol = k + 1 == axes_.size() ? tol_ : tol_ / 10;
    const Segment& seg = axis.segments[s];
    return GK::integrate(g, seg.lo, seg.hi, axis.depth, tol, &err, &l1);
  }

  cd full(std::size_t k, std::vector<double>& u, Stats& st, double& err, double& l1) const {
    cd total = 0;
    err = 0;
    l1 = 0;
    for (std::size_t s = 0; s < axes_[k].segments.size(); ++s) {
      double e = 0;
      double l = 0;
      total += segment(k, s, u, st, e, l);
      err += e;
      l1 += l;
    }
    return total;
  }

 private:
  std::vector<cd> point(const std::vector<double>& u) const {
    std::vector<cd> z(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
      double x = 0;
      for (std::size_t k = 0; k < u.size(); ++k) x += q_[j][k] * u[k];
      z[j] = {x, theta_[j]};
    }
    return z;
  }

  const CompiledFunction& f_;
  std::vector<Axis> axes_;
  std::vector<std::vector<double>> q_;
  std::vector<double> theta_;
  double tol_;
};

// Householder reflection whose last column is ω/|ω|, so only the last axis
// oscillates; identity when ω = 0.
std::vector<std::vector<double>> frequency_frame(std::span<const double> omega) {
  const std::size_t r = omega.size();
  std::vector<std::vector<double>> q(r, std::vector<double>(r, 0));
  for (std::size_t j = 0; j < r; ++j) q[j][j] = 1;
  double norm = 0;
  for (double w : omega) norm += w * w;
  norm = std::sqrt(norm);
  if (norm == 0) return q;
  std::vector<double> v(omega.begin(), omega.end());
  for (double& x : v) x /= norm;
  v[r - 1] -= 1;
  double vv = 0;
  for (double x : v) vv += x * x;
  if (vv < 1e-24) return q;
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t k = 0; k < r; ++k) q[j][k] -= 2 * v[j] * v[k] / vv;
  return q;
}

struct ClassResult {
  cd value;
  double error = 0;
  double l1 = 0;
  std::size_t evaluations = 0;
  std::size_t nodes = 0;
  double extent = 0;
  bool oscillatory = false;
};

ClassResult integrate_class(const CompiledFunction& f, std::span<const double> omega, std::span<const double> theta,
                            double box, const QuadratureOptions& o) {
  const std::size_t r = omega.size();
  std::vector<Axis> axes;
  ClassResult out;
  double frequency = 0;
  for (double w : omega) frequency += w * w;
  frequency = std::sqrt(frequency);
  for (std::size_t j = 0; j < r; ++j) {
    axes.push_back(plan_axis(j + 1 == r ? frequency : 0, box, o.node_budget));
    out.oscillatory = out.oscillatory || axes.back().oscillatory;
    out.nodes = std::max(out.nodes, axes.back().nodes());
    if (axes.back().oscillatory) out.extent = std::max(out.extent, axes.back().window.edge);
  }
  const Nested nested(f, std::move(axes), frequency_frame(omega), {theta.begin(), theta.end()}, o.tol);
  const std::size_t top = r - 1;
  const std::size_t count = nested.axes()[top].segments.size();

  std::vector<cd> values(count);
  std::vector<double> errors(count);
  std::vector<double> norms(count);
  std::vector<Stats> stats(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> u(r);
    for (std::size_t s = next++; s < count; s = next++)
      values[s] = nested.segment(top, s, u, stats[s], errors[s], norms[s]);
  };
  unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  double inner_error = 0;
  double inner_l1 = 0;
  for (std::size_t s = 0; s < count; ++s) {
    out.value += values[s];
    out.error += errors[s];
    out.l1 += norms[s];
    out.evaluations += stats[s].evaluations;
    inner_error += stats[s].inner_error;
    inner_l1 += stats[s].inner_l1;
  }
  // Inner errors enter through the outer rule; scale their L1-weighted
  // relative size by the outer L1 norm.
  if (inner_l1 > 0) out.error += inner_error / inner_l1 * out.l1;
  return out;
}

struct FrequencyClass {
  std::vector<double> omega;
  ExpRationalFunction terms;
};

std::vector<FrequencyClass> split_by_frequency(const Arrangement& a) {
  const ExpRationalFunction integrand = a.integrand();
  std::vector<FrequencyClass> classes;
  for (const auto& t : integrand.terms()) {
    std::vector<double> omega;
    for (const auto& l : t.exponent.lin) {
      const cd c = l.to_std();
      if (std::abs(c.real()) > 1e-12)
        throw Error(ErrorKind::NonDecaying, "numerator grows exponentially along a real direction");
      omega.push_back(c.imag());
    }
    auto same = [&](const FrequencyClass& fc) {
      for (std::size_t j = 0; j < omega.size(); ++j)
        if (std::abs(fc.omega[j] - omega[j]) > 1e-12 * std::max(1.0, std::abs(omega[j]))) return false;
      return true;
    };
    auto it = std::find_if(classes.begin(), classes.end(), same);
    if (it == classes.end()) {
      classes.push_back({omega, ExpRationalFunction(a.dimension())});
      it = std::prev(classes.end());
    }
    it->terms.add_term(t);
  }
  return classes;
}

void check_decay(const Arrangement& a, const FrequencyClass& fc) {
  unsigned degree = 0;
  for (const auto& t : fc.terms.terms()) degree = std::max(degree, t.poly.total_degree());
  const bool oscillates = std::any_of(fc.omega.begin(), fc.omega.end(), [](double w) { return w != 0; });
  if (oscillates ? a.denominator_degree() <= degree : !absolutely_convergent(a, degree))
    throw Error(ErrorKind::NonDecaying, "integrand does not decay fast enough for the real integral to converge");
}

// Solves the r×r system by partial pivoting; false when singular.
bool solve_small(std::vector<std::vector<double>> m, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
    if (std::abs(m[p][c]) < 1e-12) return false;
    std::swap(m[p], m[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0);
  for (std::size_t c = n; c-- > 0;) {
    double s = b[c];
    for (std::size_t k = c + 1; k < n; ++k) s -= m[c][k] * x[k];
    x[c] = s / m[c][c];
  }
  return true;
}

}  // namespace

std::vector<double> contour_shift(const Arrangement& a, std::span<const double> omega, double fraction,
                                  double bound) {
  const std::size_t r = a.dimension();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (const auto& h : a.hyperplanes()) {
    std::vector<double> row;
    for (const auto& q : h.f) row.push_back(q.convert_to<double>());
    rows.push_back(std::move(row));
    rhs.push_back(fraction * h.s.real().convert_to<double>());
  }
  for (std::size_t j = 0; j < r; ++j)
    for (double sign : {1.0, -1.0}) {
      std::vector<double> row(r, 0);
      row[j] = sign;
      rows.push_back(std::move(row));
      rhs.push_back(bound);
    }

  std::vector<double> best(r, 0);
  double best_value = 0;
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  const std::size_t n = rows.size();
  while (true) {
    std::vector<std::vector<double>> m;
    std::vector<double> b;
    for (std::size_t i : pick) {
      m.push_back(rows[i]);
      b.push_back(rhs[i]);
    }
    std::vector<double> theta;
    if (solve_small(m, b, theta)) {
      bool feasible = true;
      for (std::size_t i = 0; i < n && feasible; ++i) {
        double lhs = 0;
        for (std::size_t j = 0; j < r; ++j) lhs += rows[i][j] * theta[j];
        feasible = lhs <= rhs[i] + 1e-9 * std::max(1.0, std::abs(rhs[i]));
      }
      double value = 0;
      for (std::size_t j = 0; j < r; ++j) value += omega[j] * theta[j];
      if (feasible && value > best_value + 1e-12) {
        best_value = value;
        best = theta;
      }
    }
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < r; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

QuadratureReport quad_integral(const Arrangement& a, const QuadratureOptions& options) {
  const std::size_t r = a.dimension();
  if (r == 0 || r > 3) throw Error(ErrorKind::InvalidProblem, "quadrature supports 1 <= r <= 3");
  if (!(options.box > 0) || !(options.tol > 0)) throw Error(ErrorKind::InvalidProblem, "box and tol must be positive");

  std::vector<FrequencyClass> classes = split_by_frequency(a);
  for (const auto& fc : classes) check_decay(a, fc);

  QuadratureReport report;
  report.box_halfwidth = options.box;
  double l1 = 0;
  bool oscillatory = false;
  std::vector<CompiledFunction> compiled;
  for (const auto& fc : classes) {
    std::vector<double> theta(r, 0);
    if (options.shift) theta = contour_shift(a, fc.omega, options.shift_fraction);
    compiled.emplace_back(fc.terms);
    const ClassResult c = integrate_class(compiled.back(), fc.omega, theta, options.box, options);
    report.estimate += c.value;
    report.error_bound += c.error;
    report.evaluations += c.evaluations;
    report.nodes_per_axis = std::max(report.nodes_per_axis, c.nodes);
    report.box_halfwidth = std::max(report.box_halfwidth, c.extent);
    report.shifts.push_back(std::move(theta));
    l1 += c.l1;
    oscillatory = oscillatory || c.oscillatory;
  }

  if (oscillatory) {
    cd shorter = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const ClassResult c =
          integrate_class(compiled[i], classes[i].omega, report.shifts[i], 0.75 * options.box, options);
      shorter += c.value;
      report.evaluations += c.evaluations;
    }
    report.tail_estimate = std::abs(report.estimate - shorter);
  }
  report.converged = report.error_bound <= 10 * options.tol * std::max(l1, std::numeric_limits<double>::min());
  return report;
}

QuadratureReport quad_integral(const Arrangement& a, double box, double tol) {
  QuadratureOptions o;
  o.box = box;
  o.tol = tol;
  return quad_integral(a, o);
}

SemicircleDiagnostic semicircle_check(const ExpRationalFunction& f, std::span<const double> radii, HalfPlane half) {
  if (f.arity() != 1) throw Error(ErrorKind::DimensionMismatch, "semicircle_check needs a one-variable function");
  std::vector<cd> poles;
  for (const auto& t : f.terms())
    for (const auto& d : t.denominator) {
      const double slope = d.form.lin[0].convert_to<double>();
      if (slope != 0) poles.push_back(-d.form.c.to_std() / slope);
    }
  auto near_pole = [&](double radius) {
    return std::any_of(poles.begin(), poles.end(),
                       [&](cd p) { return std::abs(std::abs(p) - radius) <= 1e-9 * radius; });
  };

  const CompiledFunction g(f);
  const double sign = half == HalfPlane::Upper ? 1.0 : -1.0;
  SemicircleDiagnostic out;
  for (double radius : radii) {
    if (near_pole(radius)) {
      radius *= 1 + 1e-3;
      if (near_pole(radius))
        throw Error(ErrorKind::PoleOnArc, "pole on the arc of radius " + std::to_string(radius));
    }
    auto integrand = [&](double phi) -> cd {
      const cd z = std::polar(radius, sign * phi);
      return g(&z) * cd(0, sign) * z;
    };
    const cd value = GK::integrate(integrand, 0.0, std::numbers::pi, 20, 1e-10);
    out.radii.push_back(radius);
    out.integrals.push_back(value);
    out.magnitudes.push_back(std::abs(value));
  }
  const auto& m = out.magnitudes;
  out.decays = m.size() >= 2 && std::all_of(m.begin(), m.end(), [](double v) { return std::isfinite(v); }) &&
               m.back() < 0.5 * m.front();
  return out;
}

namespace {

struct TorusFrame {
  std::vector<cd> center;
  std::vector<std::vector<double>> f_inv;  // x = m + F^-1 w
  double det_f = 0;
  std::vector<std::size_t> foreign;
  std::vector<double> foreign_distance;              // |g_k(m)|
  std::vector<std::vector<double>> foreign_weights;  // |(f_k F^-1)_j|
};

TorusFrame torus_frame(const Arrangement& a, const Flag& h) {
  const std::size_t r = a.dimension();
  if (h.depth() != r) throw Error(ErrorKind::DimensionMismatch, "torus needs r hyperplanes");
  const RationalMatrix f = a.f_matrix(h.indices);
  const auto inv = inverse(f);
  if (!inv) throw Error(ErrorKind::SingularSystem, "hyperplanes " + h.label() + " are not transverse");

  TorusFrame t;
  for (const auto& c : pole_location(a, h)) t.center.push_back(c.to_std());
  t.det_f = determinant(f).convert_to<double>();
  t.f_inv.assign(r, std::vector<double>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) t.f_inv[i][j] = (*inv)(i, j).convert_to<double>();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::find(h.indices.begin(), h.indices.end(), k) != h.indices.end()) continue;
    const Hyperplane& hk = a.hyperplanes()[k];
    cd g = cd(0, -1) * hk.s.to_std();
    std::vector<double> w(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const double fi = hk.f[i].convert_to<double>();
      g += fi * t.center[i];
      for (std::size_t j = 0; j < r; ++j) w[j] += fi * t.f_inv[i][j];
    }
    for (auto& x : w) x = std::abs(x);
    t.foreign.push_back(k);
    t.foreign_distance.push_back(std::abs(g));
    t.foreign_weights.push_back(std::move(w));
  }
  return t;
}

}  // namespace

std::vector<double> default_torus_radii(const Arrangement& a, const Flag& h) {
  const TorusFrame t = torus_frame(a, h);
  double eps = 1;
  for (std::size_t i = 0; i < t.foreign.size(); ++i) {
    double w = 0;
    for (double x : t.foreign_weights[i]) w += x;
    if (w == 0) continue;
    if (t.foreign_distance[i] <= 1e-12)
      throw Error(ErrorKind::ForeignPoleInsideTorus, "a foreign hyperplane passes through the terminal point");
    eps = std::min(eps, t.foreign_distance[i] / w);
  }
  return std::vector<double>(a.dimension(), eps / 10);
}

std::complex<double> torus_residue(const Arrangement& a, const Flag& h, std::span<const double> eps,
                                   std::size_t nodes) {
  const std::size_t r = a.dimension();
  const TorusFrame t = torus_frame(a, h);
  std::vector<double> radii(eps.begin(), eps.end());
  if (radii.empty()) radii = default_torus_radii(a, h);
  if (radii.size() != r) throw Error(ErrorKind::DimensionMismatch, "one radius per hyperplane");
  for (std::size_t i = 0; i < t.foreign.size(); ++i) {
    double reach = 0;
    for (std::size_t j = 0; j < r; ++j) reach += t.foreign_weights[i][j] * radii[j];
    if (reach >= t.foreign_distance[i])
      throw Error(ErrorKind::ForeignPoleInsideTorus,
                  "hyperplane H" + std::to_string(t.foreign[i] + 1) + " may meet the torus");
  }
  if (nodes == 0) throw Error(ErrorKind::InvalidProblem, "torus needs at least one node");

  const CompiledFunction f(a.integrand());
  std::vector<std::vector<cd>> circle(r, std::vector<cd>(nodes));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t n = 0; n < nodes; ++n)
      circle[j][n] = std::polar(radii[j], 2 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(nodes));

  std::vector<std::size_t> idx(r, 0);
  std::vector<cd> w(r);
  std::vector<cd> x(r);
  cd total = 0;
  while (true) {
    cd jac = 1;
    for (std::size_t j = 0; j < r; ++j) {
      w[j] = circle[j][idx[j]];
      jac *= cd(0, 1) * w[j];
    }
    for (std::size_t i = 0; i < r; ++i) {
      x[i] = t.center[i];
      for (std::size_t j = 0; j < r; ++j) x[i] += t.f_inv[i][j] * w[j];
    }
    total += f(x.data()) * jac;
    std::size_t k = 0;
    while (k < r && ++idx[k] == nodes) idx[k++] = 0;
    if (k == r) break;
  }
  // (2π/N)^r trapezoid weight against (2πi)^-r leaves (i N)^-r.
  cd scale = 1 / t.det_f;
  for (std::size_t j = 0; j < r; ++j) scale /= cd(0, static_cast<double>(nodes));
  return total * scale;
}

}  // namespace residuum
