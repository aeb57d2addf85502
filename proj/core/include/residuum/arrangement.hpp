#pragma once

#include "residuum/exact_linalg.hpp"
#include "residuum/numeric.hpp"
#include "residuum/symfun.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace residuum {

/// Polar hyperplane {f(x) = i s}; f is a primitive integer vector and Re s > 0.
struct Hyperplane {
  std::vector<Rational> f;
  Complex s;
  unsigned multiplicity = 1;

  std::size_t dimension() const { return f.size(); }
  /// g(x) = f(x) - i s.
  AffineForm g() const;
};

struct CanonicalHyperplane {
  Hyperplane hyperplane;
  /// The input form equals scale * g.
  Complex scale;
};

/// Writes a·x + b as scale·(f·x - i s). Throws NotAlignable when Re a and Im a
/// are not parallel and MeetsRealLocus when Re s vanishes.
CanonicalHyperplane canonicalize_hyperplane(std::span<const GaussianRational> a, const Complex& b);

/// Π = V + iΘ with Θ spanned by the ordered generators v_1..v_r.
class Polyhedron {
 public:
  Polyhedron() = default;
  static Polyhedron from_generators(const std::vector<std::vector<Rational>>& generators);
  static Polyhedron standard(std::size_t r);

  std::size_t dimension() const { return v_.rows(); }
  /// Generators as columns: x = V z.
  const RationalMatrix& v() const { return v_; }
  /// Rows are the coordinate forms z_1..z_r (V^-1).
  const RationalMatrix& z() const { return z_; }
  std::vector<Rational> generator(std::size_t k) const { return v_.column(k); }
  Rational det_v() const { return det_; }

  /// Polyhedron with generators reordered: new k-th generator is old perm[k].
  Polyhedron permuted(std::span<const std::size_t> perm) const;
  /// True when Im z_k(point) >= 0 for every k (within tol for the boundary).
  bool contains(std::span<const Complex> point) const;

 private:
  RationalMatrix v_;
  RationalMatrix z_;
  Rational det_ = 1;
};

/// Ordered tuple of hyperplane indices (0-based).
struct Flag {
  std::vector<std::size_t> indices;

  std::size_t depth() const { return indices.size(); }
  std::string label() const;  // "γ13" style, 1-based
  friend auto operator<=>(const Flag&, const Flag&) = default;
};

/// ω = h(x) dx / ∏ g_k^{m_k}; h is a sum of polynomial-exponential terms.
class Arrangement {
 public:
  Arrangement() = default;
  Arrangement(std::size_t r, ExpRationalFunction numerator);

  std::size_t dimension() const { return r_; }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const ExpRationalFunction& numerator() const { return numerator_; }
  std::size_t size() const { return hyperplanes_.size(); }
  /// Σ m_k.
  unsigned denominator_degree() const;

  /// Canonicalizes a·x + b, absorbs the scale into the numerator, and merges
  /// with an identical hyperplane if present. Returns the hyperplane index.
  std::size_t add_factor(std::span<const GaussianRational> a, const Complex& b, unsigned multiplicity = 1);
  std::size_t add_hyperplane(Hyperplane h);
  void multiply_numerator(const Complex& c);

  ExpRationalFunction integrand() const;
  /// Rows f_k for the given indices.
  RationalMatrix f_matrix(std::span<const std::size_t> indices) const;

 private:
  std::size_t r_ = 0;
  std::vector<Hyperplane> hyperplanes_;
  ExpRationalFunction numerator_;
};

/// J_{jk} = f_j(v_k).
RationalMatrix jacobian(const Arrangement& a, const Flag& flag, const Polyhedron& pi);
RationalMatrix jacobian(std::span<const Hyperplane> hyperplanes, const Polyhedron& pi);

/// Ordered k-tuples of distinct indices with rank-k f-rows.
std::vector<Flag> enumerate_flags(const Arrangement& a, std::size_t k);

struct FlagClass {
  Flag flag;
  RationalMatrix jacobian;
  MinorProfile profile;
};

std::vector<FlagClass> classify_flags(const Arrangement& a, const Polyhedron& pi);

/// Complete ordered collections with stable Jacobian.
std::vector<Flag> stable_collections(const Arrangement& a, const Polyhedron& pi);

/// Whether two complete ordered collections cut out the same descending flag.
bool same_flag(const Arrangement& a, const Flag& x, const Flag& y);

struct FlagGroup {
  Flag representative;
  std::vector<Flag> collections;
};

/// Groups ordered collections by the flag they define, preserving order of
/// first appearance.
std::vector<FlagGroup> group_by_flag(const Arrangement& a, std::span<const Flag> collections);

/// Z_Π as flags.
std::vector<FlagGroup> stable_flags(const Arrangement& a, const Polyhedron& pi);

struct Violation {
  Flag flag;
  RationalMatrix jacobian;
  /// (j, l, q_jl) for every positive q-minor.
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> positive_q;
};

struct AuditReport {
  bool all_compatible = true;
  std::size_t violation_count = 0;
  std::vector<Violation> violators;  // at most kMaxViolators
  static constexpr std::size_t kMaxViolators = 100;
};

AuditReport compatibility_audit(const Arrangement& a, const Polyhedron& pi);

/// Terminal point z_γ in x-coordinates.
std::vector<Complex> pole_location(const Arrangement& a, const Flag& flag);

struct ZStar {
  std::vector<Complex> values;  // z_1*..z_r*
  bool arises_in_expansion = false;
  bool boundary = false;  // some Im z_k* vanishes
};

/// z_k* in Π's coordinates with real samples x = (x_2..x_r). Throws
/// InsolubleFlag when some p_k = 0.
ZStar z_star(const Arrangement& a, const Flag& flag, const Polyhedron& pi, std::span<const Real> x);

}  // namespace residuum
