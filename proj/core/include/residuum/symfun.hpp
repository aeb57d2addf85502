#pragma once

#include "residuum/exact_linalg.hpp"
#include "residuum/numeric.hpp"

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace residuum {

/// a·z + c with exact rational slope and a floating complex constant. Used
/// for denominator factors and for substitution images.
struct AffineForm {
  std::vector<Rational> lin;
  Complex c;

  AffineForm() = default;
  AffineForm(std::vector<Rational> lin_, Complex c_) : lin(std::move(lin_)), c(std::move(c_)) {}
  static AffineForm variable(std::size_t arity, std::size_t index);
  static AffineForm constant(std::size_t arity, Complex c);

  std::size_t arity() const { return lin.size(); }
  bool is_constant() const;
  Complex operator()(std::span<const Complex> z) const;
  /// Composition with images x_j = images[j](y).
  AffineForm compose(std::span<const AffineForm> images, std::size_t new_arity) const;
  std::string to_string(std::span<const std::string> names) const;
};

/// a·z + c with complex slope; the exponent of an exponential factor.
struct ExpForm {
  std::vector<Complex> lin;
  Complex c;

  static ExpForm zero(std::size_t arity);
  std::size_t arity() const { return lin.size(); }
  bool is_zero() const;
  Complex operator()(std::span<const Complex> z) const;
  ExpForm compose(std::span<const AffineForm> images, std::size_t new_arity) const;
};

/// Sparse multivariate polynomial with Complex coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}
  static Polynomial constant(std::size_t arity, const Complex& c);
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial from_affine(const AffineForm& a);

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return coeffs_.empty(); }
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  const std::map<Exponents, Complex>& coefficients() const { return coeffs_; }

  void add_monomial(const Exponents& e, const Complex& c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator*=(const Complex& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Complex& s) { return a *= s; }

  Polynomial differentiate(std::size_t var) const;
  Polynomial compose(std::span<const AffineForm> images, std::size_t new_arity) const;
  Complex operator()(std::span<const Complex> z) const;
  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t arity_ = 0;
  std::map<Exponents, Complex> coeffs_;
};

struct DenominatorFactor {
  AffineForm form;
  unsigned multiplicity = 1;
};

/// poly · exp(exponent) / ∏ form^multiplicity. Factors are normalized so the
/// first nonzero slope entry is 1.
struct Term {
  Polynomial poly;
  ExpForm exponent;
  std::vector<DenominatorFactor> denominator;
};

/// Finite sum of Terms; closed under differentiation, affine substitution and
/// one-variable residues.
class ExpRationalFunction {
 public:
  ExpRationalFunction() = default;
  explicit ExpRationalFunction(std::size_t arity) : arity_(arity) {}
  static ExpRationalFunction from_term(Term t);
  static ExpRationalFunction constant(std::size_t arity, const Complex& c);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Term t);
  ExpRationalFunction& operator+=(const ExpRationalFunction& o);
  ExpRationalFunction& operator*=(const Complex& s);
  friend ExpRationalFunction operator+(ExpRationalFunction a, const ExpRationalFunction& b) {
    return a += b;
  }
  friend ExpRationalFunction operator*(ExpRationalFunction a, const Complex& s) { return a *= s; }
  /// Product; denominators are concatenated and renormalized.
  friend ExpRationalFunction operator*(const ExpRationalFunction& a, const ExpRationalFunction& b);
  /// Divides every term by form^multiplicity.
  ExpRationalFunction divided_by(const AffineForm& form, unsigned multiplicity = 1) const;

  ExpRationalFunction differentiate(std::size_t var) const;
  /// Replaces var by an affine form in the remaining variables (var removed,
  /// later indices shift down by one).
  ExpRationalFunction substitute_affine(std::size_t var, const AffineForm& a) const;
  /// General composition x_j = images[j](y), y of arity new_arity.
  ExpRationalFunction compose(std::span<const AffineForm> images, std::size_t new_arity) const;
  /// Coefficient of (z_var - point)^-1; point is a form in the remaining variables.
  ExpRationalFunction residue_1d(std::size_t var, const AffineForm& point) const;

  /// Throws PoleHit when a factor is below the coincidence guard.
  Complex operator()(std::span<const Complex> z) const;
  std::string to_string(std::span<const std::string> names) const;

  /// Merges terms with identical denominators and exponents.
  void simplify();

 private:
  std::size_t arity_ = 0;
  std::vector<Term> terms_;
};

/// Brings a term to normal form: constant factors absorbed (throws
/// IdenticallyZeroDenominator for vanishing ones), slopes scaled to lead with 1,
/// equal factors merged, factors sorted. Returns false when the term is zero.
bool normalize_term(Term& t);

/// Images for the substitution z_var := a with var removed.
std::vector<AffineForm> substitution_images(std::size_t arity, std::size_t var, const AffineForm& a);

/// Images for the linear change x = M y.
std::vector<AffineForm> linear_images(const RationalMatrix& m);

/// Fast double-precision evaluator used inside quadrature loops.
class CompiledFunction {
 public:
  using value_type = std::complex<double>;

  CompiledFunction() = default;
  explicit CompiledFunction(const ExpRationalFunction& f);

  std::size_t arity() const { return arity_; }
  value_type operator()(const value_type* z) const;

 private:
  struct Monomial {
    value_type coeff;
    std::vector<unsigned> exps;
  };
  struct Factor {
    std::vector<double> lin;
    value_type c;
    unsigned mult;
  };
  struct CTerm {
    std::vector<Monomial> poly;
    std::vector<value_type> exp_lin;
    value_type exp_c;
    std::vector<Factor> den;
  };
  std::size_t arity_ = 0;
  std::vector<CTerm> terms_;
};

}  // namespace residuum
