#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <type_traits>
#include <vector>

namespace residuum {

/// Exact rational; GMP keeps every value in lowest terms with a positive
/// denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Variable-precision binary float. The working precision is process-wide
/// and controlled through PrecisionScope.
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Sets the working precision for newly created Real values and restores the
/// previous setting on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_digits10_;
  unsigned previous_bits_;
};

unsigned precision_bits();

/// 2^-(bits/2): relative tolerance for deciding that two floating constants
/// coincide (merged poles, vanishing denominators).
Real coincidence_tolerance();

Real real_pi();
Real to_real(const Rational& q);

/// Complex number over Real.
class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(Real re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  template <class T>
    requires std::is_arithmetic_v<T>
  Complex(T re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(double re, double im) : re_(re), im_(im) {}
  explicit Complex(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}

  static Complex from_rational(const Rational& re, const Rational& im = 0);
  static Complex i() { return {Real(0), Real(1)}; }

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  std::complex<double> to_std() const {
    return {re_.convert_to<double>(), im_.convert_to<double>()};
  }

 private:
  Real re_;
  Real im_;
};

Real abs(const Complex& z);
Real norm(const Complex& z);
Complex conj(const Complex& z);
Complex exp(const Complex& z);
/// Principal branch.
Complex log(const Complex& z);
Complex pow(const Complex& z, int n);
bool approx_equal(const Complex& a, const Complex& b, const Real& rel_tol);

/// Scientific notation with the given number of significant digits.
std::string format_real(const Real& x, int digits);
std::string format_complex(const Complex& z, int digits);
std::ostream& operator<<(std::ostream& os, const Complex& z);

/// Exact complex rational a + bi; used where linear coefficients must stay
/// exact through parsing and canonicalization.
struct GaussianRational {
  Rational re = 0;
  Rational im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  Complex to_complex() const { return Complex::from_rational(re, im); }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  /// Throws std::domain_error on division by zero.
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

std::string to_string(const Rational& q);

}  // namespace residuum
