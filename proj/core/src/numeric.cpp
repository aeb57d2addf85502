#include "residuum/numeric.hpp"

#include "residuum/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace residuum {
namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

unsigned& current_bits() {
  static unsigned bits = [] {
    Real::default_precision(bits_to_digits10(kDefaultPrecisionBits));
    return kDefaultPrecisionBits;
  }();
  return bits;
}

// Reals built from doubles before the first precision query would otherwise
// carry the library default of 20 digits.
const unsigned initial_bits = current_bits();

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits)
    : previous_digits10_(Real::default_precision()), previous_bits_(current_bits()) {
  if (bits < 24) throw std::invalid_argument("precision must be at least 24 bits");
  current_bits() = bits;
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() {
  current_bits() = previous_bits_;
  Real::default_precision(previous_digits10_);
}

unsigned precision_bits() { return current_bits(); }

Real coincidence_tolerance() {
  (void)current_bits();
  return ldexp(Real(1), -static_cast<int>(precision_bits() / 2));
}

Real real_pi() {
  (void)current_bits();
  return boost::math::constants::pi<Real>();
}

Real to_real(const Rational& q) {
  (void)current_bits();
  return Real(numerator(q)) / Real(denominator(q));
}

Complex Complex::from_rational(const Rational& re, const Rational& im) {
  return {to_real(re), to_real(im)};
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.re_ * o.re_ + o.im_ * o.im_;
  if (d == 0) throw std::domain_error("complex division by zero");
  Real re = (re_ * o.re_ + im_ * o.im_) / d;
  im_ = (im_ * o.re_ - re_ * o.im_) / d;
  re_ = std::move(re);
  return *this;
}

Real abs(const Complex& z) { return hypot(z.real(), z.imag()); }
Real norm(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }
Complex conj(const Complex& z) { return {z.real(), -z.imag()}; }

Complex exp(const Complex& z) {
  const Real m = exp(z.real());
  return {m * cos(z.imag()), m * sin(z.imag())};
}

Complex log(const Complex& z) {
  if (z.is_zero()) throw std::domain_error("log of zero");
  return {log(abs(z)), atan2(z.imag(), z.real())};
}

Complex pow(const Complex& z, int n) {
  if (n < 0) return Complex(1) / pow(z, -n);
  Complex result(1);
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

bool approx_equal(const Complex& a, const Complex& b, const Real& rel_tol) {
  const Real scale = max(Real(1), max(abs(a), abs(b)));
  return abs(a - b) <= rel_tol * scale;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  Real v = x;
  if (v == 0) v = 0;  // drop a negative zero
  os << std::scientific << std::setprecision(digits - 1) << v;
  return os.str();
}

std::string format_complex(const Complex& z, int digits) {
  std::string re = format_real(z.real(), digits);
  std::string im = format_real(abs(z.imag()), digits);
  return re + (z.imag() < 0 ? " - " : " + ") + im + "i";
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  return os << format_complex(z, 17);
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
  const Rational d = b.re * b.re + b.im * b.im;
  if (d == 0) throw std::domain_error("division by zero");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

std::string to_string(const Rational& q) { return q.str(); }

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAlignable: return "NotAlignable";
    case ErrorKind::MeetsRealLocus: return "MeetsRealLocus";
    case ErrorKind::InsolubleFlag: return "InsolubleFlag";
    case ErrorKind::IdenticallyZeroDenominator: return "IdenticallyZeroDenominator";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::BruhatViolation: return "BruhatViolation";
    case ErrorKind::EmptyStableSet: return "EmptyStableSet";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonDecaying: return "NonDecaying";
    case ErrorKind::PoleOnArc: return "PoleOnArc";
    case ErrorKind::ForeignPoleInsideTorus: return "ForeignPoleInsideTorus";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::NonAffineDenominator: return "NonAffineDenominator";
    case ErrorKind::InvalidProblem: return "InvalidProblem";
  }
  return "Unknown";
}

ParseError::ParseError(ErrorKind kind, const std::string& message, std::size_t line,
                       std::size_t column, std::vector<std::string> expected)
    : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": " + message),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

}  // namespace residuum
