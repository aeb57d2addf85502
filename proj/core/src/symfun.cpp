#include "residuum/symfun.hpp"

#include "residuum/errors.hpp"

#include <algorithm>
#include <sstream>

namespace residuum {
namespace {

void check_arity(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": arity mismatch");
}

std::string var_name(std::span<const std::string> names, std::size_t i) {
  return i < names.size() ? names[i] : "z" + std::to_string(i + 1);
}

int compare_lin(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  return 0;
}

int compare_complex(const Complex& a, const Complex& b) {
  if (a.real() < b.real()) return -1;
  if (b.real() < a.real()) return 1;
  if (a.imag() < b.imag()) return -1;
  if (b.imag() < a.imag()) return 1;
  return 0;
}

bool same_constant(const Complex& a, const Complex& b) {
  return approx_equal(a, b, coincidence_tolerance());
}

bool same_factor(const DenominatorFactor& a, const DenominatorFactor& b) {
  return a.multiplicity == b.multiplicity && a.form.lin == b.form.lin &&
         same_constant(a.form.c, b.form.c);
}

bool same_exponent(const ExpForm& a, const ExpForm& b) {
  if (!same_constant(a.c, b.c)) return false;
  for (std::size_t i = 0; i < a.lin.size(); ++i)
    if (!same_constant(a.lin[i], b.lin[i])) return false;
  return true;
}

bool same_shape(const Term& a, const Term& b) {
  if (a.denominator.size() != b.denominator.size()) return false;
  for (std::size_t i = 0; i < a.denominator.size(); ++i)
    if (!same_factor(a.denominator[i], b.denominator[i])) return false;
  return same_exponent(a.exponent, b.exponent);
}

Complex factorial(unsigned n) {
  Real f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Complex(f);
}

}  // namespace

AffineForm AffineForm::variable(std::size_t arity, std::size_t index) {
  AffineForm a(std::vector<Rational>(arity, Rational(0)), Complex());
  if (index >= arity) throw Error(ErrorKind::IndexOutOfRange, "variable index out of range");
  a.lin[index] = 1;
  return a;
}

AffineForm AffineForm::constant(std::size_t arity, Complex c) {
  return {std::vector<Rational>(arity, Rational(0)), std::move(c)};
}

bool AffineForm::is_constant() const {
  return std::all_of(lin.begin(), lin.end(), [](const Rational& q) { return q == 0; });
}

Complex AffineForm::operator()(std::span<const Complex> z) const {
  check_arity(z.size(), lin.size(), "affine form evaluation");
  Complex v = c;
  for (std::size_t i = 0; i < lin.size(); ++i)
    if (lin[i] != 0) v += Complex(to_real(lin[i])) * z[i];
  return v;
}

AffineForm AffineForm::compose(std::span<const AffineForm> images, std::size_t new_arity) const {
  check_arity(images.size(), lin.size(), "affine composition");
  AffineForm out = constant(new_arity, c);
  for (std::size_t j = 0; j < lin.size(); ++j) {
    if (lin[j] == 0) continue;
    check_arity(images[j].arity(), new_arity, "affine composition image");
    for (std::size_t k = 0; k < new_arity; ++k) out.lin[k] += lin[j] * images[j].lin[k];
    out.c += Complex(to_real(lin[j])) * images[j].c;
  }
  return out;
}

std::string AffineForm::to_string(std::span<const std::string> names) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (lin[i] == 0) continue;
    Rational q = lin[i];
    if (!first) os << (q < 0 ? " - " : " + ");
    else if (q < 0) os << "-";
    q = abs(q);
    if (q != 1) os << q.str() << "*";
    os << var_name(names, i);
    first = false;
  }
  if (!c.is_zero() || first) {
    if (!first) os << " + ";
    os << "(" << format_complex(c, 8) << ")";
  }
  return os.str();
}

ExpForm ExpForm::zero(std::size_t arity) { return {std::vector<Complex>(arity), Complex()}; }

bool ExpForm::is_zero() const {
  return c.is_zero() && std::all_of(lin.begin(), lin.end(), [](const Complex& z) { return z.is_zero(); });
}

Complex ExpForm::operator()(std::span<const Complex> z) const {
  check_arity(z.size(), lin.size(), "exponent evaluation");
  Complex v = c;
  for (std::size_t i = 0; i < lin.size(); ++i) v += lin[i] * z[i];
  return v;
}

ExpForm ExpForm::compose(std::span<const AffineForm> images, std::size_t new_arity) const {
  check_arity(images.size(), lin.size(), "exponent composition");
  ExpForm out = zero(new_arity);
  out.c = c;
  for (std::size_t j = 0; j < lin.size(); ++j) {
    if (lin[j].is_zero()) continue;
    for (std::size_t k = 0; k < new_arity; ++k)
      if (images[j].lin[k] != 0) out.lin[k] += lin[j] * Complex(to_real(images[j].lin[k]));
    out.c += lin[j] * images[j].c;
  }
  return out;
}

Polynomial Polynomial::constant(std::size_t arity, const Complex& c) {
  Polynomial p(arity);
  p.add_monomial(Exponents(arity, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw Error(ErrorKind::IndexOutOfRange, "variable index out of range");
  Polynomial p(arity);
  Exponents e(arity, 0);
  e[index] = 1;
  p.add_monomial(e, Complex(1));
  return p;
}

Polynomial Polynomial::from_affine(const AffineForm& a) {
  Polynomial p = constant(a.arity(), a.c);
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (a.lin[i] == 0) continue;
    Exponents e(a.arity(), 0);
    e[i] = 1;
    p.add_monomial(e, Complex(to_real(a.lin[i])));
  }
  return p;
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : coeffs_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : coeffs_) d = std::max(d, e.at(var));
  return d;
}

void Polynomial::add_monomial(const Exponents& e, const Complex& c) {
  check_arity(e.size(), arity_, "monomial");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_arity(o.arity_, arity_, "polynomial sum");
  for (const auto& [e, c] : o.coeffs_) add_monomial(e, c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Complex& s) {
  if (s.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [e, c] : coeffs_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  check_arity(b.arity_, a.arity_, "polynomial product");
  Polynomial out(a.arity_);
  for (const auto& [ea, ca] : a.coeffs_) {
    for (const auto& [eb, cb] : b.coeffs_) {
      Polynomial::Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_monomial(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::differentiate(std::size_t var) const {
  if (var >= arity_) throw Error(ErrorKind::IndexOutOfRange, "differentiation variable out of range");
  Polynomial out(arity_);
  for (const auto& [e, c] : coeffs_) {
    if (e[var] == 0) continue;
    Exponents d(e);
    d[var] -= 1;
    out.add_monomial(d, c * Complex(static_cast<double>(e[var])));
  }
  return out;
}

Polynomial Polynomial::compose(std::span<const AffineForm> images, std::size_t new_arity) const {
  check_arity(images.size(), arity_, "polynomial composition");
  std::vector<std::vector<Polynomial>> powers(arity_);
  auto power = [&](std::size_t var, unsigned k) -> const Polynomial& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(new_arity, Complex(1)));
    while (cache.size() <= k) cache.push_back(cache.back() * from_affine(images[var]));
    return cache[k];
  };
  Polynomial out(new_arity);
  for (const auto& [e, c] : coeffs_) {
    Polynomial m = constant(new_arity, c);
    for (std::size_t var = 0; var < arity_; ++var)
      if (e[var]) m = m * power(var, e[var]);
    out += m;
  }
  return out;
}

Complex Polynomial::operator()(std::span<const Complex> z) const {
  check_arity(z.size(), arity_, "polynomial evaluation");
  Complex v;
  for (const auto& [e, c] : coeffs_) {
    Complex m = c;
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i]) m *= pow(z[i], static_cast<int>(e[i]));
    v += m;
  }
  return v;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << format_complex(c, 8) << ")";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << var_name(names, i);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

bool normalize_term(Term& t) {
  const std::size_t n = t.poly.arity();
  std::vector<DenominatorFactor> kept;
  for (auto& f : t.denominator) {
    check_arity(f.form.arity(), n, "denominator factor");
    if (f.multiplicity == 0) continue;
    auto lead = std::find_if(f.form.lin.begin(), f.form.lin.end(),
                             [](const Rational& q) { return q != 0; });
    if (lead == f.form.lin.end()) {
      if (abs(f.form.c) <= coincidence_tolerance())
        throw Error(ErrorKind::IdenticallyZeroDenominator, "denominator factor vanishes identically");
      t.poly *= pow(Complex(1) / f.form.c, static_cast<int>(f.multiplicity));
      continue;
    }
    const Rational a = *lead;
    if (a != 1) {
      for (auto& q : f.form.lin) q /= a;
      f.form.c /= Complex(to_real(a));
      t.poly *= pow(Complex(to_real(1 / a)), static_cast<int>(f.multiplicity));
    }
    kept.push_back(std::move(f));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& x, const auto& y) {
    const int l = compare_lin(x.form.lin, y.form.lin);
    if (l != 0) return l < 0;
    return compare_complex(x.form.c, y.form.c) < 0;
  });
  std::vector<DenominatorFactor> merged;
  for (auto& f : kept) {
    auto same = std::find_if(merged.begin(), merged.end(), [&](const DenominatorFactor& g) {
      return g.form.lin == f.form.lin && same_constant(g.form.c, f.form.c);
    });
    if (same != merged.end()) same->multiplicity += f.multiplicity;
    else merged.push_back(std::move(f));
  }
  t.denominator = std::move(merged);
  return !t.poly.is_zero();
}

std::vector<AffineForm> substitution_images(std::size_t arity, std::size_t var, const AffineForm& a) {
  if (var >= arity) throw Error(ErrorKind::IndexOutOfRange, "substitution variable out of range");
  check_arity(a.arity(), arity - 1, "substitution image");
  std::vector<AffineForm> images;
  images.reserve(arity);
  for (std::size_t j = 0; j < arity; ++j) {
    if (j == var) images.push_back(a);
    else images.push_back(AffineForm::variable(arity - 1, j < var ? j : j - 1));
  }
  return images;
}

std::vector<AffineForm> linear_images(const RationalMatrix& m) {
  std::vector<AffineForm> images;
  for (std::size_t j = 0; j < m.rows(); ++j) {
    auto row = m.row(j);
    images.emplace_back(std::vector<Rational>(row.begin(), row.end()), Complex());
  }
  return images;
}

ExpRationalFunction ExpRationalFunction::from_term(Term t) {
  ExpRationalFunction f(t.poly.arity());
  f.add_term(std::move(t));
  return f;
}

ExpRationalFunction ExpRationalFunction::constant(std::size_t arity, const Complex& c) {
  return from_term({Polynomial::constant(arity, c), ExpForm::zero(arity), {}});
}

void ExpRationalFunction::add_term(Term t) {
  check_arity(t.poly.arity(), arity_, "term");
  check_arity(t.exponent.arity(), arity_, "term exponent");
  if (normalize_term(t)) terms_.push_back(std::move(t));
}

ExpRationalFunction& ExpRationalFunction::operator+=(const ExpRationalFunction& o) {
  check_arity(o.arity_, arity_, "function sum");
  for (const auto& t : o.terms_) terms_.push_back(t);
  simplify();
  return *this;
}

ExpRationalFunction& ExpRationalFunction::operator*=(const Complex& s) {
  for (auto& t : terms_) t.poly *= s;
  std::erase_if(terms_, [](const Term& t) { return t.poly.is_zero(); });
  return *this;
}

ExpRationalFunction operator*(const ExpRationalFunction& a, const ExpRationalFunction& b) {
  check_arity(b.arity_, a.arity_, "function product");
  ExpRationalFunction out(a.arity_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Term t{ta.poly * tb.poly, ta.exponent, ta.denominator};
      for (std::size_t i = 0; i < a.arity_; ++i) t.exponent.lin[i] += tb.exponent.lin[i];
      t.exponent.c += tb.exponent.c;
      t.denominator.insert(t.denominator.end(), tb.denominator.begin(), tb.denominator.end());
      out.add_term(std::move(t));
    }
  }
  out.simplify();
  return out;
}

ExpRationalFunction ExpRationalFunction::divided_by(const AffineForm& form, unsigned multiplicity) const {
  ExpRationalFunction out(arity_);
  for (Term t : terms_) {
    t.denominator.push_back({form, multiplicity});
    out.add_term(std::move(t));
  }
  return out;
}

ExpRationalFunction ExpRationalFunction::differentiate(std::size_t var) const {
  if (var >= arity_) throw Error(ErrorKind::IndexOutOfRange, "differentiation variable out of range");
  ExpRationalFunction out(arity_);
  for (const auto& t : terms_) {
    Term head = t;
    head.poly = t.poly.differentiate(var) + t.poly * t.exponent.lin[var];
    out.add_term(std::move(head));
    for (std::size_t i = 0; i < t.denominator.size(); ++i) {
      const auto& f = t.denominator[i];
      if (f.form.lin[var] == 0) continue;
      Term d = t;
      d.poly *= -Complex(to_real(f.form.lin[var] * f.multiplicity));
      d.denominator[i].multiplicity += 1;
      out.add_term(std::move(d));
    }
  }
  out.simplify();
  return out;
}

ExpRationalFunction ExpRationalFunction::compose(std::span<const AffineForm> images,
                                                 std::size_t new_arity) const {
  check_arity(images.size(), arity_, "function composition");
  ExpRationalFunction out(new_arity);
  for (const auto& t : terms_) {
    Term c{t.poly.compose(images, new_arity), t.exponent.compose(images, new_arity), {}};
    for (const auto& f : t.denominator) c.denominator.push_back({f.form.compose(images, new_arity), f.multiplicity});
    out.add_term(std::move(c));
  }
  out.simplify();
  return out;
}

ExpRationalFunction ExpRationalFunction::substitute_affine(std::size_t var, const AffineForm& a) const {
  return compose(substitution_images(arity_, var, a), arity_ - 1);
}

ExpRationalFunction ExpRationalFunction::residue_1d(std::size_t var, const AffineForm& point) const {
  const auto images = substitution_images(arity_, var, point);
  ExpRationalFunction out(arity_ - 1);
  for (const auto& t : terms_) {
    Term g{t.poly, t.exponent, {}};
    unsigned order = 0;
    for (const auto& f : t.denominator) {
      const AffineForm restricted = f.form.compose(images, arity_ - 1);
      const bool vanishes = restricted.is_constant() &&
                            abs(restricted.c) <= coincidence_tolerance() * max(Real(1), abs(f.form.c));
      if (vanishes) {
        // f = a (z_var - point) on the nose, up to rounding in the constant.
        order += f.multiplicity;
        g.poly *= pow(Complex(to_real(1 / f.form.lin[var])), static_cast<int>(f.multiplicity));
      } else {
        g.denominator.push_back(f);
      }
    }
    if (order == 0) continue;
    ExpRationalFunction h = from_term(std::move(g));
    for (unsigned k = 1; k < order; ++k) h = h.differentiate(var);
    if (order > 2) h *= Complex(1) / factorial(order - 1);
    for (const auto& r : h.compose(images, arity_ - 1).terms_) out.terms_.push_back(r);
  }
  out.simplify();
  return out;
}

Complex ExpRationalFunction::operator()(std::span<const Complex> z) const {
  check_arity(z.size(), arity_, "function evaluation");
  Complex v;
  for (const auto& t : terms_) {
    Complex den(1);
    for (const auto& f : t.denominator) {
      const Complex a = f.form(z);
      if (abs(a) <= coincidence_tolerance() * max(Real(1), abs(f.form.c)))
        throw Error(ErrorKind::PoleHit, "evaluation point lies on a pole");
      den *= pow(a, static_cast<int>(f.multiplicity));
    }
    v += t.poly(z) * exp(t.exponent(z)) / den;
  }
  return v;
}

std::string ExpRationalFunction::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k) os << "\n+ ";
    os << "[" << t.poly.to_string(names) << "]";
    if (!t.exponent.is_zero()) {
      os << " * exp(";
      bool first = true;
      for (std::size_t i = 0; i < t.exponent.arity(); ++i) {
        if (t.exponent.lin[i].is_zero()) continue;
        os << (first ? "" : " + ") << "(" << format_complex(t.exponent.lin[i], 8) << ")*" << var_name(names, i);
        first = false;
      }
      if (!t.exponent.c.is_zero()) os << (first ? "" : " + ") << "(" << format_complex(t.exponent.c, 8) << ")";
      os << ")";
    }
    for (const auto& f : t.denominator) {
      os << " / (" << f.form.to_string(names) << ")";
      if (f.multiplicity > 1) os << "^" << f.multiplicity;
    }
  }
  return os.str();
}

void ExpRationalFunction::simplify() {
  std::vector<Term> merged;
  for (auto& t : terms_) {
    auto same = std::find_if(merged.begin(), merged.end(), [&](const Term& m) { return same_shape(m, t); });
    if (same != merged.end()) same->poly += t.poly;
    else merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.poly.is_zero(); });
  terms_ = std::move(merged);
}

CompiledFunction::CompiledFunction(const ExpRationalFunction& f) : arity_(f.arity()) {
  for (const auto& t : f.terms()) {
    CTerm c;
    for (const auto& [e, coeff] : t.poly.coefficients()) c.poly.push_back({coeff.to_std(), e});
    for (const auto& l : t.exponent.lin) c.exp_lin.push_back(l.to_std());
    c.exp_c = t.exponent.c.to_std();
    for (const auto& d : t.denominator) {
      Factor fac{{}, d.form.c.to_std(), d.multiplicity};
      for (const auto& q : d.form.lin) fac.lin.push_back(q.convert_to<double>());
      c.den.push_back(std::move(fac));
    }
    terms_.push_back(std::move(c));
  }
}

CompiledFunction::value_type CompiledFunction::operator()(const value_type* z) const {
  value_type total = 0;
  for (const auto& t : terms_) {
    value_type p = 0;
    for (const auto& m : t.poly) {
      value_type v = m.coeff;
      for (std::size_t i = 0; i < arity_; ++i)
        for (unsigned k = 0; k < m.exps[i]; ++k) v *= z[i];
      p += v;
    }
    value_type e = t.exp_c;
    for (std::size_t i = 0; i < arity_; ++i) e += t.exp_lin[i] * z[i];
    value_type den = 1;
    for (const auto& f : t.den) {
      value_type a = f.c;
      for (std::size_t i = 0; i < arity_; ++i) a += f.lin[i] * z[i];
      for (unsigned k = 0; k < f.mult; ++k) den *= a;
    }
    total += p * std::exp(e) / den;
  }
  return total;
}

}  // namespace residuum
