#include "fixtures.hpp"

#include "residuum/errors.hpp"

#include <gtest/gtest.h>

#include <random>

namespace residuum {
namespace {

using namespace residuum::testing;

const Complex I = Complex::i();

Complex two_pi_i() { return Complex(Real(0), 2 * real_pi()); }

ExpRationalFunction corner_pole_h() { return exp_numerator({two_pi_i(), two_pi_i() * Complex(2)}); }

AffineForm form(std::vector<Rational> lin, Complex c) { return {std::move(lin), std::move(c)}; }

class RandomFunctions {
 public:
  explicit RandomFunctions(unsigned seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Complex complex(double scale = 1) { return Complex(uniform(-scale, scale), uniform(-scale, scale)); }

  /// Denominator constants keep |Im c| >= 0.5, so real points are pole-free.
  AffineForm pole_free_form(std::size_t arity) {
    std::vector<Rational> lin(arity);
    while (std::all_of(lin.begin(), lin.end(), [](const Rational& q) { return q == 0; }))
      for (auto& q : lin) q = Rational(integer(-3, 3), integer(1, 2));
    const double im = uniform(0.5, 2) * (integer(0, 1) ? 1 : -1);
    return {lin, Complex(uniform(-1, 1), im)};
  }

  ExpRationalFunction function(std::size_t arity) {
    ExpRationalFunction f(arity);
    const int terms = integer(1, 3);
    for (int t = 0; t < terms; ++t) {
      Polynomial p(arity);
      for (int m = 0; m < 3; ++m) {
        Polynomial::Exponents e(arity);
        for (auto& x : e) x = static_cast<unsigned>(integer(0, 2));
        p.add_monomial(e, complex());
      }
      std::vector<Complex> lin;
      for (std::size_t j = 0; j < arity; ++j) lin.push_back(Complex(0, uniform(-1, 1)));
      Term term{p, ExpForm{lin, complex(0.5)}, {}};
      ExpRationalFunction piece = ExpRationalFunction::from_term(term);
      for (int d = integer(1, 2); d > 0; --d)
        piece = piece.divided_by(pole_free_form(arity), static_cast<unsigned>(integer(1, 2)));
      f += piece;
    }
    return f;
  }

  std::vector<Complex> real_point(std::size_t arity) {
    std::vector<Complex> z;
    for (std::size_t j = 0; j < arity; ++j) z.push_back(Complex(uniform(-2, 2)));
    return z;
  }

 private:
  std::mt19937 gen_;
};

Real rel(const Complex& a, const Complex& b) { return abs(a - b) / max(Real(1), abs(b)); }

TEST(Differentiate, ChainRuleOnExponential) {
  const ExpRationalFunction h = corner_pole_h();
  const ExpRationalFunction d = h.differentiate(0);
  RandomFunctions rnd(1);
  for (int k = 0; k < 5; ++k) {
    const auto z = rnd.real_point(2);
    EXPECT_LT(rel(d(z), two_pi_i() * h(z)), Real("1e-30"));
  }
}

TEST(Differentiate, PowerRule) {
  const ExpRationalFunction f = ExpRationalFunction::constant(1, 1).divided_by(form({1}, -I));
  const ExpRationalFunction d = f.differentiate(0);
  ASSERT_EQ(d.terms().size(), 1u);
  const Term& t = d.terms()[0];
  ASSERT_EQ(t.denominator.size(), 1u);
  EXPECT_EQ(t.denominator[0].multiplicity, 2u);
  EXPECT_EQ(t.poly.total_degree(), 0u);
  EXPECT_LT(rel(t.poly.coefficients().begin()->second, Complex(-1)), Real("1e-30"));
}

TEST(Differentiate, SliceDerivativeMatchesFiniteDifference) {
  // h(i, y) = exp(2πi(i + 2y)); ∂_y at y = i.
  const ExpRationalFunction slice = corner_pole_h().substitute_affine(0, AffineForm::constant(1, I));
  const Complex exact = slice.differentiate(0)(std::vector<Complex>{I});
  const Real step("1e-6");
  const Complex fd = (slice(std::vector<Complex>{I + Complex(step)}) - slice(std::vector<Complex>{I - Complex(step)})) /
                     Complex(2 * step);
  EXPECT_LT(abs(exact - fd) / abs(exact), Real("1e-8"));
}

TEST(Differentiate, RandomFunctionsMatchFiniteDifferences) {
  RandomFunctions rnd(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ExpRationalFunction f = rnd.function(2);
    const std::size_t var = static_cast<std::size_t>(trial % 2);
    const ExpRationalFunction d = f.differentiate(var);
    const auto z = rnd.real_point(2);
    auto zp = z;
    auto zm = z;
    const Real step("1e-6");
    zp[var] += Complex(step);
    zm[var] -= Complex(step);
    const Complex fd = (f(zp) - f(zm)) / Complex(2 * step);
    EXPECT_LT(rel(d(z), fd), Real("1e-6")) << "trial " << trial;
  }
}

TEST(SubstituteAffine, DirichletPairFirstStepIntegrand) {
  const Real l1 = log(Real(2)), l2 = log(Real(3));
  const Complex s1(1), s2(Real("1.5")), s3(Real("0.75"));
  ExpRationalFunction f = exp_numerator({I * Complex(l1), I * Complex(l2)}, -(s1 * Complex(l1)) - s2 * Complex(l2));
  f = f.divided_by(form({-1, 0}, -(I * s1))).divided_by(form({0, -1}, -(I * s2)));
  const ExpRationalFunction got = f.substitute_affine(0, form({-1}, I * s3));

  ExpRationalFunction want = exp_numerator({-(I * Complex(l1)) + I * Complex(l2)},
                                           -((s3 + s1) * Complex(l1)) - s2 * Complex(l2));
  want = want.divided_by(form({1}, -(I * s3) - I * s1)).divided_by(form({-1}, -(I * s2)));
  RandomFunctions rnd(3);
  for (int k = 0; k < 10; ++k) {
    const auto y = rnd.real_point(1);
    EXPECT_LT(rel(got(y), want(y)), Real("1e-30"));
  }
}

TEST(SubstituteAffine, ZeroSlice) {
  const ExpRationalFunction g = corner_pole_h().substitute_affine(1, AffineForm::constant(1, 0));
  ASSERT_EQ(g.terms().size(), 1u);
  EXPECT_LT(abs(g.terms()[0].exponent.lin[0] - two_pi_i()), Real("1e-30"));
  EXPECT_LT(abs(g.terms()[0].exponent.c), Real("1e-30"));
}

TEST(SubstituteAffine, IdenticallyZeroDenominator) {
  const ExpRationalFunction f = ExpRationalFunction::constant(2, 1).divided_by(form({1, 1}, -I));
  try {
    f.substitute_affine(0, form({-1}, I));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IdenticallyZeroDenominator);
  }
}

TEST(SubstituteAffine, CommutesWithEvaluation) {
  RandomFunctions rnd(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ExpRationalFunction f = rnd.function(2);
    const AffineForm a{{Rational(rnd.integer(-2, 2))}, Complex(rnd.uniform(-1, 1))};
    const ExpRationalFunction g = f.substitute_affine(0, a);
    const auto y = rnd.real_point(1);
    const std::vector<Complex> xy{a(y), y[0]};
    EXPECT_LT(rel(g(y), f(xy)), Real("1e-10")) << "trial " << trial;
  }
}

TEST(SubstituteAffine, CommutesWithDifferentiation) {
  RandomFunctions rnd(13);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpRationalFunction f = rnd.function(3);
    // The image must not involve the differentiation variable, or the chain rule adds a term.
    const AffineForm a{{Rational(rnd.integer(-2, 2)), Rational(0)}, Complex(rnd.uniform(-1, 1))};
    // Substitute z_0 then differentiate in z_2 (index 1 afterwards), and the other way round.
    const ExpRationalFunction lhs = f.substitute_affine(0, a).differentiate(1);
    const ExpRationalFunction rhs = f.differentiate(2).substitute_affine(0, a);
    const auto y = rnd.real_point(2);
    EXPECT_LT(rel(lhs(y), rhs(y)), Real("1e-25")) << "trial " << trial;
  }
}

TEST(Residue1d, SimplePole) {
  const ExpRationalFunction f =
      ExpRationalFunction::constant(1, 1).divided_by(form({1}, -I)).divided_by(form({1}, I));
  const ExpRationalFunction r = f.residue_1d(0, AffineForm::constant(0, I));
  EXPECT_LT(rel(r(std::vector<Complex>{}), Complex(1) / (Complex(2) * I)), Real("1e-30"));
}

TEST(Residue1d, DoublePoleGivesDerivative) {
  const ExpRationalFunction slice = corner_pole_h().substitute_affine(0, AffineForm::constant(1, I));
  const ExpRationalFunction f = slice.divided_by(form({1}, -I), 2);
  const Complex r = f.residue_1d(0, AffineForm::constant(0, I))(std::vector<Complex>{});
  const Complex dy = two_pi_i() * Complex(2) * exp(Complex(-6 * real_pi()));
  EXPECT_LT(abs(r - dy) / abs(dy), Real("1e-30"));
}

TEST(Residue1d, CornerPoleFirstStepTwoResidues) {
  const ExpRationalFunction f = corner_pole().integrand();
  const ExpRationalFunction at_h1 = f.residue_1d(0, AffineForm::constant(1, I));
  const ExpRationalFunction at_h3 = f.residue_1d(0, form({-1}, Complex(2) * I));
  const ExpRationalFunction h = corner_pole_h();
  RandomFunctions rnd(5);
  for (int k = 0; k < 5; ++k) {
    const auto y = rnd.real_point(1);
    const Complex d = y[0] - I;
    const Complex want1 = h(std::vector<Complex>{I, y[0]}) / (d * d);
    const Complex want3 = -h(std::vector<Complex>{Complex(2) * I - y[0], y[0]}) / (d * d);
    EXPECT_LT(rel(at_h1(y), want1), Real("1e-30"));
    EXPECT_LT(rel(at_h3(y), want3), Real("1e-30"));
  }
}

TEST(Residue1d, SimplePoleEqualsEvaluationOfCofactor) {
  RandomFunctions rnd(17);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpRationalFunction rest = rnd.function(2);
    const AffineForm pole{{Rational(rnd.integer(-2, 2))}, Complex(0, rnd.uniform(0.5, 2))};
    const ExpRationalFunction f = rest.divided_by(form({1, -pole.lin[0]}, -pole.c));
    const ExpRationalFunction r = f.residue_1d(0, pole);
    const auto y = rnd.real_point(1);
    EXPECT_LT(rel(r(y), rest(std::vector<Complex>{pole(y), y[0]})), Real("1e-25")) << "trial " << trial;
  }
}

TEST(Residue1d, Linear) {
  RandomFunctions rnd(19);
  const AffineForm pole{{Rational(1)}, Complex(0, 1)};
  const AffineForm factor{{Rational(1), Rational(-1)}, Complex(0, -1)};
  for (int trial = 0; trial < 10; ++trial) {
    const ExpRationalFunction f = rnd.function(2).divided_by(factor, 2);
    const ExpRationalFunction g = rnd.function(2).divided_by(factor);
    const auto y = rnd.real_point(1);
    const Complex lhs = (f + g).residue_1d(0, pole)(y);
    const Complex rhs = f.residue_1d(0, pole)(y) + g.residue_1d(0, pole)(y);
    EXPECT_LT(rel(lhs, rhs), Real("1e-25")) << "trial " << trial;
  }
}

TEST(Evaluate, Examples) {
  const ExpRationalFunction lorentz =
      ExpRationalFunction::constant(1, 1).divided_by(form({1}, -I)).divided_by(form({1}, I));
  EXPECT_LT(rel(lorentz(std::vector<Complex>{Complex(0)}), Complex(1)), Real("1e-35"));
  const std::vector<Complex> ii{I, I};
  EXPECT_LT(abs(corner_pole_h()(ii) / exp(Complex(-6 * real_pi())) - Complex(1)), Real("1e-30"));
  // 2^-1 3^-1 / ((-i)(-i)(-i)) = -i/6.
  const std::vector<Complex> origin{Complex(0), Complex(0)};
  EXPECT_LT(rel(dirichlet_pair(2, 3).integrand()(origin), Complex(Real(0), Real(-1) / 6)), Real("1e-30"));
}

TEST(Evaluate, PoleHit) {
  const ExpRationalFunction f = ExpRationalFunction::constant(1, 1).divided_by(form({1}, -I));
  try {
    f(std::vector<Complex>{I});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleHit);
  }
}

TEST(Normalization, ProportionalFactorsMerge) {
  ExpRationalFunction f = ExpRationalFunction::constant(1, 1).divided_by(form({1}, -I));
  f = f.divided_by(form({2}, Complex(-2) * I));
  ASSERT_EQ(f.terms().size(), 1u);
  ASSERT_EQ(f.terms()[0].denominator.size(), 1u);
  EXPECT_EQ(f.terms()[0].denominator[0].multiplicity, 2u);
  EXPECT_LT(rel(f(std::vector<Complex>{Complex(0)}), Complex(Real(-1) / 2)), Real("1e-30"));
}

TEST(CompiledFunction, AgreesWithExactEvaluation) {
  RandomFunctions rnd(23);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpRationalFunction f = rnd.function(2);
    const CompiledFunction c(f);
    const auto z = rnd.real_point(2);
    const std::complex<double> zd[2] = {z[0].to_std(), z[1].to_std()};
    const std::complex<double> want = f(z).to_std();
    EXPECT_LT(std::abs(c(zd) - want), 1e-12 * std::max(1.0, std::abs(want)));
  }
}

}  // namespace
}  // namespace residuum
