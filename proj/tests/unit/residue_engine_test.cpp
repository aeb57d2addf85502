#include "fixtures.hpp"

#include "residuum/errors.hpp"
#include "residuum/residue_engine.hpp"

#include <gtest/gtest.h>

namespace residuum {
namespace {

using namespace residuum::testing;

const Real kTight("1e-25");

Complex corner_dx() {  // ∂_x h(i,i) for h = exp(2πi(x+2y))
  const Real two_pi = 2 * real_pi();
  return Complex(Real(0), two_pi) * Complex(exp(-3 * two_pi));
}
Complex corner_dy() { return corner_dx() * Complex(2); }

TEST(TruncatedResidue, CornerPoleFlags) {
  const auto a = corner_pole();
  const auto pi = pi_corner_pole();
  EXPECT_LT(rel_err(truncated_iterated_residue(a, flag({1, 2}), pi), corner_dy()), kTight);
  EXPECT_LT(rel_err(truncated_iterated_residue(a, flag({3, 2}), pi), corner_dx() - corner_dy()), kTight);
  EXPECT_EQ(truncated_iterated_residue(a, flag({2, 1}), pi), Complex());
  EXPECT_THROW(iterated_residue(a, flag({2, 1}), pi), Error);
}

TEST(IteratedResidue, DirichletPairClosedForms) {
  const auto a = dirichlet_pair(2, 3);
  const Complex i = Complex::i();
  const Complex want13 = i * Complex(pow(Real(3), -3)) / Complex(3);
  const Complex want23 = i * Complex(pow(Real(2), -3)) / Complex(3);
  EXPECT_LT(rel_err(iterated_residue(a, flag({1, 3}), pi_b()), want13), kTight);
  EXPECT_LT(rel_err(iterated_residue(a, flag({2, 3}), pi_c()), want23), kTight);
}

TEST(EvaluateIntegral, CornerPole) {
  const auto a = corner_pole();
  const auto res = evaluate_integral(a, pi_corner_pole());
  const Complex two_pi_i(Real(0), 2 * real_pi());
  EXPECT_LT(rel_err(res.value, two_pi_i * two_pi_i * corner_dx()), kTight);
  EXPECT_EQ(res.flag_contributions.size(), 2u);
  EXPECT_TRUE(res.certificate.certified());
}

TEST(EvaluateIntegral, DirichletPairPiB) {
  const auto a = dirichlet_pair(2, 3);
  const auto res = evaluate_integral(a, pi_b());
  const Complex two_pi_i(Real(0), 2 * real_pi());
  const Complex want = two_pi_i * two_pi_i * Complex::i() * Complex(pow(Real(3), -3)) / Complex(3);
  EXPECT_LT(rel_err(res.value, want), kTight);
  EXPECT_TRUE(res.certificate.certified());
  EXPECT_EQ(res.certificate.convergence, Convergence::BoundedNumeratorRule);
}

TEST(Grothendieck, CornerPoleGroupings) {
  const auto a = corner_pole();
  const auto pi = pi_corner_pole();
  const std::vector<Complex> m{Complex::i(), Complex::i()};
  EXPECT_LT(rel_err(grothendieck_residue(a, {{{0, 2}, {1}}}, m, pi), corner_dx()), kTight);
  EXPECT_LT(rel_err(grothendieck_residue(a, {{{1, 2}, {0}}}, m, pi), -corner_dy()), kTight);
  // Transformation law with u = x - i, v = y - i: (u², v²) = A (uv, u + v), det A = u - v.
  EXPECT_LT(rel_err(grothendieck_residue(a, {{{0, 1}, {2}}}, m, pi), corner_dy() - corner_dx()), kTight);
  const auto d = canonical_grouping(a, pi);
  EXPECT_EQ(d.groups, (std::vector<std::vector<std::size_t>>{{0, 2}, {1}}));
}

}  // namespace
}  // namespace residuum
