#include "residuum/errors.hpp"
#include "residuum/exact_linalg.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

namespace residuum {
namespace {

Rational cofactor_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  std::vector<std::size_t> rows(n - 1);
  std::iota(rows.begin(), rows.end(), std::size_t{1});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    const Rational sub = cofactor_det(m.submatrix(rows, cols));
    det += (j % 2 ? -1 : 1) * m(0, j) * sub;
  }
  return det;
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(RationalMatrix{{1, 1}, {-1, 0}}), 1);
  EXPECT_EQ(determinant(RationalMatrix::identity(4)), 1);
  EXPECT_EQ(determinant(RationalMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(RationalMatrix{{Rational(1, 2), Rational(1, 3)}, {1, 1}}), Rational(1, 6));
  EXPECT_EQ(determinant(RationalMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_THROW(determinant(RationalMatrix(2, 3)), Error);
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937 rng(7);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      const RationalMatrix m = random_matrix(rng, n, n, -3, 3);
      ASSERT_EQ(determinant(m), cofactor_det(m)) << m.to_string();
    }
  }
}

TEST(Determinant, RationalEntries) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    RationalMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = Rational(num(rng), den(rng));
    ASSERT_EQ(determinant(m), cofactor_det(m));
  }
}

TEST(Minors, LeadingPrincipal) {
  const RationalMatrix a{{1, 1}, {-1, 0}};
  EXPECT_EQ(leading_principal_minor(a, 0), 1);
  EXPECT_EQ(leading_principal_minor(a, 1), 1);
  EXPECT_EQ(leading_principal_minor(a, 2), 1);
  EXPECT_EQ(leading_principal_minor(RationalMatrix{{1, 0}, {1, 1}}, 2), 1);
  for (std::size_t k = 1; k <= 3; ++k)
    EXPECT_EQ(leading_principal_minor(RationalMatrix::identity(3), k), 1);
  EXPECT_THROW(leading_principal_minor(a, 3), Error);
}

TEST(Minors, QMinor) {
  EXPECT_EQ(q_minor(RationalMatrix{{1, 1}, {-1, 0}}, 1, 2), 1);
  EXPECT_EQ(q_minor(RationalMatrix{{1, -1}, {-1, 2}}, 1, 2), -1);
  EXPECT_EQ(q_minor(RationalMatrix::identity(2), 1, 2), 0);
  EXPECT_THROW(q_minor(RationalMatrix::identity(2), 2, 2), Error);
  EXPECT_THROW(q_minor(RationalMatrix::identity(2), 1, 3), Error);
}

TEST(Minors, RMinor) {
  EXPECT_EQ(r_minor(RationalMatrix{{1, 0}, {1, 1}}, 1, 2), 1);
  EXPECT_EQ(r_minor(RationalMatrix{{1, 1}, {-1, 0}}, 1, 2), -1);
  EXPECT_EQ(r_minor(RationalMatrix::identity(2), 1, 2), 0);
  EXPECT_THROW(r_minor(RationalMatrix::identity(2), 2, 2), Error);
}

TEST(Minors, TwoByTwoClosedForms) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const RationalMatrix m = random_matrix(rng, 2, 2, -9, 9);
    EXPECT_EQ(q_minor(m, 1, 2), m(0, 1));
    EXPECT_EQ(r_minor(m, 1, 2), m(1, 0));
  }
}

TEST(Minors, AgainstCofactorOracle) {
  std::mt19937 rng(5);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const RationalMatrix m = random_matrix(rng, n, n, -3, 3);
      for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        ASSERT_EQ(leading_principal_minor(m, k), cofactor_det(m.submatrix(idx, idx)));
        for (std::size_t l = k + 1; l <= n; ++l) {
          std::vector<std::size_t> cols(k - 1);
          std::iota(cols.begin(), cols.end(), std::size_t{0});
          cols.push_back(l - 1);
          ASSERT_EQ(q_minor(m, k, l), cofactor_det(m.submatrix(idx, cols)));
        }
        for (std::size_t j = 1; j < k; ++j) {
          std::vector<std::size_t> rows;
          for (std::size_t i = 0; i < k; ++i)
            if (i != j - 1) rows.push_back(i);
          std::vector<std::size_t> cols(k - 1);
          std::iota(cols.begin(), cols.end(), std::size_t{0});
          ASSERT_EQ(r_minor(m, j, k), cofactor_det(m.submatrix(rows, cols)));
        }
      }
    }
  }
}

TEST(MinorProfile, Verdicts) {
  const auto a = minor_profile(RationalMatrix{{1, 1}, {-1, 0}});
  EXPECT_TRUE(a.stable);
  EXPECT_FALSE(a.compatible);
  EXPECT_TRUE(a.in_bruhat_cell);

  const auto b = minor_profile(RationalMatrix{{1, 0}, {1, 1}});
  EXPECT_FALSE(b.stable);
  EXPECT_TRUE(b.compatible);

  const auto c = minor_profile(RationalMatrix{{1, -1}, {-1, 2}});
  EXPECT_TRUE(c.stable);
  EXPECT_TRUE(c.compatible);
  ASSERT_EQ(c.p.size(), 2u);
  EXPECT_EQ(c.p[0], 1);
  EXPECT_EQ(c.p[1], 1);
}

TEST(MinorProfile, PartialFlagRows) {
  // 1 x 2 slice: only p_1 and q_12 exist.
  const auto prof = minor_profile(RationalMatrix{{2, -1}});
  EXPECT_EQ(prof.p.size(), 1u);
  EXPECT_EQ(prof.q.size(), 1u);
  EXPECT_TRUE(prof.r.empty());
  EXPECT_TRUE(prof.stable);
  EXPECT_TRUE(prof.compatible);
  EXPECT_THROW(minor_profile(RationalMatrix(3, 2)), Error);
}

TEST(MinorProfile, InvariantUnderPositiveDiagonal) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pos(1, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const RationalMatrix m = random_matrix(rng, n, n, -3, 3);
    RationalMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = Rational(pos(rng), pos(rng));
    const auto before = minor_profile(m);
    const auto after = minor_profile(d * m);
    ASSERT_EQ(before.stable, after.stable);
    ASSERT_EQ(before.compatible, after.compatible);
    ASSERT_EQ(before.in_bruhat_cell, after.in_bruhat_cell);
  }
}

TEST(MinorProfile, BruhatCellMatchesLU) {
  std::mt19937 rng(23);
  int invertible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const RationalMatrix m = random_matrix(rng, n, n, -2, 2);
    if (determinant(m) == 0) continue;
    ++invertible;
    const auto lu = lu_without_pivoting(m);
    ASSERT_EQ(minor_profile(m).in_bruhat_cell, lu.has_value()) << m.to_string();
    if (lu) ASSERT_EQ(lu->first * lu->second, m);
  }
  EXPECT_GT(invertible, 100);
}

TEST(Inverse, RoundTrip) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const RationalMatrix m = random_matrix(rng, 3, 3, -4, 4);
    const auto inv = inverse(m);
    ASSERT_EQ(inv.has_value(), determinant(m) != 0);
    if (inv) EXPECT_EQ(m * *inv, RationalMatrix::identity(3));
  }
}

TEST(Rank, Basic) {
  EXPECT_EQ(rank(RationalMatrix{{1, 2, 3}, {2, 4, 6}}), 1u);
  EXPECT_EQ(rank(RationalMatrix{{1, 0}, {0, 1}, {1, 1}}), 2u);
  EXPECT_EQ(rank(RationalMatrix(2, 2)), 0u);
}

TEST(Solve, Exact) {
  const RationalMatrix m{{2, 1}, {1, 3}};
  const std::vector<Rational> b{1, 2};
  const auto x = solve(m, b);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Rational(1, 5));
  EXPECT_EQ((*x)[1], Rational(3, 5));
  EXPECT_FALSE(solve(RationalMatrix{{1, 1}, {1, 1}}, b));
}

}  // namespace
}  // namespace residuum
