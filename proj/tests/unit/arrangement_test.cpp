#include "fixtures.hpp"

#include "residuum/errors.hpp"

#include <gtest/gtest.h>

#include <random>

namespace residuum {
namespace {

using namespace residuum::testing;

const Complex I = Complex::i();

std::vector<Rational> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

Arrangement plain(std::size_t r, const std::vector<std::pair<std::vector<Rational>, Complex>>& hs) {
  Arrangement a(r, ExpRationalFunction::constant(r, 1));
  for (const auto& [f, s] : hs) a.add_hyperplane({f, s, 1});
  return a;
}

std::vector<Flag> flags(std::initializer_list<std::initializer_list<std::size_t>> one_based) {
  std::vector<Flag> out;
  for (auto f : one_based) out.push_back(flag(f));
  return out;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidProblem;
}

TEST(Canonicalize, Examples) {
  const CanonicalHyperplane a = canonicalize_hyperplane(real_form({-1}), -I);
  EXPECT_EQ(a.hyperplane.f, ints({-1}));
  EXPECT_LT(abs(a.hyperplane.s - Complex(1)), Real("1e-35"));

  const CanonicalHyperplane b = canonicalize_hyperplane(real_form({1, 1}), Complex(-2) * I);
  EXPECT_EQ(b.hyperplane.f, ints({1, 1}));
  EXPECT_LT(abs(b.hyperplane.s - Complex(2)), Real("1e-35"));

  // i·(-x - i) = -ix + 1.
  const std::vector<GaussianRational> rotated{{0, -1}};
  const CanonicalHyperplane c = canonicalize_hyperplane(rotated, Complex(1));
  EXPECT_EQ(c.hyperplane.f, ints({-1}));
  EXPECT_LT(abs(c.hyperplane.s - Complex(1)), Real("1e-35"));
  EXPECT_LT(abs(c.scale - I), Real("1e-35"));
}

TEST(Canonicalize, PrimitiveAndScaleInvariant) {
  std::mt19937 gen(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GaussianRational> a{{d(gen), 0}, {d(gen), 0}};
    if (a[0].is_zero() && a[1].is_zero()) continue;
    const Complex b(Real(d(gen)), Real(d(gen) == 0 ? 1 : d(gen)));
    CanonicalHyperplane base;
    try {
      base = canonicalize_hyperplane(a, b);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::MeetsRealLocus);
      continue;
    }
    EXPECT_GT(base.hyperplane.s.real(), 0);
    // scale·g reproduces the input.
    const std::vector<Complex> pt{Complex(Real("0.3")), Complex(Real("-1.7"))};
    const Complex input = a[0].to_complex() * pt[0] + a[1].to_complex() * pt[1] + b;
    EXPECT_LT(abs(base.scale * base.hyperplane.g()(pt) - input), Real("1e-30"));

    GaussianRational lambda;
    while (lambda.is_zero()) lambda = {d(gen), d(gen)};
    std::vector<GaussianRational> scaled{lambda * a[0], lambda * a[1]};
    const CanonicalHyperplane again = canonicalize_hyperplane(scaled, lambda.to_complex() * b);
    EXPECT_EQ(again.hyperplane.f, base.hyperplane.f);
    EXPECT_LT(abs(again.hyperplane.s - base.hyperplane.s), Real("1e-30"));

    std::vector<GaussianRational> canon;
    for (const auto& q : base.hyperplane.f) canon.push_back({q, 0});
    const CanonicalHyperplane idem = canonicalize_hyperplane(canon, -(I * base.hyperplane.s));
    EXPECT_EQ(idem.hyperplane.f, base.hyperplane.f);
    EXPECT_LT(abs(idem.scale - Complex(1)), Real("1e-30"));
  }
}

TEST(Canonicalize, Errors) {
  const std::vector<GaussianRational> skew{{1, 0}, {0, 1}};
  EXPECT_EQ(kind_of([&] { canonicalize_hyperplane(skew, I); }), ErrorKind::NotAlignable);
  EXPECT_EQ(kind_of([&] { canonicalize_hyperplane(real_form({1}), Complex(0)); }), ErrorKind::MeetsRealLocus);
  EXPECT_EQ(kind_of([&] { canonicalize_hyperplane(real_form({1}), Complex(3)); }), ErrorKind::MeetsRealLocus);
}

TEST(Jacobian, Examples) {
  const Arrangement e2 = corner_pole();
  EXPECT_EQ(jacobian(e2, flag({1, 2}), pi_corner_pole()), (RationalMatrix{{1, -1}, {0, 1}}));
  const Arrangement e1 = dirichlet_pair(2, 3);
  EXPECT_EQ(jacobian(e1, flag({3, 1}), pi_a()), (RationalMatrix{{1, 1}, {-1, 0}}));
  EXPECT_EQ(jacobian(e1, flag({2, 3}), pi_a()), e1.f_matrix(std::vector<std::size_t>{1, 2}));
}

TEST(Jacobian, GeneratorPermutationPermutesColumns) {
  const Arrangement e1 = dirichlet_pair(2, 3);
  const std::vector<std::size_t> perm{1, 0};
  for (const auto& f : enumerate_flags(e1, 2)) {
    const RationalMatrix j = jacobian(e1, f, pi_b());
    const RationalMatrix jp = jacobian(e1, f, pi_b().permuted(perm));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(jp(r, c), j(r, perm[c]));
  }
}

TEST(EnumerateFlags, Counts) {
  EXPECT_EQ(enumerate_flags(dirichlet_pair(2, 3), 2),
            flags({{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}}));
  const Arrangement parallel = plain(2, {{ints({1, 1}), Complex(1)}, {ints({2, 2}), Complex(1)}});
  EXPECT_TRUE(enumerate_flags(parallel, 2).empty());
  EXPECT_EQ(enumerate_flags(parallel, 1).size(), 2u);
  const Arrangement generic = plain(2, {{ints({1, 0}), Complex(1)},
                                        {ints({0, 1}), Complex(1)},
                                        {ints({1, 1}), Complex(1)},
                                        {ints({1, -2}), Complex(1)}});
  EXPECT_EQ(enumerate_flags(generic, 2).size(), 12u);
}

TEST(StableCollections, DirichletPairTable) {
  const Arrangement e1 = dirichlet_pair(2, 3);
  EXPECT_EQ(stable_collections(e1, pi_a()), flags({{3, 1}}));
  EXPECT_EQ(stable_collections(e1, pi_b()), flags({{1, 3}}));
  EXPECT_EQ(stable_collections(e1, pi_c()), flags({{2, 3}}));
}

TEST(StableCollections, CornerPoleCollapsesToTwoFlags) {
  const Arrangement e2 = corner_pole();
  EXPECT_EQ(stable_collections(e2, pi_corner_pole()), flags({{1, 2}, {3, 2}}));
  const auto groups = stable_flags(e2, pi_corner_pole());
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_TRUE(same_flag(e2, flag({1, 2}), flag({1, 3})));
  EXPECT_FALSE(same_flag(e2, flag({1, 2}), flag({3, 2})));
}

TEST(CompatibilityAudit, DirichletPair) {
  const AuditReport a = compatibility_audit(dirichlet_pair(2, 3), pi_a());
  EXPECT_FALSE(a.all_compatible);
  bool found = false;
  for (const auto& v : a.violators)
    if (v.flag == flag({3, 1})) {
      found = true;
      ASSERT_EQ(v.positive_q.size(), 1u);
      EXPECT_EQ(std::get<0>(v.positive_q[0]), 1u);
      EXPECT_EQ(std::get<1>(v.positive_q[0]), 2u);
      EXPECT_EQ(std::get<2>(v.positive_q[0]), 1);
    }
  EXPECT_TRUE(found);
  EXPECT_TRUE(compatibility_audit(dirichlet_pair(2, 3), pi_b()).all_compatible);
  EXPECT_TRUE(compatibility_audit(plain(1, {{ints({1}), Complex(1)}}), Polyhedron::standard(1)).all_compatible);
}

TEST(PoleLocation, Examples) {
  const auto p = pole_location(corner_pole(), flag({1, 2}));
  EXPECT_LT(abs(p[0] - I), Real("1e-35"));
  EXPECT_LT(abs(p[1] - I), Real("1e-35"));

  const Complex s1(Real("0.5")), s2(Real("1.25")), s3(Real("2"));
  const Arrangement e1 = dirichlet_pair(Real(2), Real(3), s1, s2, s3);
  const auto z23 = pole_location(e1, flag({2, 3}));
  EXPECT_LT(abs(z23[0] - I * (s2 + s3)), Real("1e-35"));
  EXPECT_LT(abs(z23[1] + I * s2), Real("1e-35"));
  const auto z32 = pole_location(e1, flag({3, 2}));
  EXPECT_LT(abs(z32[0] - z23[0]) + abs(z32[1] - z23[1]), Real("1e-35"));

  const auto x = pole_location(plain(1, {{ints({-1}), Complex(3)}}), flag({1}));
  EXPECT_LT(abs(x[0] + Complex(3) * I), Real("1e-35"));
}

// ω = dx∧dy / ((x² + s1²)((x + y)² + s2²)).
Arrangement two_quadratics(const Complex& s1, const Complex& s2) {
  return plain(2, {{ints({1, 0}), s1}, {ints({1, 1}), s2}, {ints({-1, 0}), s1}, {ints({-1, -1}), s2}});
}

TEST(ZStar, TwoQuadraticsExample) {
  const std::vector<Real> x{Real("0.7")};
  for (auto [a, b] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {1.5, 1.5}}) {
    const Complex s1(a), s2(b);
    const ZStar z = z_star(two_quadratics(s1, s2), flag({1, 2}), pi_a(), x);
    EXPECT_LT(abs(z.values[0] - I * s1), Real("1e-35"));
    EXPECT_LT(abs(z.values[1] - I * (s2 - s1)), Real("1e-35"));
    EXPECT_EQ(z.arises_in_expansion, b > a);
    EXPECT_EQ(z.boundary, a == b);
  }
}

TEST(ZStar, DiagonalArrangement) {
  const Complex s1(Real("0.4"), Real("3")), s2(Real("2"), Real("-1")), s3(1);
  const Arrangement a = plain(3, {{ints({1, 0, 0}), s1}, {ints({0, 1, 0}), s2}, {ints({0, 0, 1}), s3}});
  const std::vector<Real> x{Real("0.3"), Real("-2")};
  const ZStar z = z_star(a, flag({1, 2, 3}), Polyhedron::standard(3), x);
  EXPECT_LT(abs(z.values[0] - I * s1), Real("1e-35"));
  EXPECT_LT(abs(z.values[1] - I * s2), Real("1e-35"));
  EXPECT_LT(abs(z.values[2] - I * s3), Real("1e-35"));
  EXPECT_TRUE(z.arises_in_expansion);
}

TEST(ZStar, InsolubleFlag) {
  const std::vector<Real> x{Real(0)};
  EXPECT_EQ(kind_of([&] { z_star(corner_pole(), flag({2, 3}), Polyhedron::standard(2), x); }), ErrorKind::InsolubleFlag);
}

struct RandomArrangement {
  std::vector<std::vector<Rational>> fs;
  Arrangement with(const std::vector<Complex>& s) const {
    Arrangement a(fs[0].size(), ExpRationalFunction::constant(fs[0].size(), 1));
    for (std::size_t k = 0; k < fs.size(); ++k) a.add_hyperplane({fs[k], s[k], 1});
    return a;
  }
};

TEST(ZStar, ImaginaryPartIndependentOfSamples) {
  std::mt19937 gen(29);
  std::uniform_real_distribution<double> u(-5, 5);
  const Arrangement e1 = dirichlet_pair(Real(2), Real(3), Complex(1, 2), Complex(Real("0.5")), Complex(2, -1));
  for (const auto& f : enumerate_flags(e1, 2)) {
    for (const Polyhedron& pi : {pi_a(), pi_b(), pi_c()}) {
      if (!minor_profile(jacobian(e1, f, pi)).in_bruhat_cell) continue;
      const std::vector<Real> x0{Real(u(gen))};
      const ZStar base = z_star(e1, f, pi, x0);
      for (int k = 0; k < 10; ++k) {
        const std::vector<Real> x{Real(u(gen))};
        const ZStar z = z_star(e1, f, pi, x);
        for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(abs(z.values[j].imag() - base.values[j].imag()), Real("1e-30"));
      }
    }
  }
}

TEST(ZStar, StableIffArisesForRandomS) {
  std::mt19937 gen(31);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_real_distribution<double> re(0.05, 3), im(-3, 3);
  int stable_seen = 0, unstable_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = trial % 2 == 0 ? 2 : 3;
    RandomArrangement ra;
    while (ra.fs.size() < r) {
      std::vector<Rational> f(r);
      for (auto& q : f) q = entry(gen);
      if (std::any_of(f.begin(), f.end(), [](const Rational& q) { return q != 0; })) ra.fs.push_back(f);
    }
    std::vector<Complex> s0(r, Complex(1));
    Arrangement a0 = ra.with(s0);
    if (a0.size() != r) continue;
    Flag f;
    for (std::size_t k = 0; k < r; ++k) f.indices.push_back(k);
    if (rank(a0.f_matrix(f.indices)) != r) continue;
    const MinorProfile prof = minor_profile(jacobian(a0, f, Polyhedron::standard(r)));
    if (!prof.in_bruhat_cell) continue;
    bool all_arise = true;
    for (int draw = 0; draw < 200 && all_arise; ++draw) {
      std::vector<Complex> s;
      for (std::size_t k = 0; k < r; ++k) s.push_back(Complex(re(gen), im(gen)));
      const std::vector<Real> x(r - 1, Real(0));
      all_arise = z_star(ra.with(s), f, Polyhedron::standard(r), x).arises_in_expansion;
    }
    EXPECT_EQ(all_arise, prof.stable) << a0.f_matrix(f.indices).to_string();
    (prof.stable ? stable_seen : unstable_seen)++;
  }
  EXPECT_GT(stable_seen, 0);
  EXPECT_GT(unstable_seen, 0);
}

}  // namespace
}  // namespace residuum
