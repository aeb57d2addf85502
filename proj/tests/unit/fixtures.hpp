#pragma once

#include "residuum/arrangement.hpp"
#include "residuum/residue_engine.hpp"

#include <vector>

namespace residuum::testing {

inline Complex ci(double re, double im) { return Complex(re, im); }

/// exp(lin·x + c) as a one-term numerator.
inline ExpRationalFunction exp_numerator(std::vector<Complex> lin, Complex c = Complex()) {
  const std::size_t n = lin.size();
  return ExpRationalFunction::from_term({Polynomial::constant(n, Complex(1)), ExpForm{std::move(lin), std::move(c)}, {}});
}

inline std::vector<GaussianRational> real_form(std::initializer_list<int> coeffs) {
  std::vector<GaussianRational> out;
  for (int c : coeffs) out.push_back({c, 0});
  return out;
}

/// n1^{ix-s1} n2^{iy-s2} / ((-x-is1)(-y-is2)(x+y-is3)).
inline Arrangement dirichlet_pair(const Real& n1, const Real& n2, const Complex& s1, const Complex& s2, const Complex& s3) {
  const Real l1 = log(n1), l2 = log(n2);
  const Complex i = Complex::i();
  Arrangement a(2, exp_numerator({i * Complex(l1), i * Complex(l2)}, -(s1 * Complex(l1)) - s2 * Complex(l2)));
  a.add_factor(real_form({-1, 0}), -(i * s1));
  a.add_factor(real_form({0, -1}), -(i * s2));
  a.add_factor(real_form({1, 1}), -(i * s3));
  return a;
}

inline Arrangement dirichlet_pair(double n1, double n2) { return dirichlet_pair(Real(n1), Real(n2), 1, 1, 1); }

/// exp(2πi(x+2y)) / ((x-i)(y-i)(x+y-2i)).
inline Arrangement corner_pole() {
  const Complex two_pi_i = Complex(Real(0), 2 * real_pi());
  Arrangement a(2, exp_numerator({two_pi_i, two_pi_i * Complex(2)}));
  const Complex i = Complex::i();
  a.add_factor(real_form({1, 0}), -i);
  a.add_factor(real_form({0, 1}), -i);
  a.add_factor(real_form({1, 1}), -(i * Complex(2)));
  return a;
}

inline Polyhedron cone(std::vector<std::vector<Rational>> gens) { return Polyhedron::from_generators(gens); }
inline Polyhedron pi_a() { return cone({{1, 0}, {0, 1}}); }
inline Polyhedron pi_b() { return cone({{-1, 1}, {0, 1}}); }
inline Polyhedron pi_c() { return cone({{1, -1}, {1, 0}}); }
inline Polyhedron pi_corner_pole() { return cone({{1, 0}, {-1, 1}}); }

inline Flag flag(std::initializer_list<std::size_t> one_based) {
  Flag f;
  for (std::size_t i : one_based) f.indices.push_back(i - 1);
  return f;
}

inline Real rel_err(const Complex& got, const Complex& want) {
  return abs(got - want) / max(abs(want), Real("1e-300"));
}

}  // namespace residuum::testing
