#pragma once

#include "residuum/arrangement.hpp"
#include "residuum/symfun.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace residuum {

struct QuadratureOptions {
  double box = 50;
  double tol = 1e-6;
  std::size_t node_budget = 4096;  // per axis
  /// Fraction of the distance to each polar hyperplane the real contour may move.
  double shift_fraction = 0.7;
  bool shift = true;
  /// Worker threads for the outermost axis; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct QuadratureReport {
  std::complex<double> estimate;
  double error_bound = 0;
  /// T, or the far end of the widest taper when larger.
  double box_halfwidth = 0;
  std::size_t nodes_per_axis = 0;
  double tail_estimate = 0;
  /// Imaginary contour shift used for each exponential frequency class.
  std::vector<std::vector<double>> shifts;
  std::size_t evaluations = 0;
  /// Whether the adaptive error estimate met tol relative to the L1 norm.
  bool converged = true;
};

/// ∫_{R^r} ω by nested adaptive Gauss–Kronrod. Terms are split by exponential
/// frequency; each class is moved to R^r + iθ inside the pole-free tube, axes
/// without oscillation are mapped to the full line, oscillating axes are cut
/// off smoothly: flat on [-2T/3, 2T/3], tapering over max(T/3, 60/|ω|).
QuadratureReport quad_integral(const Arrangement& a, const QuadratureOptions& options);
QuadratureReport quad_integral(const Arrangement& a, double box = 50, double tol = 1e-6);

/// Shift maximizing the decay of exp(i ω·(x + iθ)) subject to
/// f_k(θ) <= fraction · Re s_k and |θ_j| <= bound.
std::vector<double> contour_shift(const Arrangement& a, std::span<const double> omega, double fraction,
                                  double bound = 20);

enum class HalfPlane { Upper, Lower };

struct SemicircleDiagnostic {
  std::vector<double> radii;  // after any perturbation away from poles
  std::vector<std::complex<double>> integrals;
  std::vector<double> magnitudes;
  bool decays = false;
};

/// ∫ F dz over the arc of radius R from R to -R through the chosen half-plane.
SemicircleDiagnostic semicircle_check(const ExpRationalFunction& f, std::span<const double> radii,
                                      HalfPlane half);

/// res_H[ω, m] by the tensor trapezoid rule on |g_j| = ε_j, j ∈ H. Empty eps
/// picks a tenth of the largest radius keeping every foreign hyperplane outside.
std::complex<double> torus_residue(const Arrangement& a, const Flag& h, std::span<const double> eps = {},
                                   std::size_t nodes = 256);

/// Radii used by torus_residue when none are given.
std::vector<double> default_torus_radii(const Arrangement& a, const Flag& h);

}  // namespace residuum
