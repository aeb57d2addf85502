#pragma once

#include "residuum/arrangement.hpp"
#include "residuum/numeric.hpp"

#include <string>
#include <vector>

namespace residuum {

enum class Convergence { BoundedNumeratorRule, DecayRule, UserAsserted, Unknown };

const char* to_string(Convergence c);

struct Certificate {
  bool all_compatible = true;
  Convergence convergence = Convergence::Unknown;
  std::vector<std::string> warnings;

  bool certified() const { return all_compatible && convergence != Convergence::Unknown; }
};

struct FlagContribution {
  Flag flag;                      // representative ordered collection
  std::vector<Flag> collections;  // all stable collections cutting out this flag
  std::vector<Complex> terminal_point;
  Complex residue;                // tres in Π's coordinates
};

struct ResidueResult {
  Complex value;
  std::vector<FlagContribution> flag_contributions;
  Certificate certificate;
  AuditReport audit;
  /// Same normalization, summed over flags whose terminal point lies in Π.
  Complex terminal_point_sum;
};

struct EvaluateOptions {
  bool assert_convergence = false;
};

/// Iterated one-variable residues in Π's coordinates z (x = V z); zero when
/// the linearized flag leaves the open Bruhat cell.
Complex truncated_iterated_residue(const Arrangement& a, const Flag& flag, const Polyhedron& pi);

/// As above but throws InsolubleFlag outside the open Bruhat cell.
Complex iterated_residue(const Arrangement& a, const Flag& flag, const Polyhedron& pi);

/// Coordinate-free residue: det(V) times the iterated residue in Π's coordinates.
Complex intrinsic_iterated_residue(const Arrangement& a, const Flag& flag, const Polyhedron& pi);

/// Hyperplanes whose pole in z_1 sits in the upper half-plane for real
/// z_2..z_r: the poles picked up when the first integral is closed upward.
std::vector<std::size_t> first_step_poles(const Arrangement& a, const Polyhedron& pi);

/// Residue of G(z) = ω-density(Vz) in z_1 at hyperplane k's pole, as a
/// function of z_2..z_r; the integrand of the next step of the expansion.
ExpRationalFunction first_step_residue(const Arrangement& a, std::size_t k, const Polyhedron& pi);

/// |det V| (2πi)^r Σ_{γ ∈ Z_Π} tres(γ).
ResidueResult evaluate_integral(const Arrangement& a, const Polyhedron& pi, const EvaluateOptions& options = {});

struct DivisorGrouping {
  std::vector<std::vector<std::size_t>> groups;

  std::string label() const;  // "(H3H1, H2)"
};

/// Complete collections (H_1..H_r) with H_k ∈ D_k meeting transversally.
/// When m is given only collections with terminal point m are kept.
std::vector<Flag> arising_collections(const Arrangement& a, const DivisorGrouping& d);
std::vector<Flag> arising_collections(const Arrangement& a, const DivisorGrouping& d,
                                      std::span<const Complex> m);

/// Distinct terminal points of the collections arising from d.
std::vector<std::vector<Complex>> grouping_points(const Arrangement& a, const DivisorGrouping& d);

/// Coordinate systems tried for Grothendieck residues: Π's generators in every
/// order, the standard basis in every order, then small integer bases.
std::vector<Polyhedron> coordinate_candidates(const Polyhedron& pi);

/// res_D[ω, m] as det(V)·Σ tres over the flags arising from D at m, in the
/// first candidate coordinates where every arising flag is soluble. Throws
/// BruhatViolation if there is none.
Complex grothendieck_residue(const Arrangement& a, const DivisorGrouping& d, std::span<const Complex> m,
                             const Polyhedron& pi);

/// D_k = union of the k-th members of the Π-stable collections.
DivisorGrouping canonical_grouping(const Arrangement& a, const Polyhedron& pi);

struct GroupingPoint {
  std::vector<Complex> point;
  Complex residue;
};

struct GroupingReport {
  DivisorGrouping grouping;
  std::vector<GroupingPoint> points;
  Complex sum;
  /// sign(det V) · evaluate_integral / (2πi)^r; equal to sum when the
  /// comparison holds.
  Complex expected;
};

GroupingReport grouping_report(const Arrangement& a, const Polyhedron& pi);

/// Sufficient conditions for convergence of the iterated residue expansion.
Convergence convergence_heuristic(const Arrangement& a, const Polyhedron& pi);

/// Whether ∫ |P| / ∏|g_k|^{m_k} over R^r converges at infinity for a
/// polynomial P of the given degree (flat-by-flat degree count).
bool absolutely_convergent(const Arrangement& a, unsigned numerator_degree);

/// |exp(L)| bounded on Π: real slope zero and Im(slope)·v >= 0 on every generator.
bool exponent_bounded_on(const ExpForm& e, const Polyhedron& pi);

struct PermutationProbe {
  struct Hit {
    Flag stable;
    Flag permuted;
  };
  std::size_t stable_checked = 0;
  std::vector<Hit> counterexamples;
};

PermutationProbe permutation_stability_probe(const Arrangement& a, const Polyhedron& pi);

}  // namespace residuum
