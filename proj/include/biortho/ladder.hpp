#pragma once

#include "biortho/canonical.hpp"
#include "biortho/pair.hpp"
#include "biortho/types.hpp"

namespace biortho {

// The standard raising/lowering structure on C^d: a[k][k+1] = sqrt(k+1),
// zero elsewhere, so a e_{k+1} = sqrt(k+1) e_k and a^* e_k = sqrt(k+1)
// e_{k+1} (with a^* e_{d-1} = 0 cut off by the truncation). Requires d >= 2.
ComplexMatrix standard_ladder(Index d);

// Ladder operators intertwined with a regular pair through its canonical
// form. With S = F a F^* (the standard ladder expressed in the canonical
// basis f):
//   A    = Tf S Tf^{-1}        lowers phi:  A phi_n = sqrt(n) phi_{n-1}
//   B    = Tf S^* Tf^{-1}      raises phi:  B phi_n = sqrt(n+1) phi_{n+1}
//   Adag = Tf^{-1} S^* Tf      raises psi:  Adag psi_n = sqrt(n+1) psi_{n+1}
//   Bdag = Tf^{-1} S Tf        lowers psi:  Bdag psi_n = sqrt(n) psi_{n-1}
//   N    = Tf (S^* S) Tf^{-1}  number:      N phi_n = n phi_n
//   Ndag = Tf^{-1} (S^* S) Tf  dual number: Ndag psi_n = n psi_n
// Adag/Bdag/Ndag are the honest adjoints of A/B/N; B A = N and A B - B A
// deviates from the identity only on the top basis direction, which the
// truncation cuts.
struct LadderSet {
  ComplexMatrix a;      // lowering on phi
  ComplexMatrix b;      // raising on phi
  ComplexMatrix a_dag;  // raising on psi (= A^*)
  ComplexMatrix b_dag;  // lowering on psi (= B^*)
  ComplexMatrix n;      // number operator on phi
  ComplexMatrix n_dag;  // number operator on psi (= N^*)
  ComplexMatrix a_std;  // the standard ladder the set was conjugated from
  CanonicalForm cf;     // the canonical data everything was built from

  Index dim() const { return a.rows(); }
};

// Conditioning cap for ladder constructions; the similarity transform
// squares the error amplification, so the cap is much tighter than the
// canonical one.
inline constexpr double kLadderKappaCap = 1e7;

// Build the ladder set from a canonical form. Requires dim >= 2
// (DimensionTooSmall) and kappa(Tf) <= kLadderKappaCap
// (ConditioningExceeded). Adjoint pairings (Adag = A^*, Bdag = B^*,
// Ndag = N^*) are verified to rounding; violations are NumericalFailure.
LadderSet build_ladder_set(const CanonicalForm& cf);

// Relative residuals of the ladder actions on the pair's actual columns.
// Each entry is max_n ||Op x_n - expected|| / ||x_n|| over the applicable
// range of n.
struct LadderActionResiduals {
  double lowering_phi = 0.0;    // A phi_n vs sqrt(n) phi_{n-1}, n >= 1
  double raising_phi = 0.0;     // B phi_n vs sqrt(n+1) phi_{n+1}, n <= d-2
  double raising_psi = 0.0;     // Adag psi_n vs sqrt(n+1) psi_{n+1}, n <= d-2
  double lowering_psi = 0.0;    // Bdag psi_n vs sqrt(n) psi_{n-1}, n >= 1
  double annihilate_phi0 = 0.0; // ||A phi_0|| / ||phi_0||
  double annihilate_psi0 = 0.0; // ||Bdag psi_0|| / ||psi_0||
  // Truncation edges: the raising chain is cut at the top index, so these
  // are exactly zero in exact arithmetic (not approximately small).
  double edge_raising_phi = 0.0; // ||B phi_{d-1}|| / ||phi_{d-1}||
  double edge_raising_psi = 0.0; // ||Adag psi_{d-1}|| / ||psi_{d-1}||

  double max() const; // over all eight fields
};

// Evaluate the ladder actions against the pair the canonical form came from
// (DimensionMismatch if shapes differ).
LadderActionResiduals verify_ladder_action(const TruncatedPair& pair,
                                           const LadderSet& ladder);

// Commutator structure at truncation: C = A B - B A equals the identity on
// phi_0 .. phi_{d-2} and fails on phi_{d-1} alone, by exactly the factor d
// (the cut raising step). Same for the adjoints on psi.
struct CommutatorCheck {
  double lower_block_residual = 0.0; // max over n <= d-2, both families
  double edge_norm_phi = 0.0;        // ||(C - I) phi_{d-1}|| / ||phi_{d-1}||, expect d
  double edge_norm_psi = 0.0;        // dual edge, expect d
};

CommutatorCheck verify_commutators(const TruncatedPair& pair,
                                   const LadderSet& ladder);

// Number-operator diagnostics: residuals of N phi_n = n phi_n and
// Ndag psi_n = n psi_n on the pair's columns, the worst deviation of the
// eigenvalue multiset of N from {0, 1, ..., d-1}, and the B A = N product
// identity.
struct NumberOperatorCheck {
  double max_phi_residual = 0.0;      // ||N phi_n - n phi_n|| / ||phi_n||
  double max_psi_residual = 0.0;      // ||Ndag psi_n - n psi_n|| / ||psi_n||
  double max_eigenvalue_deviation = 0.0; // |lambda_k - k| after sorting
  double ba_equals_n = 0.0;           // ||B A - N||_F / ||N||_F
};

NumberOperatorCheck verify_number_operators(const TruncatedPair& pair,
                                            const LadderSet& ladder);

// Rebuild the whole phi family from the vacuum vector by iterating the
// raising operator, phi_{n+1} = B phi_n / sqrt(n+1), and the psi family with
// Adag; returns the worst relative deviation from the pair's actual columns.
struct VacuumReconstruction {
  double max_phi_deviation = 0.0;
  double max_psi_deviation = 0.0;
};

VacuumReconstruction build_from_vacuum(const TruncatedPair& pair,
                                       const LadderSet& ladder);

} // namespace biortho
