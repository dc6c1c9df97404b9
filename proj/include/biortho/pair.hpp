#pragma once

#include <optional>
#include <string>

#include "biortho/types.hpp"

namespace biortho {

// A finite biorthogonal pair: n vectors phi_k and n vectors psi_k in C^d,
// stored as the columns of d x n matrices, intended to satisfy
// <psi_j, phi_k> = delta_jk, i.e. Psi^* Phi = I_n.
class TruncatedPair {
public:
  // Validates shapes (equal, nonempty, n <= d), finiteness, and that no
  // column is identically zero. Throws DimensionMismatch / ValidationError.
  TruncatedPair(ComplexMatrix phi, ComplexMatrix psi, std::string label = {});

  const ComplexMatrix& phi() const { return phi_; }
  const ComplexMatrix& psi() const { return psi_; }
  const std::string& label() const { return label_; }

  Index dim() const { return phi_.rows(); }    // ambient dimension d
  Index count() const { return phi_.cols(); }  // number of vectors n

  // The dual pair (psi, phi); biorthogonality is symmetric under the swap.
  TruncatedPair swapped() const;

private:
  ComplexMatrix phi_;
  ComplexMatrix psi_;
  std::string label_;
};

// max |Psi^* Phi - I_n|, the entrywise defect of the pairing.
double biorthogonality_residual(const TruncatedPair& pair);

enum class RegularityStatus {
  Regular,       // n == d: both families are bases of C^d
  Indeterminate, // n < d: truncation cannot decide; witnesses attached
};

struct RegularityVerdict {
  RegularityStatus status = RegularityStatus::Indeterminate;
  Index rank_phi = 0;
  Index rank_psi = 0;
  // For n < d: unit vectors orthogonal to the span of each family
  // (|Phi^* w| resp. |Psi^* w| vanish to working precision). Phases are
  // canonicalized so the largest-magnitude entry is real positive.
  std::optional<ComplexVector> phi_orthogonal_witness;
  std::optional<ComplexVector> psi_orthogonal_witness;
};

// Decide regularity at this truncation. Requires the pair to actually be
// biorthogonal within `residual_tol` (negative -> 1e-10 * d, the generic
// entrywise scale) and throws NotBiorthogonal otherwise. n == d gives
// Regular; n < d gives Indeterminate plus witness vectors, because a
// truncated window cannot distinguish "not total" from "completes at larger
// d".
RegularityVerdict regularity_check(const TruncatedPair& pair,
                                   double residual_tol = -1.0);

// Transition operators of a regular pair relative to an orthonormal basis E
// (columns): T = Phi E^*, K = Psi E^*. They satisfy K^* T = I and map the
// basis onto the pair: T e_k = phi_k, K e_k = psi_k.
struct TransitionOperators {
  ComplexMatrix t; // e_k -> phi_k
  ComplexMatrix k; // e_k -> psi_k
  ComplexMatrix onb;
};

// Build the transition operators. `onb` must be unitary within 1e-12 * d
// (NotUnitary); the pair must be Regular (NotRegular). The K^* T = I
// identity is re-verified within 1e-10 * d * cond(Phi) and a violation is a
// NumericalFailure.
TransitionOperators build_transition(const TruncatedPair& pair,
                                     const ComplexMatrix& onb);

// Convenience: transition operators in the standard basis (E = I), where
// T is just Phi.
TransitionOperators build_transition(const TruncatedPair& pair);

} // namespace biortho
