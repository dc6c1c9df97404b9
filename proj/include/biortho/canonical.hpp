#pragma once

#include <cstdint>
#include <span>

#include "biortho/pair.hpp"
#include "biortho/types.hpp"

namespace biortho {

// Canonical form of a regular pair: the unique orthonormal basis F (columns
// f_k) and Hermitian positive operator Tf such that
//
//   phi_k = Tf f_k,   psi_k = Tf^{-1} f_k,
//
// i.e. Phi = Tf * F and Psi = Tf^{-1} * F. Tf is the Hermitian factor of the
// polar decomposition of the transition operator's adjoint; its spectrum
// equals the singular values of Phi and does not depend on which orthonormal
// basis the transition operator was built from.
struct CanonicalForm {
  ComplexMatrix f;      // orthonormal basis, columns f_k
  ComplexMatrix tf;     // Hermitian, positive definite
  ComplexMatrix tf_inv; // inverse built from spectral reciprocals
  RealVector spectrum;  // eigenvalues of tf, ascending

  Index dim() const { return tf.rows(); }
  double kappa() const { return spectrum(spectrum.size() - 1) / spectrum(0); }
};

// Condition-number cap above which canonical operations refuse to proceed;
// beyond this, Tf^{-1} and everything downstream is numerically meaningless
// in double precision.
inline constexpr double kCanonicalKappaCap = 1e12;

// Compute the canonical form through the transition operator taken in basis
// `onb` (defaulted to the standard basis). Requires a Regular pair
// (NotRegular / NotBiorthogonal), a unitary basis (NotUnitary), kappa(Tf) <=
// kCanonicalKappaCap (ConditioningExceeded). All invariants (F unitary,
// Phi = Tf F, Psi = Tf^{-1} F, Tf Tf^{-1} = I) are re-verified before
// returning; violations are NumericalFailure.
CanonicalForm canonical_form(const TruncatedPair& pair);
CanonicalForm canonical_form(const TruncatedPair& pair,
                             const ComplexMatrix& onb);

// Recompute the canonical form across random orthonormal bases drawn from
// the given seeds (at least two; BadParameter otherwise) and return the
// largest pairwise relative deviation ||Tf_i - Tf_j||_F / ||Tf_0||_F. The
// canonical operator is basis-independent, so this should sit at rounding
// level.
double verify_onb_invariance(const TruncatedPair& pair,
                             std::span<const std::uint64_t> seeds);

// Relative residual of the change-of-basis factorization
// T_e = T_g * (G E^*) for two orthonormal bases E and G:
// returns ||T_e - T_g U|| _F / ||T_e||_F with U = G E^*.
double transition_factorization(const TruncatedPair& pair,
                                const ComplexMatrix& onb_e,
                                const ComplexMatrix& onb_g);

} // namespace biortho
