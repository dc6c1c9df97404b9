#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "biortho/canonical.hpp"
#include "biortho/families.hpp"
#include "biortho/pair.hpp"
#include "biortho/types.hpp"

namespace biortho {

// Frame operators of a regular pair: S_phi = Phi Phi^*, S_psi = Psi Psi^*.
// At truncation both are Hermitian positive definite, mutually inverse, and
// their extreme eigenvalues are the squared extreme singular values of Phi.
struct FrameData {
  ComplexMatrix s_phi;
  ComplexMatrix s_psi;
  double sigma_max = 0.0; // largest singular value of Phi
  double sigma_min = 0.0; // smallest singular value of Phi
  double r_phi = 0.0;     // best Bessel bound of phi = sigma_max^2
  double r_psi = 0.0;     // best Bessel bound of psi = 1 / sigma_min^2
};

// Compute the frame operators and bounds. Requires a Regular pair.
FrameData frame_operators(const TruncatedPair& pair);

// Relative residuals of the frame-operator identities, evaluated against the
// canonical factorization (and, optionally, a non-standard orthonormal basis
// for the transition operator; defaults to the standard basis):
//   S_phi = T T^*, S_psi = (T^{-1})^* T^{-1}, S_phi S_psi = I = S_psi S_phi,
//   S_phi psi_k = phi_k, S_psi phi_k = psi_k.
struct FrameIdentityResiduals {
  double s_phi_vs_transition = 0.0;
  double s_psi_vs_transition = 0.0;
  double s_phi_s_psi = 0.0;
  double s_psi_s_phi = 0.0;
  double s_phi_maps_psi_to_phi = 0.0;
  double s_psi_maps_phi_to_psi = 0.0;

  double max() const;
};

FrameIdentityResiduals verify_frame_identities(const TruncatedPair& pair,
                                               const CanonicalForm& cf);
FrameIdentityResiduals verify_frame_identities(const TruncatedPair& pair,
                                               const CanonicalForm& cf,
                                               const ComplexMatrix& onb);

// Empirical check that the Bessel bounds actually bound: draws `probes`
// random unit vectors and returns the largest observed coefficient sums
// sum_k |<phi_k, x>|^2 and sum_k |<psi_k, x>|^2. Both must stay below
// r_phi resp. r_psi (up to rounding); equality is approached when a probe
// aligns with the extreme singular direction.
struct BesselSample {
  double max_phi_sum = 0.0;
  double max_psi_sum = 0.0;
};

BesselSample bessel_check(const TruncatedPair& pair, int probes,
                          std::uint64_t seed);

// How an extreme singular value behaves along a dimension sweep, judged on
// the last two consecutive ratios against 1 +/- growth_tol.
enum class TraceStatus {
  Plateau,   // settled: neither ratio above 1 + tol, not decaying
  Grows,     // both ratios above 1 + tol
  Decays,    // both ratios below 1 - tol
  Irregular, // non-monotone tail; no verdict possible from this window
};

enum class RieszVerdict {
  Riesz,               // both families Bessel and bounded below
  SemiRieszPhiBessel,  // phi Bessel, psi not
  SemiRieszPsiBessel,  // psi Bessel, phi not
  NonRiesz,            // neither family Bessel
  Inconclusive,        // an irregular trace: refuse to extrapolate
};

std::string to_string(TraceStatus status);
std::string to_string(RieszVerdict verdict);

struct Classification {
  RieszVerdict verdict = RieszVerdict::Inconclusive;
  std::vector<Index> dims;
  std::vector<double> sigma_max_trace;
  std::vector<double> sigma_min_trace;
  double growth_tol = 0.05;
  TraceStatus sigma_max_status = TraceStatus::Irregular;
  TraceStatus sigma_min_status = TraceStatus::Irregular;
};

// Sweep the family across the given dimensions (ascending, at least three;
// BadParameter otherwise) and classify the pair's Riesz character from the
// growth of sigma_max and decay of sigma_min:
//   - phi is Bessel iff sigma_max does not grow,
//   - psi is Bessel iff sigma_min does not decay (its bound is 1/sigma_min^2).
// growth_tol must lie in (0, 1). Families that fail regularity at any swept
// dimension throw FamilyNotRegular. Dimensions are evaluated concurrently;
// results are merged in dimension order, so the output is deterministic.
Classification classify_sweep(const PairFamily& family,
                              std::span<const Index> dims,
                              double growth_tol = 0.05);

} // namespace biortho
