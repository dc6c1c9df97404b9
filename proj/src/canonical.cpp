#include "biortho/canonical.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"

namespace biortho {

namespace {

// One Newton-Schulz step toward the nearest unitary. F = Tf^{-1} Phi is
// unitary up to the rounding of the two factors (defect ~ eps * kappa); a
// single quadratically convergent step takes that defect to the working
// precision floor without moving any column more than the defect itself.
ComplexMatrix reunitarize(ComplexMatrix f, double target_defect) {
  for (int iter = 0; iter < 4; ++iter) {
    const double defect = identity_defect(f.adjoint() * f);
    if (defect <= target_defect) break;
    f = 1.5 * f - 0.5 * (f * (f.adjoint() * f));
  }
  return f;
}

} // namespace

CanonicalForm canonical_form(const TruncatedPair& pair,
                             const ComplexMatrix& onb) {
  const Index d = pair.dim();
  // Validates regularity, biorthogonality and the basis; T = Phi E^*.
  const TransitionOperators ops = build_transition(pair, onb);

  // The conditioning gate comes first, on the singular values of Phi (which
  // are exactly the spectrum of Tf), so a too-ill-conditioned pair is
  // refused crisply instead of surfacing as a downstream singularity.
  {
    const Svd phi_svd = svd(pair.phi());
    const double kappa_phi = phi_svd.singular_values(0) /
                             phi_svd.singular_values(d - 1);
    if (kappa_phi > kCanonicalKappaCap) {
      std::ostringstream msg;
      msg << "canonical_form: condition number " << kappa_phi
          << " exceeds the cap " << kCanonicalKappaCap;
      throw ConditioningExceeded(msg.str());
    }
  }

  // T^* = U H with H Hermitian positive; H is the canonical operator and its
  // spectrum is exactly the singular value set of Phi.
  const PolarDecomposition polar = polar_left(ops.t.adjoint());

  const double sigma_min = polar.h_eigenvalues(0);
  const double sigma_max = polar.h_eigenvalues(d - 1);
  const double kappa = sigma_max / sigma_min;

  CanonicalForm cf;
  cf.tf = polar.h;
  cf.spectrum = polar.h_eigenvalues;
  cf.tf_inv = polar.h_eigenvectors *
              polar.h_eigenvalues.cwiseInverse().asDiagonal() *
              polar.h_eigenvectors.adjoint();
  cf.tf_inv = 0.5 * (cf.tf_inv + cf.tf_inv.adjoint().eval());

  // Pin the basis directly from the defining relation phi_k = Tf f_k rather
  // than from the polar unitary, so near-degenerate spectral directions
  // cannot leak basis ambiguity. The Newton-Schulz polish removes the
  // kappa-proportional rounding in Tf^{-1} Phi; columns move by at most the
  // unitarity defect, which is orders below the reconstruction tolerances.
  cf.f = reunitarize(cf.tf_inv * pair.phi(),
                     0.25e-11 * static_cast<double>(d));

  const double dd = static_cast<double>(d);
  const double unitary_defect = identity_defect(cf.f.adjoint() * cf.f);
  if (unitary_defect > 1e-11 * dd) {
    std::ostringstream msg;
    msg << "canonical_form: basis unitarity defect " << unitary_defect;
    throw NumericalFailure(msg.str());
  }
  const double phi_residual = frobenius(pair.phi() - cf.tf * cf.f) /
                              std::max(frobenius(pair.phi()), 1e-300);
  if (phi_residual > 1e-10 * dd * kappa) {
    throw NumericalFailure("canonical_form: Tf * F does not reproduce phi");
  }
  const double psi_residual = frobenius(pair.psi() - cf.tf_inv * cf.f) /
                              std::max(frobenius(pair.psi()), 1e-300);
  if (psi_residual > 1e-10 * dd * kappa) {
    throw NumericalFailure("canonical_form: Tf^{-1} * F does not reproduce psi");
  }
  if (identity_defect(cf.tf * cf.tf_inv) > 1e-10 * dd * kappa) {
    throw NumericalFailure("canonical_form: Tf * Tf^{-1} deviates from identity");
  }
  return cf;
}

CanonicalForm canonical_form(const TruncatedPair& pair) {
  return canonical_form(pair,
                        ComplexMatrix::Identity(pair.dim(), pair.dim()));
}

double verify_onb_invariance(const TruncatedPair& pair,
                             std::span<const std::uint64_t> seeds) {
  if (seeds.size() < 2) {
    throw BadParameter("verify_onb_invariance: need at least two basis seeds");
  }
  std::vector<CanonicalForm> forms;
  forms.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    forms.push_back(canonical_form(pair, random_unitary(pair.dim(), seed)));
  }
  const double scale = std::max(frobenius(forms.front().tf), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      worst = std::max(worst, frobenius(forms[i].tf - forms[j].tf) / scale);
    }
  }
  return worst;
}

double transition_factorization(const TruncatedPair& pair,
                                const ComplexMatrix& onb_e,
                                const ComplexMatrix& onb_g) {
  const TransitionOperators ops_e = build_transition(pair, onb_e);
  const TransitionOperators ops_g = build_transition(pair, onb_g);
  const ComplexMatrix u = onb_g * onb_e.adjoint();
  return frobenius(ops_e.t - ops_g.t * u) /
         std::max(frobenius(ops_e.t), 1e-300);
}

} // namespace biortho
