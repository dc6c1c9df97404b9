#include "biortho/pair.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"

namespace biortho {

namespace {

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_nonzero_columns(const ComplexMatrix& m, const char* name) {
  for (Index j = 0; j < m.cols(); ++j) {
    if (m.col(j).norm() == 0.0) {
      std::ostringstream msg;
      msg << "TruncatedPair: " << name << " column " << j << " is zero";
      throw ValidationError(msg.str());
    }
  }
}

// Rotate the global phase so the largest-magnitude entry is real positive;
// makes witness vectors reproducible across runs and platforms.
ComplexVector canonical_phase(ComplexVector v) {
  Index arg_max = 0;
  double best = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > best) {
      best = mag;
      arg_max = i;
    }
  }
  if (best > 0.0) {
    const Complex pivot = v(arg_max);
    v *= std::conj(pivot) / std::abs(pivot);
  }
  return v;
}

Index numerical_rank(const RealVector& singular_values) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = 1e-10 * singular_values(0);
  Index rank = 0;
  for (Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > cutoff) ++rank;
  }
  return rank;
}

} // namespace

TruncatedPair::TruncatedPair(ComplexMatrix phi, ComplexMatrix psi,
                             std::string label)
    : phi_(std::move(phi)), psi_(std::move(psi)), label_(std::move(label)) {
  if (phi_.rows() != psi_.rows() || phi_.cols() != psi_.cols()) {
    std::ostringstream msg;
    msg << "TruncatedPair: phi is " << phi_.rows() << "x" << phi_.cols()
        << " but psi is " << psi_.rows() << "x" << psi_.cols();
    throw DimensionMismatch(msg.str());
  }
  if (phi_.rows() == 0 || phi_.cols() == 0) {
    throw DimensionMismatch("TruncatedPair: empty pair");
  }
  if (phi_.cols() > phi_.rows()) {
    std::ostringstream msg;
    msg << "TruncatedPair: " << phi_.cols() << " vectors cannot be "
        << "biorthogonal in dimension " << phi_.rows();
    throw DimensionMismatch(msg.str());
  }
  if (!all_finite(phi_) || !all_finite(psi_)) {
    throw ValidationError("TruncatedPair: entries must be finite");
  }
  require_nonzero_columns(phi_, "phi");
  require_nonzero_columns(psi_, "psi");
}

TruncatedPair TruncatedPair::swapped() const {
  return TruncatedPair(psi_, phi_, label_.empty() ? "" : label_ + " (swapped)");
}

double biorthogonality_residual(const TruncatedPair& pair) {
  return identity_defect(pair.psi().adjoint() * pair.phi());
}

RegularityVerdict regularity_check(const TruncatedPair& pair,
                                   double residual_tol) {
  if (residual_tol < 0.0) {
    residual_tol = 1e-10 * static_cast<double>(pair.dim());
  }
  const double residual = biorthogonality_residual(pair);
  if (residual > residual_tol) {
    std::ostringstream msg;
    msg << "regularity_check: biorthogonality residual " << residual
        << " exceeds tolerance " << residual_tol;
    throw NotBiorthogonal(msg.str());
  }

  const Svd phi_svd = svd(pair.phi());
  const Svd psi_svd = svd(pair.psi());

  RegularityVerdict verdict;
  verdict.rank_phi = numerical_rank(phi_svd.singular_values);
  verdict.rank_psi = numerical_rank(psi_svd.singular_values);

  if (pair.count() == pair.dim()) {
    // Square biorthogonal systems are automatically invertible: Psi^* Phi = I
    // forces full rank on both factors.
    verdict.status = RegularityStatus::Regular;
    return verdict;
  }

  verdict.status = RegularityStatus::Indeterminate;
  // The trailing left singular vectors span the orthogonal complement of the
  // column span; the very last one is a certified deficiency witness.
  verdict.phi_orthogonal_witness =
      canonical_phase(phi_svd.u.col(pair.dim() - 1));
  verdict.psi_orthogonal_witness =
      canonical_phase(psi_svd.u.col(pair.dim() - 1));
  return verdict;
}

TransitionOperators build_transition(const TruncatedPair& pair,
                                     const ComplexMatrix& onb) {
  const Index d = pair.dim();
  if (pair.count() != d) {
    std::ostringstream msg;
    msg << "build_transition: pair has " << pair.count() << " vectors in "
        << "dimension " << d << "; transition operators need a regular pair";
    throw NotRegular(msg.str());
  }
  if (onb.rows() != d || onb.cols() != d) {
    throw DimensionMismatch("build_transition: basis shape does not match pair");
  }
  const double unitary_defect = identity_defect(onb.adjoint() * onb);
  if (unitary_defect > 1e-12 * static_cast<double>(d)) {
    std::ostringstream msg;
    msg << "build_transition: basis is not unitary (defect " << unitary_defect
        << ")";
    throw NotUnitary(msg.str());
  }

  TransitionOperators ops;
  ops.onb = onb;
  ops.t = pair.phi() * onb.adjoint();
  ops.k = pair.psi() * onb.adjoint();

  // K^* T = E Psi^* Phi E^*, so a defect here is exactly a biorthogonality
  // defect seen through a unitary change of basis.
  const double kappa = condition_number(pair.phi());
  const double defect = identity_defect(ops.k.adjoint() * ops.t);
  if (defect > 1e-10 * static_cast<double>(d) * kappa) {
    std::ostringstream msg;
    msg << "build_transition: K^* T deviates from the identity by " << defect
        << "; the pair is not biorthogonal to working tolerance";
    throw NotBiorthogonal(msg.str());
  }
  return ops;
}

TransitionOperators build_transition(const TruncatedPair& pair) {
  return build_transition(
      pair, ComplexMatrix::Identity(pair.dim(), pair.dim()));
}

} // namespace biortho
