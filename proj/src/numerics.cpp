#include "biortho/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "biortho/errors.hpp"
#include "biortho/rng.hpp"

namespace biortho {

namespace {

void require_square(const ComplexMatrix& m, const char* op) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << op << ": expected a nonempty square matrix, got " << m.rows()
        << "x" << m.cols();
    throw DimensionMismatch(msg.str());
  }
}

} // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m, double hermiticity_tol) {
  require_square(m, "hermitian_eig");
  if (hermiticity_tol < 0.0) {
    hermiticity_tol = 1e-10 * std::max(max_abs(m), 1e-300);
  }
  const double defect = hermitian_defect(m);
  if (defect > hermiticity_tol) {
    std::ostringstream msg;
    msg << "hermitian_eig: Hermiticity defect " << defect
        << " exceeds tolerance " << hermiticity_tol;
    throw NotHermitian(msg.str());
  }

  const ComplexMatrix sym = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("hermitian_eig: backend did not converge");
  }

  HermitianEig result;
  result.eigenvalues = solver.eigenvalues();
  result.eigenvectors = solver.eigenvectors();

  const Index d = m.rows();
  const ComplexMatrix recon = result.eigenvectors *
                              result.eigenvalues.asDiagonal() *
                              result.eigenvectors.adjoint();
  const double scale = std::max(frobenius(sym), 1e-300);
  if (frobenius(recon - sym) > 1e-12 * static_cast<double>(d) * scale) {
    throw NumericalFailure("hermitian_eig: reconstruction residual too large");
  }
  return result;
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m, double hermiticity_tol) {
  HermitianEig eig = hermitian_eig(m, hermiticity_tol);
  const double norm2 = std::max(std::abs(eig.eigenvalues(0)),
                                std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
  const double floor = -1e-12 * norm2;
  RealVector clamped = eig.eigenvalues;
  for (Index i = 0; i < clamped.size(); ++i) {
    if (clamped(i) < floor) {
      std::ostringstream msg;
      msg << "sqrtm_psd: eigenvalue " << clamped(i)
          << " is negative beyond the rounding floor " << floor;
      throw NotPSD(msg.str());
    }
    clamped(i) = std::max(clamped(i), 0.0);
  }
  RealVector roots = clamped.cwiseSqrt();
  ComplexMatrix r = eig.eigenvectors * roots.asDiagonal() *
                    eig.eigenvectors.adjoint();
  // Symmetrize so the result is Hermitian to the last bit, not just nearly.
  return 0.5 * (r + r.adjoint().eval());
}

Svd svd(const ComplexMatrix& m) {
  if (m.size() == 0) {
    throw DimensionMismatch("svd: empty matrix");
  }
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Svd result;
  result.u = solver.matrixU();
  result.singular_values = solver.singularValues();
  result.v = solver.matrixV();

  const Index k = std::min(m.rows(), m.cols());
  const ComplexMatrix recon = result.u.leftCols(k) *
                              result.singular_values.head(k).asDiagonal() *
                              result.v.leftCols(k).adjoint();
  const double scale = std::max(frobenius(m), 1e-300);
  const double dim = static_cast<double>(std::max(m.rows(), m.cols()));
  if (frobenius(recon - m) > 1e-12 * dim * scale) {
    throw NumericalFailure("svd: reconstruction residual too large");
  }
  return result;
}

PolarDecomposition polar_left(const ComplexMatrix& m, double singular_tol) {
  require_square(m, "polar_left");
  const Index d = m.rows();

  // M = U Sigma V^* gives the left polar split M = (U V^*)(V Sigma V^*).
  // Going through the SVD rather than the eigensystem of M^* M keeps the
  // small singular values at full relative accuracy: squaring into the gram
  // matrix turns the backend's absolute eigenvalue error (eps * sigma_max^2)
  // into a relative error of eps * kappa^2 on the smallest one, which is
  // already fatal at kappa ~ 1e7.
  const Svd dec = svd(m);
  const double sigma_max = dec.singular_values(0);
  const double sigma_min = dec.singular_values(d - 1);
  if (sigma_max <= 0.0 || sigma_min <= singular_tol * sigma_max) {
    std::ostringstream msg;
    msg << "polar_left: input is singular to working precision (sigma_min="
        << sigma_min << ", sigma_max=" << sigma_max << ")";
    throw SingularInput(msg.str());
  }

  PolarDecomposition result;
  // Reverse into ascending order to match the Hermitian-eigensystem
  // convention used everywhere else.
  result.h_eigenvalues.resize(d);
  result.h_eigenvectors.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    result.h_eigenvalues(i) = dec.singular_values(d - 1 - i);
    result.h_eigenvectors.col(i) = dec.v.col(d - 1 - i);
  }
  ComplexMatrix h = result.h_eigenvectors * result.h_eigenvalues.asDiagonal() *
                    result.h_eigenvectors.adjoint();
  result.h = 0.5 * (h + h.adjoint().eval());
  result.u = dec.u * dec.v.adjoint();

  // U V^* is unitary to rounding and V Sigma V^* reassembles exactly the
  // factors the SVD produced, so the residual is conditioning-independent
  // and a flat guard is the strong form.
  const double scale = std::max(frobenius(m), 1e-300);
  if (frobenius(result.u * result.h - m) >
      1e-11 * static_cast<double>(d) * scale) {
    throw NumericalFailure("polar_left: U*H reconstruction residual too large");
  }
  return result;
}

GeneralEig eigenvalues_general(const ComplexMatrix& m) {
  require_square(m, "eigenvalues_general");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalues_general: backend did not converge");
  }
  const Index d = m.rows();
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  const ComplexVector& w = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (w(a).real() != w(b).real()) return w(a).real() < w(b).real();
    return w(a).imag() < w(b).imag();
  });

  GeneralEig result;
  result.eigenvalues.resize(d);
  result.eigenvectors.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    result.eigenvalues(i) = w(order[static_cast<std::size_t>(i)]);
    result.eigenvectors.col(i) =
        solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  }
  return result;
}

ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) {
    throw BadParameter("random_unitary: dimension must be >= 1");
  }
  Rng rng(mix_seed(seed, 0x756e697461727955ULL));
  const ComplexMatrix g = rng.gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: fold the phases of R's diagonal into Q so the result does
  // not depend on sign conventions inside the QR kernel.
  for (Index j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  if (identity_defect(q.adjoint() * q) > 1e-12 * static_cast<double>(dim)) {
    throw NumericalFailure("random_unitary: QR produced a non-unitary Q");
  }
  return q;
}

double condition_number(const ComplexMatrix& m) {
  const Svd decomposition = svd(m);
  const double smax = decomposition.singular_values(0);
  const double smin =
      decomposition.singular_values(decomposition.singular_values.size() - 1);
  if (smin <= 0.0) {
    throw SingularInput("condition_number: matrix is singular");
  }
  return smax / smin;
}

ComplexMatrix spectral_apply(const RealVector& eigenvalues,
                             const ComplexMatrix& eigenvectors,
                             double (*f)(double)) {
  RealVector mapped(eigenvalues.size());
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    mapped(i) = f(eigenvalues(i));
  }
  ComplexMatrix r = eigenvectors * mapped.asDiagonal() * eigenvectors.adjoint();
  return 0.5 * (r + r.adjoint().eval());
}

} // namespace biortho
