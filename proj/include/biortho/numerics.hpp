#pragma once

#include <cstdint>

#include "biortho/types.hpp"

namespace biortho {

struct HermitianEig {
  RealVector eigenvalues;    // ascending
  ComplexMatrix eigenvectors; // columns, unitary; M = V diag(w) V^*
};

struct Svd {
  ComplexMatrix u;            // left singular vectors, columns
  RealVector singular_values; // descending, >= 0
  ComplexMatrix v;            // right singular vectors; M = U S V^*
};

struct PolarDecomposition {
  ComplexMatrix u; // unitary factor, M = u * h
  ComplexMatrix h; // Hermitian PSD factor, h = (M^* M)^{1/2}
  // Spectral factorization of h, kept because callers that invert h should
  // do so through these reciprocals rather than a fresh solve.
  RealVector h_eigenvalues;    // ascending, = singular values of M
  ComplexMatrix h_eigenvectors;
};

// Eigendecomposition of a Hermitian matrix. The input must be Hermitian
// within `hermiticity_tol` (entrywise; pass a negative value for the default
// 1e-10 * max|M|); the computation runs on the symmetrized (M + M^*)/2.
// Throws NotHermitian on defect, NumericalFailure if the backend fails or the
// reconstruction residual is out of line.
HermitianEig hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = -1.0);

// Hermitian PSD square root via eigendecomposition. Eigenvalues below
// -1e-12 * ||M||_2 throw NotPSD; tiny negatives inside that floor are
// clamped to zero.
ComplexMatrix sqrtm_psd(const ComplexMatrix& m, double hermiticity_tol = -1.0);

// Singular value decomposition with full unitary factors.
Svd svd(const ComplexMatrix& m);

// Left polar decomposition M = U H of a square invertible matrix, built
// through the SVD (M = W S V^* gives U = W V^*, H = V S V^*) so that small
// singular values keep full relative accuracy. Throws SingularInput when
// sigma_min <= singular_tol * sigma_max (default 1e-12), NumericalFailure if
// the U H reconstruction drifts beyond 1e-11 * d * ||M||_F.
PolarDecomposition polar_left(const ComplexMatrix& m, double singular_tol = 1e-12);

struct GeneralEig {
  ComplexVector eigenvalues; // sorted by real part, then imaginary part
  ComplexMatrix eigenvectors;
};

// Eigendecomposition of an arbitrary square complex matrix (used for number
// operators, which are similar to a diagonal but not normal).
GeneralEig eigenvalues_general(const ComplexMatrix& m);

// Haar-ish random unitary: QR of a complex Gaussian matrix with the R
// diagonal's phases absorbed into Q. Deterministic in (dim, seed).
ComplexMatrix random_unitary(Index dim, std::uint64_t seed);

// sigma_max / sigma_min from an SVD of m; throws SingularInput if
// sigma_min == 0.
double condition_number(const ComplexMatrix& m);

// Apply f(H) = V f(diag) V^* to a spectral factorization.
ComplexMatrix spectral_apply(const RealVector& eigenvalues,
                             const ComplexMatrix& eigenvectors,
                             double (*f)(double));

} // namespace biortho
