#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace biortho {

using Complex = std::complex<double>;
using Index = Eigen::Index;

// Dense column-major complex matrices/vectors are the working representation
// throughout; vectors are d x 1 matrices so everything composes.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Largest entry magnitude; the scale used by entrywise tolerances.
inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double frobenius(const ComplexMatrix& m) { return m.norm(); }

// Entrywise distance from the identity, max |M - I|_ij.
inline double identity_defect(const ComplexMatrix& m) {
  return max_abs(m - ComplexMatrix::Identity(m.rows(), m.cols()));
}

// Entrywise Hermiticity defect, max |M - M^*|_ij.
inline double hermitian_defect(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint().eval());
}

} // namespace biortho
