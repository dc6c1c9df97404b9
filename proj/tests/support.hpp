#pragma once

// Shared fixtures and independent oracles for the test suite. Everything
// here is deliberately computed by a different route than the library code
// under test (closed forms, quadratic formulas, LU solves), so agreement is
// evidence rather than tautology.

#include <Eigen/LU>
#include <cmath>
#include <utility>
#include <vector>

#include "biortho/ladder.hpp"
#include "biortho/pair.hpp"
#include "biortho/types.hpp"

namespace testsupport {

using biortho::Complex;
using biortho::ComplexMatrix;
using biortho::ComplexVector;
using biortho::Index;
using biortho::RealVector;
using biortho::TruncatedPair;

// Frozen closed-form constants (golden ratio arithmetic).
inline constexpr double kSqrt5 = 2.23606797749979;
inline constexpr double kGoldenRatio = 1.618033988749895;        // (1+sqrt5)/2
inline constexpr double kInvGoldenRatio = 0.6180339887498949;    // 1/golden
inline constexpr double kGoldenSqLow = 0.3819660112501051;       // (3-sqrt5)/2
inline constexpr double kGoldenSqHigh = 2.618033988749895;       // (3+sqrt5)/2

// Eigenvalues of the real symmetric 2x2 [[a, b], [b, c]] by the quadratic
// formula, ascending.
inline std::pair<double, double> sym2x2_eigenvalues(double a, double b,
                                                    double c) {
  const double mean = 0.5 * (a + c);
  const double radius = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return {mean - radius, mean + radius};
}

// The upper-triangular pair Phi = [[1,1],[0,1]], Psi = [[1,0],[-1,1]]
// (Psi = (Phi^{-1})^*, exact integers). Phi Phi^* = [[2,1],[1,1]] has the
// golden-ratio-squared spectrum.
inline TruncatedPair golden_pair() {
  ComplexMatrix phi(2, 2);
  phi << 1.0, 1.0, 0.0, 1.0;
  ComplexMatrix psi(2, 2);
  psi << 1.0, 0.0, -1.0, 1.0;
  return TruncatedPair(phi, psi, "golden");
}

// Diagonal pair phi_k = t_k e_k, psi_k = e_k / t_k.
inline TruncatedPair diag_pair(const std::vector<double>& t) {
  const Index d = static_cast<Index>(t.size());
  ComplexMatrix phi = ComplexMatrix::Zero(d, d);
  ComplexMatrix psi = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    phi(k, k) = t[static_cast<std::size_t>(k)];
    psi(k, k) = 1.0 / t[static_cast<std::size_t>(k)];
  }
  return TruncatedPair(phi, psi, "diag");
}

/// Ladder operators straight from the transition operator in basis E:
// lowering = T_e (E a_std E^*) T_e^{-1}, with the inverse taken by LU solve.
// No canonical form involved, so this is an independent route for the
// basis-independence property.
inline ComplexMatrix lowering_via_transition(const TruncatedPair& pair,
                                             const ComplexMatrix& onb) {
  const ComplexMatrix t_e = pair.phi() * onb.adjoint();
  const ComplexMatrix shift =
      onb * biortho::standard_ladder(pair.dim()) * onb.adjoint();
  Eigen::PartialPivLU<ComplexMatrix> lu(t_e);
  return t_e * shift *
         lu.solve(ComplexMatrix::Identity(pair.dim(), pair.dim()));
}

// Determinant via LU (independent of the SVD under test).
inline Complex determinant(const ComplexMatrix& m) {
  return Eigen::PartialPivLU<ComplexMatrix>(m).determinant();
}

} // namespace testsupport
