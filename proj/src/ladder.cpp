#include "biortho/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"

namespace biortho {

ComplexMatrix standard_ladder(Index d) {
  if (d < 2) {
    throw DimensionTooSmall("standard_ladder: need dimension >= 2");
  }
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k + 1 < d; ++k) {
    a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  }
  return a;
}

LadderSet build_ladder_set(const CanonicalForm& cf) {
  const Index d = cf.dim();
  if (d < 2) {
    throw DimensionTooSmall("build_ladder_set: need dimension >= 2");
  }
  const double kappa = cf.kappa();
  if (kappa > kLadderKappaCap) {
    std::ostringstream msg;
    msg << "build_ladder_set: condition number " << kappa
        << " exceeds the ladder cap " << kLadderKappaCap;
    throw ConditioningExceeded(msg.str());
  }

  const ComplexMatrix a_std = standard_ladder(d);
  // The ladder structure lives on the canonical basis f, so conjugate the
  // standard ladder into that basis before intertwining with Tf. (Using the
  // standard basis here instead would tie the operators to an arbitrary
  // coordinate choice and break the phi_n actions for any non-diagonal pair.)
  const ComplexMatrix shift = cf.f * a_std * cf.f.adjoint();
  const ComplexMatrix number = cf.f * (a_std.adjoint() * a_std).eval() *
                               cf.f.adjoint();

  LadderSet ladder;
  ladder.cf = cf;
  ladder.a_std = a_std;
  ladder.a = cf.tf * shift * cf.tf_inv;
  ladder.b = cf.tf * shift.adjoint() * cf.tf_inv;
  ladder.a_dag = cf.tf_inv * shift.adjoint() * cf.tf;
  ladder.b_dag = cf.tf_inv * shift * cf.tf;
  ladder.n = cf.tf * number * cf.tf_inv;
  ladder.n_dag = cf.tf_inv * number * cf.tf;

  // The four operators come in adjoint pairs by construction; confirm the
  // two independently assembled products actually agree to rounding.
  const double scale = std::max(frobenius(ladder.a), 1e-300) *
                       std::max(kappa, 1.0);
  if (frobenius(ladder.a_dag - ladder.a.adjoint()) > 1e-12 * scale ||
      frobenius(ladder.b_dag - ladder.b.adjoint()) > 1e-12 * scale ||
      frobenius(ladder.n_dag - ladder.n.adjoint()) >
          1e-12 * std::max(frobenius(ladder.n), 1e-300) * std::max(kappa, 1.0)) {
    throw NumericalFailure("build_ladder_set: adjoint pairing check failed");
  }
  return ladder;
}

namespace {

void require_matching(const TruncatedPair& pair, const LadderSet& ladder,
                      const char* op) {
  if (pair.count() != pair.dim()) {
    std::ostringstream msg;
    msg << op << ": ladder actions are defined for regular pairs";
    throw NotRegular(msg.str());
  }
  if (pair.dim() != ladder.dim()) {
    std::ostringstream msg;
    msg << op << ": pair dimension " << pair.dim()
        << " does not match ladder dimension " << ladder.dim();
    throw DimensionMismatch(msg.str());
  }
}

double column_residual(const ComplexVector& actual,
                       const ComplexVector& expected,
                       const ComplexVector& operand) {
  return (actual - expected).norm() / operand.norm();
}

} // namespace

double LadderActionResiduals::max() const {
  return std::max({lowering_phi, raising_phi, raising_psi, lowering_psi,
                   annihilate_phi0, annihilate_psi0, edge_raising_phi,
                   edge_raising_psi});
}

LadderActionResiduals verify_ladder_action(const TruncatedPair& pair,
                                           const LadderSet& ladder) {
  require_matching(pair, ladder, "verify_ladder_action");
  const Index d = pair.dim();
  const ComplexMatrix& phi = pair.phi();
  const ComplexMatrix& psi = pair.psi();

  LadderActionResiduals res;
  for (Index n = 0; n < d; ++n) {
    const ComplexVector phi_n = phi.col(n);
    const ComplexVector psi_n = psi.col(n);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double root_np1 = std::sqrt(static_cast<double>(n + 1));

    if (n == 0) {
      const ComplexVector zero = ComplexVector::Zero(d);
      res.annihilate_phi0 = column_residual(ladder.a * phi_n, zero, phi_n);
      res.annihilate_psi0 = column_residual(ladder.b_dag * psi_n, zero, psi_n);
    } else {
      res.lowering_phi = std::max(
          res.lowering_phi,
          column_residual(ladder.a * phi_n, root_n * phi.col(n - 1), phi_n));
      res.lowering_psi = std::max(
          res.lowering_psi,
          column_residual(ladder.b_dag * psi_n, root_n * psi.col(n - 1), psi_n));
    }

    if (n + 1 < d) {
      res.raising_phi = std::max(
          res.raising_phi,
          column_residual(ladder.b * phi_n, root_np1 * phi.col(n + 1), phi_n));
      res.raising_psi = std::max(
          res.raising_psi,
          column_residual(ladder.a_dag * psi_n, root_np1 * psi.col(n + 1),
                          psi_n));
    } else {
      // The raising chain has nowhere to go at the top of the truncation
      // window; these images are exactly zero in exact arithmetic.
      const ComplexVector zero = ComplexVector::Zero(d);
      res.edge_raising_phi = column_residual(ladder.b * phi_n, zero, phi_n);
      res.edge_raising_psi = column_residual(ladder.a_dag * psi_n, zero, psi_n);
    }
  }
  return res;
}

CommutatorCheck verify_commutators(const TruncatedPair& pair,
                                   const LadderSet& ladder) {
  require_matching(pair, ladder, "verify_commutators");
  const Index d = pair.dim();
  const ComplexMatrix c_phi = ladder.a * ladder.b - ladder.b * ladder.a;
  const ComplexMatrix c_psi =
      ladder.b_dag * ladder.a_dag - ladder.a_dag * ladder.b_dag;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);

  CommutatorCheck check;
  for (Index n = 0; n + 1 < d; ++n) {
    const ComplexVector phi_n = pair.phi().col(n);
    const ComplexVector psi_n = pair.psi().col(n);
    check.lower_block_residual = std::max(
        check.lower_block_residual,
        ((c_phi - eye) * phi_n).norm() / phi_n.norm());
    check.lower_block_residual = std::max(
        check.lower_block_residual,
        ((c_psi - eye) * psi_n).norm() / psi_n.norm());
  }
  const ComplexVector phi_top = pair.phi().col(d - 1);
  const ComplexVector psi_top = pair.psi().col(d - 1);
  // Both edges equal d exactly: the commutator defect is -d times the rank-one
  // projector onto the top canonical direction.
  check.edge_norm_phi = ((c_phi - eye) * phi_top).norm() / phi_top.norm();
  check.edge_norm_psi = ((c_psi - eye) * psi_top).norm() / psi_top.norm();
  return check;
}

NumberOperatorCheck verify_number_operators(const TruncatedPair& pair,
                                            const LadderSet& ladder) {
  require_matching(pair, ladder, "verify_number_operators");
  const Index d = pair.dim();

  NumberOperatorCheck check;
  for (Index n = 0; n < d; ++n) {
    const ComplexVector phi_n = pair.phi().col(n);
    const ComplexVector psi_n = pair.psi().col(n);
    const double level = static_cast<double>(n);
    check.max_phi_residual =
        std::max(check.max_phi_residual,
                 (ladder.n * phi_n - level * phi_n).norm() / phi_n.norm());
    check.max_psi_residual =
        std::max(check.max_psi_residual,
                 (ladder.n_dag * psi_n - level * psi_n).norm() / psi_n.norm());
  }

  // N is similar to diag(0..d-1), so its spectrum is real and integral up to
  // rounding; sort by real part and compare slot by slot.
  const GeneralEig eig = eigenvalues_general(ladder.n);
  for (Index k = 0; k < d; ++k) {
    const Complex expected(static_cast<double>(k), 0.0);
    check.max_eigenvalue_deviation =
        std::max(check.max_eigenvalue_deviation,
                 std::abs(eig.eigenvalues(k) - expected));
  }

  check.ba_equals_n = frobenius(ladder.b * ladder.a - ladder.n) /
                      std::max(frobenius(ladder.n), 1e-300);
  return check;
}

VacuumReconstruction build_from_vacuum(const TruncatedPair& pair,
                                       const LadderSet& ladder) {
  require_matching(pair, ladder, "build_from_vacuum");
  const Index d = pair.dim();

  VacuumReconstruction recon;
  ComplexVector phi_n = pair.phi().col(0);
  ComplexVector psi_n = pair.psi().col(0);
  for (Index n = 0; n + 1 < d; ++n) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(n + 1));
    phi_n = (ladder.b * phi_n) * scale;
    psi_n = (ladder.a_dag * psi_n) * scale;
    const ComplexVector phi_ref = pair.phi().col(n + 1);
    const ComplexVector psi_ref = pair.psi().col(n + 1);
    recon.max_phi_deviation = std::max(
        recon.max_phi_deviation, (phi_n - phi_ref).norm() / phi_ref.norm());
    recon.max_psi_deviation = std::max(
        recon.max_psi_deviation, (psi_n - psi_ref).norm() / psi_ref.norm());
  }
  return recon;
}

} // namespace biortho
