#include "biortho/families.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/rng.hpp"

namespace biortho {

namespace {

constexpr std::uint64_t kPerturbationSalt = 0x70657274ULL;
constexpr std::uint64_t kLeftUnitarySalt = 0x6c656674ULL;
constexpr std::uint64_t kRightUnitarySalt = 0x72696768ULL;

TruncatedPair diagonal_pair(const RealVector& t, std::string label) {
  const Index d = t.size();
  ComplexMatrix phi = ComplexMatrix::Zero(d, d);
  ComplexMatrix psi = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    phi(k, k) = t(k);
    psi(k, k) = 1.0 / t(k);
  }
  return TruncatedPair(std::move(phi), std::move(psi), std::move(label));
}

std::string format_param(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

} // namespace

PairFamily PairFamily::identity() {
  PairFamily f;
  f.kind = FamilyKind::Identity;
  return f;
}

PairFamily PairFamily::diag_power(double alpha) {
  PairFamily f;
  f.kind = FamilyKind::DiagPower;
  f.alpha = alpha;
  return f;
}

PairFamily PairFamily::diag_exp(double beta) {
  PairFamily f;
  f.kind = FamilyKind::DiagExp;
  f.beta = beta;
  return f;
}

PairFamily PairFamily::diag_mixed() {
  PairFamily f;
  f.kind = FamilyKind::DiagMixed;
  return f;
}

PairFamily PairFamily::bounded_perturbation(double epsilon,
                                            std::uint64_t seed) {
  PairFamily f;
  f.kind = FamilyKind::BoundedPerturbation;
  f.epsilon = epsilon;
  f.seed = seed;
  return f;
}

PairFamily PairFamily::non_regular_shift() {
  PairFamily f;
  f.kind = FamilyKind::NonRegularShift;
  return f;
}

PairFamily PairFamily::random_regular(double kappa_target,
                                      std::uint64_t seed) {
  PairFamily f;
  f.kind = FamilyKind::RandomRegular;
  f.kappa_target = kappa_target;
  f.seed = seed;
  return f;
}

PairFamily PairFamily::from_name(const std::string& name,
                                 const std::map<std::string, double>& params) {
  PairFamily family;
  if (name == "identity") {
    family.kind = FamilyKind::Identity;
  } else if (name == "diag-power") {
    family.kind = FamilyKind::DiagPower;
  } else if (name == "diag-exp") {
    family.kind = FamilyKind::DiagExp;
  } else if (name == "diag-mixed") {
    family.kind = FamilyKind::DiagMixed;
  } else if (name == "bounded-perturbation") {
    family.kind = FamilyKind::BoundedPerturbation;
  } else if (name == "non-regular-shift") {
    family.kind = FamilyKind::NonRegularShift;
  } else if (name == "random-regular") {
    family.kind = FamilyKind::RandomRegular;
  } else {
    throw BadParameter("unknown family '" + name + "'");
  }

  for (const auto& [key, value] : params) {
    if (key == "alpha") {
      family.alpha = value;
    } else if (key == "beta") {
      family.beta = value;
    } else if (key == "epsilon") {
      family.epsilon = value;
    } else if (key == "kappa") {
      family.kappa_target = value;
    } else if (key == "seed") {
      if (value < 0.0 || value != std::floor(value)) {
        throw BadParameter("family parameter 'seed' must be a nonnegative integer");
      }
      family.seed = static_cast<std::uint64_t>(value);
    } else {
      throw BadParameter("unknown family parameter '" + key + "'");
    }
  }

  if (!std::isfinite(family.alpha) || !std::isfinite(family.beta)) {
    throw BadParameter("family exponents must be finite");
  }
  if (family.kind == FamilyKind::BoundedPerturbation &&
      (family.epsilon < 0.0 || family.epsilon >= 1.0)) {
    throw BadParameter("bounded-perturbation requires 0 <= epsilon < 1");
  }
  if (family.kind == FamilyKind::RandomRegular &&
      !(family.kappa_target >= 1.0 && std::isfinite(family.kappa_target))) {
    throw BadParameter("random-regular requires kappa >= 1");
  }
  return family;
}

std::string PairFamily::description() const {
  switch (kind) {
    case FamilyKind::Identity:
      return "identity";
    case FamilyKind::DiagPower:
      return "diag-power(alpha=" + format_param(alpha) + ")";
    case FamilyKind::DiagExp:
      return "diag-exp(beta=" + format_param(beta) + ")";
    case FamilyKind::DiagMixed:
      return "diag-mixed";
    case FamilyKind::BoundedPerturbation:
      return "bounded-perturbation(epsilon=" + format_param(epsilon) +
             ",seed=" + std::to_string(seed) + ")";
    case FamilyKind::NonRegularShift:
      return "non-regular-shift";
    case FamilyKind::RandomRegular:
      return "random-regular(kappa=" + format_param(kappa_target) +
             ",seed=" + std::to_string(seed) + ")";
  }
  return "unknown";
}

TruncatedPair generate(const PairFamily& family, Index d) {
  if (d < 2) {
    throw BadParameter("generate: dimension must be >= 2");
  }
  const std::string label = family.description();

  switch (family.kind) {
    case FamilyKind::Identity: {
      return TruncatedPair(ComplexMatrix::Identity(d, d),
                           ComplexMatrix::Identity(d, d), label);
    }

    case FamilyKind::DiagPower: {
      RealVector t(d);
      for (Index k = 0; k < d; ++k) {
        t(k) = std::pow(static_cast<double>(k + 1), family.alpha);
      }
      return diagonal_pair(t, label);
    }

    case FamilyKind::DiagExp: {
      RealVector t(d);
      for (Index k = 0; k < d; ++k) {
        t(k) = std::exp(family.beta * static_cast<double>(k));
      }
      return diagonal_pair(t, label);
    }

    case FamilyKind::DiagMixed: {
      // Even slots grow linearly, odd slots decay as the reciprocal, so
      // neither family is Bessel and neither is bounded below.
      RealVector t(d);
      for (Index k = 0; k < d; ++k) {
        const double j = static_cast<double>(k / 2 + 1);
        t(k) = (k % 2 == 0) ? j : 1.0 / j;
      }
      return diagonal_pair(t, label);
    }

    case FamilyKind::BoundedPerturbation: {
      Rng rng(mix_seed(family.seed,
                       mix_seed(static_cast<std::uint64_t>(d),
                                kPerturbationSalt)));
      ComplexMatrix s = rng.gaussian_matrix(d, d);
      const Svd s_svd = svd(s);
      s /= s_svd.singular_values(0); // now ||S||_2 = 1
      const ComplexMatrix phi =
          ComplexMatrix::Identity(d, d) + family.epsilon * s;
      // Psi = (Phi^{-1})^* restores exact-to-rounding biorthogonality;
      // ||eps S||_2 < 1 keeps Phi uniformly invertible.
      const ComplexMatrix psi =
          Eigen::PartialPivLU<ComplexMatrix>(phi.adjoint())
              .solve(ComplexMatrix::Identity(d, d));
      return TruncatedPair(phi, psi, label);
    }

    case FamilyKind::NonRegularShift: {
      // One fewer vector than dimensions: phi_k = e_{k+1} + e_0 and
      // psi_k = e_{k+1} for k = 0..d-2. Biorthogonality is exact, yet e_0 is
      // orthogonal to every psi_k, so the psi family can never be total --
      // the canonical witness the regularity check should find.
      const Index n = d - 1;
      ComplexMatrix phi = ComplexMatrix::Zero(d, n);
      ComplexMatrix psi = ComplexMatrix::Zero(d, n);
      for (Index k = 0; k < n; ++k) {
        phi(k + 1, k) = 1.0;
        phi(0, k) = 1.0;
        psi(k + 1, k) = 1.0;
      }
      return TruncatedPair(std::move(phi), std::move(psi), label);
    }

    case FamilyKind::RandomRegular: {
      const ComplexMatrix q1 = random_unitary(
          d, mix_seed(family.seed,
                      mix_seed(static_cast<std::uint64_t>(d), kLeftUnitarySalt)));
      const ComplexMatrix q2 = random_unitary(
          d, mix_seed(family.seed,
                      mix_seed(static_cast<std::uint64_t>(d), kRightUnitarySalt)));
      // Singular values log-spaced across [1, kappa]; psi uses the reciprocal
      // profile so Psi^* Phi = Q2^* Q1^* Q1 Q2 = I without any solve.
      RealVector s(d);
      for (Index k = 0; k < d; ++k) {
        const double frac =
            d == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(d - 1);
        s(k) = std::pow(family.kappa_target, frac);
      }
      const ComplexMatrix phi = q1 * s.asDiagonal() * q2;
      const ComplexMatrix psi = q1 * s.cwiseInverse().asDiagonal() * q2;
      return TruncatedPair(phi, psi, label);
    }
  }
  throw BadParameter("generate: unknown family kind");
}

} // namespace biortho
