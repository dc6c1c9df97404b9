#include "biortho/frames.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <vector>

#include "biortho/errors.hpp"
#include "biortho/numerics.hpp"
#include "biortho/rng.hpp"

namespace biortho {

namespace {

constexpr std::uint64_t kBesselSalt = 0x626573736c65ULL;

void require_regular(const TruncatedPair& pair, const char* op) {
  if (pair.count() != pair.dim()) {
    std::ostringstream msg;
    msg << op << ": pair has " << pair.count() << " vectors in dimension "
        << pair.dim() << "; frame identities hold for regular pairs";
    throw NotRegular(msg.str());
  }
}

} // namespace

FrameData frame_operators(const TruncatedPair& pair) {
  require_regular(pair, "frame_operators");
  const Svd phi_svd = svd(pair.phi());

  FrameData data;
  data.s_phi = pair.phi() * pair.phi().adjoint();
  data.s_psi = pair.psi() * pair.psi().adjoint();
  data.sigma_max = phi_svd.singular_values(0);
  data.sigma_min = phi_svd.singular_values(pair.dim() - 1);
  if (data.sigma_min <= 0.0) {
    throw SingularInput("frame_operators: phi is singular");
  }
  data.r_phi = data.sigma_max * data.sigma_max;
  data.r_psi = 1.0 / (data.sigma_min * data.sigma_min);
  return data;
}

double FrameIdentityResiduals::max() const {
  return std::max({s_phi_vs_transition, s_psi_vs_transition, s_phi_s_psi,
                   s_psi_s_phi, s_phi_maps_psi_to_phi, s_psi_maps_phi_to_psi});
}

FrameIdentityResiduals verify_frame_identities(const TruncatedPair& pair,
                                               const CanonicalForm& cf,
                                               const ComplexMatrix& onb) {
  require_regular(pair, "verify_frame_identities");
  const Index d = pair.dim();
  if (cf.dim() != d) {
    throw DimensionMismatch(
        "verify_frame_identities: canonical form dimension does not match pair");
  }

  const TransitionOperators ops = build_transition(pair, onb);
  // T^{-1} through the canonical factors: T = Phi E^* and Phi = Tf F give
  // T^{-1} = E F^* Tf^{-1}. This is a genuinely different floating-point
  // path than inverting T directly, so the identities below are two-sided
  // checks rather than tautologies.
  const ComplexMatrix t_inv = ops.onb * cf.f.adjoint() * cf.tf_inv;

  const ComplexMatrix s_phi = pair.phi() * pair.phi().adjoint();
  const ComplexMatrix s_psi = pair.psi() * pair.psi().adjoint();
  const double s_phi_norm = std::max(frobenius(s_phi), 1e-300);
  const double s_psi_norm = std::max(frobenius(s_psi), 1e-300);
  const double sqrt_d = std::sqrt(static_cast<double>(d));

  FrameIdentityResiduals res;
  res.s_phi_vs_transition =
      frobenius(s_phi - ops.t * ops.t.adjoint()) / s_phi_norm;
  res.s_psi_vs_transition =
      frobenius(s_psi - t_inv.adjoint() * t_inv) / s_psi_norm;
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  res.s_phi_s_psi = frobenius(s_phi * s_psi - eye) / sqrt_d;
  res.s_psi_s_phi = frobenius(s_psi * s_phi - eye) / sqrt_d;

  double worst_phi = 0.0;
  double worst_psi = 0.0;
  for (Index k = 0; k < d; ++k) {
    const ComplexVector phi_k = pair.phi().col(k);
    const ComplexVector psi_k = pair.psi().col(k);
    worst_phi = std::max(
        worst_phi, (s_phi * psi_k - phi_k).norm() / phi_k.norm());
    worst_psi = std::max(
        worst_psi, (s_psi * phi_k - psi_k).norm() / psi_k.norm());
  }
  res.s_phi_maps_psi_to_phi = worst_phi;
  res.s_psi_maps_phi_to_psi = worst_psi;
  return res;
}

FrameIdentityResiduals verify_frame_identities(const TruncatedPair& pair,
                                               const CanonicalForm& cf) {
  return verify_frame_identities(
      pair, cf, ComplexMatrix::Identity(pair.dim(), pair.dim()));
}

BesselSample bessel_check(const TruncatedPair& pair, int probes,
                          std::uint64_t seed) {
  if (probes < 1) {
    throw BadParameter("bessel_check: need at least one probe");
  }
  Rng rng(mix_seed(seed, kBesselSalt));
  BesselSample sample;
  for (int p = 0; p < probes; ++p) {
    const ComplexVector x = rng.unit_vector(pair.dim());
    // sum_k |<phi_k, x>|^2 is just ||Phi^* x||^2, and likewise for psi.
    sample.max_phi_sum =
        std::max(sample.max_phi_sum, (pair.phi().adjoint() * x).squaredNorm());
    sample.max_psi_sum =
        std::max(sample.max_psi_sum, (pair.psi().adjoint() * x).squaredNorm());
  }
  return sample;
}

std::string to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::Plateau: return "Plateau";
    case TraceStatus::Grows: return "Grows";
    case TraceStatus::Decays: return "Decays";
    case TraceStatus::Irregular: return "Irregular";
  }
  return "Irregular";
}

std::string to_string(RieszVerdict verdict) {
  switch (verdict) {
    case RieszVerdict::Riesz: return "Riesz";
    case RieszVerdict::SemiRieszPhiBessel: return "SemiRieszPhiBessel";
    case RieszVerdict::SemiRieszPsiBessel: return "SemiRieszPsiBessel";
    case RieszVerdict::NonRiesz: return "NonRiesz";
    case RieszVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

// Judge a trace on its last two consecutive ratios: a transient at small
// dimension must not override where the sequence has settled.
TraceStatus trace_status(const std::vector<double>& trace, double tol) {
  const std::size_t m = trace.size();
  const double a = trace[m - 2] / trace[m - 3];
  const double b = trace[m - 1] / trace[m - 2];
  if (a < 1.0 - tol && b < 1.0 - tol) return TraceStatus::Decays;
  if (a > 1.0 + tol && b > 1.0 + tol) return TraceStatus::Grows;
  if (a <= 1.0 + tol && b <= 1.0 + tol) return TraceStatus::Plateau;
  return TraceStatus::Irregular;
}

struct SweepPoint {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
};

SweepPoint sweep_point(const PairFamily& family, Index d) {
  TruncatedPair pair = generate(family, d);
  RegularityVerdict verdict;
  try {
    verdict = regularity_check(pair);
  } catch (const NotBiorthogonal& e) {
    throw FamilyNotRegular(family.description() +
                           " is not biorthogonal at dimension " +
                           std::to_string(d) + ": " + e.what());
  }
  if (verdict.status != RegularityStatus::Regular) {
    throw FamilyNotRegular(family.description() +
                           " is not regular at dimension " +
                           std::to_string(d));
  }
  const Svd phi_svd = svd(pair.phi());
  SweepPoint point;
  point.sigma_max = phi_svd.singular_values(0);
  point.sigma_min = phi_svd.singular_values(d - 1);
  return point;
}

} // namespace

Classification classify_sweep(const PairFamily& family,
                              std::span<const Index> dims,
                              double growth_tol) {
  if (dims.size() < 3) {
    throw BadParameter("classify_sweep: need at least three dimensions");
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 2) {
      throw BadParameter("classify_sweep: dimensions must be >= 2");
    }
    if (i > 0 && dims[i] <= dims[i - 1]) {
      throw BadParameter("classify_sweep: dimensions must be strictly ascending");
    }
  }
  if (!(growth_tol > 0.0 && growth_tol < 1.0)) {
    throw BadParameter("classify_sweep: growth tolerance must lie in (0, 1)");
  }

  // Independent dimensions; evaluate in parallel and merge in dim order so
  // the result (including which failure surfaces first) is deterministic.
  std::vector<std::future<SweepPoint>> futures;
  futures.reserve(dims.size());
  for (Index d : dims) {
    futures.push_back(std::async(std::launch::async, sweep_point, family, d));
  }

  Classification result;
  result.growth_tol = growth_tol;
  result.dims.assign(dims.begin(), dims.end());
  for (auto& f : futures) {
    const SweepPoint point = f.get();
    result.sigma_max_trace.push_back(point.sigma_max);
    result.sigma_min_trace.push_back(point.sigma_min);
  }

  result.sigma_max_status = trace_status(result.sigma_max_trace, growth_tol);
  result.sigma_min_status = trace_status(result.sigma_min_trace, growth_tol);

  if (result.sigma_max_status == TraceStatus::Irregular ||
      result.sigma_min_status == TraceStatus::Irregular) {
    result.verdict = RieszVerdict::Inconclusive;
    return result;
  }
  // phi's Bessel bound is sigma_max^2: bounded iff the trace does not grow.
  // psi's is 1/sigma_min^2: bounded iff the trace does not decay.
  const bool phi_bessel = result.sigma_max_status != TraceStatus::Grows;
  const bool psi_bessel = result.sigma_min_status != TraceStatus::Decays;
  if (phi_bessel && psi_bessel) {
    result.verdict = RieszVerdict::Riesz;
  } else if (phi_bessel) {
    result.verdict = RieszVerdict::SemiRieszPhiBessel;
  } else if (psi_bessel) {
    result.verdict = RieszVerdict::SemiRieszPsiBessel;
  } else {
    result.verdict = RieszVerdict::NonRiesz;
  }
  return result;
}

} // namespace biortho
