#include "biortho/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "biortho/canonical.hpp"
#include "biortho/errors.hpp"
#include "biortho/frames.hpp"
#include "biortho/ladder.hpp"
#include "biortho/numerics.hpp"
#include "biortho/rng.hpp"

namespace biortho {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kInvarianceSalt = 0x6f6e62ULL;
constexpr std::uint64_t kFactorizationSalt = 0x666163ULL;

Json complex_vector_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back({v(i).real(), v(i).imag()});
  }
  return out;
}

Json real_vector_json(const RealVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

// Every judged quantity is reported as value + the tolerance it was judged
// against + the verdict, so a report line is auditable on its own.
class CheckSheet {
public:
  Json entry(double value, double tolerance) {
    const bool pass = value <= tolerance;
    all_passed_ &= pass;
    return Json{{"value", value}, {"tolerance", tolerance}, {"pass", pass}};
  }

  Json entry_flag(bool pass) {
    all_passed_ &= pass;
    return Json{{"pass", pass}};
  }

  bool all_passed() const { return all_passed_; }

private:
  bool all_passed_ = true;
};

const char* kNumberOperatorNote =
    "number operators use integer level spacing: N is the conjugated a*a, so "
    "the coefficient on level k+1 is (k+1), the product of the raising and "
    "lowering coefficients sqrt(k+1); eigenvalues are 0..d-1";

} // namespace

AnalysisOutcome analyze_pair(const TruncatedPair& pair,
                             const AnalysisOptions& options) {
  const Index d = pair.dim();
  const double dd = static_cast<double>(d);
  const double scale = options.tol_scale;

  AnalysisOutcome outcome;
  Json& report = outcome.report;
  report["report_version"] = 1;
  report["mode"] = "analyze";
  report["pair"] = Json{{"label", pair.label()},
                        {"dim", d},
                        {"count", pair.count()}};
  report["options"] = Json{{"tol_scale", options.tol_scale},
                           {"bessel_probes", options.bessel_probes},
                           {"seed", options.seed},
                           {"onb_bases", options.onb_bases}};
  Json checks = Json::object();
  Json notes = Json::array();
  CheckSheet sheet;

  auto finish = [&](int exit_code) {
    report["checks"] = std::move(checks);
    report["notes"] = std::move(notes);
    report["overall"] = Json{{"pass", exit_code == kExitAllPass},
                             {"exit_code", exit_code}};
    outcome.exit_code = exit_code;
    return outcome;
  };

  // --- biorthogonality ------------------------------------------------
  const double residual = biorthogonality_residual(pair);
  const Svd phi_svd = svd(pair.phi());
  const Svd psi_svd = svd(pair.psi());
  const double pairing_scale =
      std::max(1.0, phi_svd.singular_values(0) * psi_svd.singular_values(0));
  const double biortho_tol = 1e-10 * dd * pairing_scale * scale;
  checks["biorthogonality"] = sheet.entry(residual, biortho_tol);
  if (!sheet.all_passed()) {
    notes.push_back("pair is not biorthogonal to tolerance; all further "
                    "checks are undefined and were skipped");
    return finish(kExitChecksFailed);
  }

  // --- regularity -------------------------------------------------------
  const RegularityVerdict verdict = regularity_check(pair, biortho_tol);
  {
    Json reg;
    reg["status"] = verdict.status == RegularityStatus::Regular
                        ? "Regular"
                        : "Indeterminate";
    reg["rank_phi"] = verdict.rank_phi;
    reg["rank_psi"] = verdict.rank_psi;
    if (verdict.status == RegularityStatus::Indeterminate) {
      const ComplexVector& w_phi = *verdict.phi_orthogonal_witness;
      const ComplexVector& w_psi = *verdict.psi_orthogonal_witness;
      reg["witness_phi"] =
          Json{{"vector", complex_vector_json(w_phi)},
               {"span_residual", (pair.phi().adjoint() * w_phi).norm()}};
      reg["witness_psi"] =
          Json{{"vector", complex_vector_json(w_psi)},
               {"span_residual", (pair.psi().adjoint() * w_psi).norm()}};
    }
    checks["regularity"] = std::move(reg);
  }
  if (verdict.status == RegularityStatus::Indeterminate) {
    notes.push_back("pair has fewer vectors than dimensions: a finite "
                    "truncation cannot decide whether the families become "
                    "total, so canonical/frame/ladder analyses are skipped");
    return finish(kExitIndeterminate);
  }

  // --- canonical form ---------------------------------------------------
  CanonicalForm cf;
  try {
    cf = canonical_form(pair);
  } catch (const ConditioningExceeded& e) {
    checks["canonical"] = Json{{"skipped", e.what()}};
    notes.push_back("condition number exceeds the canonical cap; canonical, "
                    "frame and ladder checks are unavailable");
    return finish(kExitConditioning);
  }
  const double kappa = cf.kappa();
  {
    Json canonical;
    canonical["kappa"] = kappa;
    canonical["spectrum"] = real_vector_json(cf.spectrum);
    canonical["spectrum_positive"] = sheet.entry_flag(cf.spectrum(0) > 0.0);
    canonical["basis_unitarity"] =
        sheet.entry(identity_defect(cf.f.adjoint() * cf.f), 1e-11 * dd * scale);
    canonical["phi_reconstruction"] =
        sheet.entry(frobenius(pair.phi() - cf.tf * cf.f) /
                        std::max(frobenius(pair.phi()), 1e-300),
                    1e-10 * dd * kappa * scale);
    canonical["psi_reconstruction"] =
        sheet.entry(frobenius(pair.psi() - cf.tf_inv * cf.f) /
                        std::max(frobenius(pair.psi()), 1e-300),
                    1e-10 * dd * kappa * scale);
    canonical["inverse_identity"] =
        sheet.entry(identity_defect(cf.tf * cf.tf_inv),
                    1e-10 * dd * kappa * scale);

    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(std::max(options.onb_bases, 2)));
    for (int i = 0; i < std::max(options.onb_bases, 2); ++i) {
      seeds.push_back(mix_seed(options.seed,
                               kInvarianceSalt + static_cast<std::uint64_t>(i)));
    }
    canonical["onb_invariance"] =
        sheet.entry(verify_onb_invariance(pair, seeds),
                    1e-9 * dd * kappa * scale);
    canonical["transition_factorization"] = sheet.entry(
        transition_factorization(
            pair, random_unitary(d, mix_seed(options.seed, kFactorizationSalt)),
            random_unitary(d, mix_seed(options.seed, kFactorizationSalt + 1))),
        1e-11 * dd * scale);
    checks["canonical"] = std::move(canonical);
  }

  // --- frame operators ----------------------------------------------------
  {
    const FrameData fd = frame_operators(pair);
    const FrameIdentityResiduals fir = verify_frame_identities(pair, cf);
    const BesselSample bessel =
        bessel_check(pair, options.bessel_probes, options.seed);

    Json frames;
    frames["r_phi"] = fd.r_phi;
    frames["r_psi"] = fd.r_psi;
    frames["sigma_max"] = fd.sigma_max;
    frames["sigma_min"] = fd.sigma_min;
    frames["identities"] =
        Json{{"s_phi_vs_transition", fir.s_phi_vs_transition},
             {"s_psi_vs_transition", fir.s_psi_vs_transition},
             {"s_phi_s_psi", fir.s_phi_s_psi},
             {"s_psi_s_phi", fir.s_psi_s_phi},
             {"s_phi_maps_psi_to_phi", fir.s_phi_maps_psi_to_phi},
             {"s_psi_maps_phi_to_psi", fir.s_psi_maps_phi_to_psi},
             {"max", sheet.entry(fir.max(), 1e-9 * dd * kappa * kappa * scale)}};
    frames["bessel"] =
        Json{{"probes", options.bessel_probes},
             {"max_phi_sum", sheet.entry(bessel.max_phi_sum, fd.r_phi + 1e-10)},
             {"max_psi_sum", sheet.entry(bessel.max_psi_sum, fd.r_psi + 1e-10)}};
    checks["frames"] = std::move(frames);
  }

  // --- ladder operators ---------------------------------------------------
  LadderSet ladder;
  try {
    ladder = build_ladder_set(cf);
  } catch (const ConditioningExceeded& e) {
    checks["ladder"] = Json{{"skipped", e.what()}};
    notes.push_back("condition number exceeds the ladder cap; ladder checks "
                    "are unavailable (frame results above remain valid)");
    return finish(kExitConditioning);
  } catch (const DimensionTooSmall& e) {
    checks["ladder"] = Json{{"skipped", e.what()}};
    notes.push_back("ladder operators need dimension >= 2");
    return finish(sheet.all_passed() ? kExitAllPass : kExitChecksFailed);
  }
  {
    const double ladder_tol = 1e-9 * dd * kappa * kappa * scale;
    const LadderActionResiduals act = verify_ladder_action(pair, ladder);
    Json actions;
    actions["lowering_phi"] = act.lowering_phi;
    actions["raising_phi"] = act.raising_phi;
    actions["raising_psi"] = act.raising_psi;
    actions["lowering_psi"] = act.lowering_psi;
    actions["annihilate_phi0"] = act.annihilate_phi0;
    actions["annihilate_psi0"] = act.annihilate_psi0;
    actions["edge_raising_phi"] = act.edge_raising_phi;
    actions["edge_raising_psi"] = act.edge_raising_psi;
    actions["max"] = sheet.entry(act.max(), ladder_tol);

    const CommutatorCheck comm = verify_commutators(pair, ladder);
    Json commutators;
    commutators["lower_block"] =
        sheet.entry(comm.lower_block_residual, ladder_tol);
    commutators["edge_norm_phi"] =
        Json{{"value", comm.edge_norm_phi}, {"expected", dd}};
    commutators["edge_norm_psi"] =
        Json{{"value", comm.edge_norm_psi}, {"expected", dd}};

    const NumberOperatorCheck num = verify_number_operators(pair, ladder);
    Json number_op;
    number_op["phi_residual"] = sheet.entry(num.max_phi_residual, ladder_tol);
    number_op["psi_residual"] = sheet.entry(num.max_psi_residual, ladder_tol);
    number_op["eigenvalue_deviation"] =
        sheet.entry(num.max_eigenvalue_deviation, 1e-8 * scale);
    number_op["ba_equals_n"] =
        sheet.entry(num.ba_equals_n, 1e-11 * dd * kappa * kappa * scale);

    const VacuumReconstruction vac = build_from_vacuum(pair, ladder);
    const double vac_tol = 1e-8 * dd * kappa * kappa * scale;
    Json vacuum;
    vacuum["phi_deviation"] = sheet.entry(vac.max_phi_deviation, vac_tol);
    vacuum["psi_deviation"] = sheet.entry(vac.max_psi_deviation, vac_tol);

    checks["ladder"] = Json{{"actions", std::move(actions)},
                            {"commutators", std::move(commutators)},
                            {"number_operator", std::move(number_op)},
                            {"vacuum_reconstruction", std::move(vacuum)}};
    notes.push_back(kNumberOperatorNote);
  }

  return finish(sheet.all_passed() ? kExitAllPass : kExitChecksFailed);
}

AnalysisOutcome sweep_family(const PairFamily& family,
                             std::span<const Index> dims, double growth_tol,
                             const AnalysisOptions& options) {
  AnalysisOutcome outcome;
  Json& report = outcome.report;
  report["report_version"] = 1;
  report["mode"] = "sweep";
  report["family"] = family.description();
  report["options"] =
      Json{{"growth_tol", growth_tol}, {"tol_scale", options.tol_scale}};

  Classification classification;
  try {
    classification = classify_sweep(family, dims, growth_tol);
  } catch (const FamilyNotRegular& e) {
    report["error"] = Json{{"kind", "FamilyNotRegular"}, {"message", e.what()}};
    report["overall"] = Json{{"pass", false}, {"exit_code", kExitIndeterminate}};
    outcome.exit_code = kExitIndeterminate;
    return outcome;
  } catch (const BadParameter& e) {
    report["error"] = Json{{"kind", "BadParameter"}, {"message", e.what()}};
    report["overall"] = Json{{"pass", false}, {"exit_code", kExitInputError}};
    outcome.exit_code = kExitInputError;
    return outcome;
  }

  Json dims_json = Json::array();
  for (Index d : classification.dims) dims_json.push_back(d);
  Json smax = Json::array();
  for (double v : classification.sigma_max_trace) smax.push_back(v);
  Json smin = Json::array();
  for (double v : classification.sigma_min_trace) smin.push_back(v);

  report["classification"] =
      Json{{"verdict", to_string(classification.verdict)},
           {"dims", std::move(dims_json)},
           {"sigma_max_trace", std::move(smax)},
           {"sigma_min_trace", std::move(smin)},
           {"sigma_max_status", to_string(classification.sigma_max_status)},
           {"sigma_min_status", to_string(classification.sigma_min_status)},
           {"growth_tol", classification.growth_tol}};

  const bool conclusive =
      classification.verdict != RieszVerdict::Inconclusive;
  report["overall"] =
      Json{{"pass", conclusive},
           {"exit_code", conclusive ? kExitAllPass : kExitChecksFailed}};
  outcome.exit_code = conclusive ? kExitAllPass : kExitChecksFailed;
  return outcome;
}

} // namespace biortho
