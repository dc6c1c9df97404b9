// Acceptance suite: one self-contained check per shipped guarantee, one
// PASS/FAIL line each, exit 0 only if every guarantee holds. The CLI binary
// under test is passed as argv[1].

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "biortho/analyze.hpp"
#include "biortho/canonical.hpp"
#include "biortho/errors.hpp"
#include "biortho/families.hpp"
#include "biortho/frames.hpp"
#include "biortho/ladder.hpp"
#include "biortho/numerics.hpp"
#include "biortho/pair.hpp"
#include "biortho/pair_io.hpp"
#include "biortho/rng.hpp"

using namespace biortho;
namespace fs = std::filesystem;

namespace {

struct CorpusEntry {
  TruncatedPair pair;
  CanonicalForm cf;
};

// 100 well-conditioned random regular pairs cycling through the supported
// dimensions and conditioning regimes; everything downstream reuses them.
std::vector<CorpusEntry> build_corpus() {
  const std::array<Index, 4> dims = {4, 8, 16, 32};
  const std::array<double, 4> kappas = {2.0, 10.0, 100.0, 1000.0};
  std::vector<CorpusEntry> corpus;
  corpus.reserve(100);
  for (int i = 0; i < 100; ++i) {
    const Index d = dims[static_cast<std::size_t>(i) % dims.size()];
    const double kappa = kappas[static_cast<std::size_t>(i / 4) % kappas.size()];
    TruncatedPair pair = generate(
        PairFamily::random_regular(kappa, 1000 + static_cast<std::uint64_t>(i)),
        d);
    CanonicalForm cf = canonical_form(pair);
    corpus.push_back(CorpusEntry{std::move(pair), std::move(cf)});
  }
  return corpus;
}

class Gate {
public:
  // Runs one criterion, prints its verdict line, remembers failures.
  void run(const std::string& name, const std::function<bool(std::string&)>& fn) {
    ++index_;
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  " << index_ << ". " << name;
    if (!detail.empty()) {
      std::cout << "  [" << detail << "]";
    }
    std::cout << "\n";
    all_ok_ = all_ok_ && ok;
  }

  bool all_ok() const { return all_ok_; }

private:
  int index_ = 0;
  bool all_ok_ = true;
};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: biortho_acceptance <path-to-cli-binary>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path workdir = fs::temp_directory_path() / "biortho_acceptance";
  fs::create_directories(workdir);

  std::cout << "acceptance corpus: 100 random regular pairs, d in {4,8,16,32}, "
               "kappa in {2,10,100,1000}\n";
  const std::vector<CorpusEntry> corpus = build_corpus();
  Gate gate;

  gate.run("canonical-form round trip on the corpus", [&](std::string& detail) {
    double worst_phi = 0.0, worst_psi = 0.0, worst_unitary = 0.0;
    bool positive = true;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      const double kappa = entry.cf.kappa();
      worst_phi = std::max(
          worst_phi,
          frobenius(entry.pair.phi() - entry.cf.tf * entry.cf.f) /
              (1e-10 * dd * frobenius(entry.pair.phi())));
      worst_psi = std::max(
          worst_psi,
          frobenius(entry.pair.psi() - entry.cf.tf_inv * entry.cf.f) /
              (1e-10 * dd * kappa * frobenius(entry.pair.psi())));
      worst_unitary = std::max(
          worst_unitary,
          identity_defect(entry.cf.f.adjoint() * entry.cf.f) / (1e-11 * dd));
      positive = positive && entry.cf.spectrum(0) > 0.0;
    }
    detail = "worst/bound: phi " + fmt(worst_phi) + ", psi " + fmt(worst_psi) +
             ", unitarity " + fmt(worst_unitary);
    return worst_phi <= 1.0 && worst_psi <= 1.0 && worst_unitary <= 1.0 &&
           positive;
  });

  gate.run("metric operator invariant under the basis choice",
           [&](std::string& detail) {
    double worst = 0.0;
    std::uint64_t seed = 500;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      std::array<std::uint64_t, 5> seeds{};
      for (auto& s : seeds) s = seed++;
      worst = std::max(
          worst, verify_onb_invariance(entry.pair, seeds) / (1e-9 * dd));
    }
    detail = "worst/bound " + fmt(worst);
    return worst <= 1.0;
  });

  gate.run("frame-operator identities on the corpus", [&](std::string& detail) {
    double worst = 0.0;
    std::uint64_t seed = 777;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      const double kappa = entry.cf.kappa();
      const ComplexMatrix onb = random_unitary(entry.pair.dim(), seed++);
      const double residual =
          verify_frame_identities(entry.pair, entry.cf, onb).max();
      worst = std::max(worst, residual / (1e-9 * dd * kappa * kappa));
    }
    detail = "worst/bound " + fmt(worst);
    return worst <= 1.0;
  });

  gate.run("Bessel bounds exact and sharp for the linear diagonal pair",
           [&](std::string& detail) {
    const TruncatedPair pair = generate(PairFamily::diag_power(1.0), 16);
    const FrameData fd = frame_operators(pair);
    const BesselSample sample = bessel_check(pair, 1000, 4242);
    detail = "r_phi " + fmt(fd.r_phi) + ", r_psi " + fmt(fd.r_psi) +
             ", max sums " + fmt(sample.max_phi_sum) + "/" +
             fmt(sample.max_psi_sum);
    return std::abs(fd.r_phi - 256.0) <= 256.0 * 1e-12 &&
           std::abs(fd.r_psi - 1.0) <= 1e-12 &&
           sample.max_phi_sum <= fd.r_phi + 1e-10 &&
           sample.max_psi_sum <= fd.r_psi + 1e-10;
  });

  gate.run("classification sweep lands on all five verdicts",
           [&](std::string& detail) {
    const std::array<Index, 4> dims = {8, 16, 32, 64};
    const std::array<std::pair<PairFamily, RieszVerdict>, 5> expected = {
        std::make_pair(PairFamily::diag_power(0.0), RieszVerdict::Riesz),
        std::make_pair(PairFamily::diag_power(1.0),
                       RieszVerdict::SemiRieszPsiBessel),
        std::make_pair(PairFamily::diag_power(-1.0),
                       RieszVerdict::SemiRieszPhiBessel),
        std::make_pair(PairFamily::diag_mixed(), RieszVerdict::NonRiesz),
        std::make_pair(PairFamily::bounded_perturbation(0.3, 1),
                       RieszVerdict::Riesz)};
    std::ostringstream got;
    bool ok = true;
    for (const auto& [family, verdict] : expected) {
      const Classification c = classify_sweep(family, dims, 0.05);
      got << family.description() << " -> " << to_string(c.verdict) << "; ";
      ok = ok && c.verdict == verdict;
    }
    detail = got.str();
    return ok;
  });

  gate.run("ladder actions lower and raise both families",
           [&](std::string& detail) {
    double worst = 0.0;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      const double kappa = entry.cf.kappa();
      const LadderSet ladder = build_ladder_set(entry.cf);
      const double residual = verify_ladder_action(entry.pair, ladder).max();
      worst = std::max(worst, residual / (1e-9 * dd * kappa * kappa));
    }
    detail = "worst/bound " + fmt(worst);
    return worst <= 1.0;
  });

  gate.run("commutators: identity below the edge, edge norm equals d",
           [&](std::string& detail) {
    double worst_block = 0.0;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      const double kappa = entry.cf.kappa();
      const LadderSet ladder = build_ladder_set(entry.cf);
      const CommutatorCheck comm = verify_commutators(entry.pair, ladder);
      worst_block = std::max(
          worst_block,
          comm.lower_block_residual / (1e-9 * dd * kappa * kappa));
    }
    double worst_edge = 0.0;
    for (Index d : {3, 8}) {
      const TruncatedPair identity = generate(PairFamily::identity(), d);
      const LadderSet ladder = build_ladder_set(canonical_form(identity));
      const CommutatorCheck comm = verify_commutators(identity, ladder);
      const double dd = static_cast<double>(d);
      worst_edge = std::max({worst_edge, std::abs(comm.edge_norm_phi - dd) / dd,
                             std::abs(comm.edge_norm_psi - dd) / dd});
    }
    detail = "worst block/bound " + fmt(worst_block) + ", worst edge rel " +
             fmt(worst_edge);
    return worst_block <= 1.0 && worst_edge <= 1e-6;
  });

  gate.run("number operators carry integer spectra", [&](std::string& detail) {
    double worst_eig = 0.0, worst_action = 0.0, worst_ba = 0.0;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      const double kappa = entry.cf.kappa();
      const LadderSet ladder = build_ladder_set(entry.cf);
      const NumberOperatorCheck num =
          verify_number_operators(entry.pair, ladder);
      worst_eig = std::max(worst_eig, num.max_eigenvalue_deviation / 1e-8);
      worst_action = std::max(
          {worst_action,
           num.max_phi_residual / (1e-9 * dd * kappa * kappa),
           num.max_psi_residual / (1e-9 * dd * kappa * kappa)});
      worst_ba =
          std::max(worst_ba, num.ba_equals_n / (1e-11 * dd * kappa * kappa));
    }
    detail = "worst/bound: eigenvalues " + fmt(worst_eig) + ", actions " +
             fmt(worst_action) + ", BA=N " + fmt(worst_ba);
    return worst_eig <= 1.0 && worst_action <= 1.0 && worst_ba <= 1.0;
  });

  gate.run("vacuum vector rebuilds both families", [&](std::string& detail) {
    double worst = 0.0;
    for (const CorpusEntry& entry : corpus) {
      const double dd = static_cast<double>(entry.pair.dim());
      const double kappa = entry.cf.kappa();
      const LadderSet ladder = build_ladder_set(entry.cf);
      const VacuumReconstruction vac = build_from_vacuum(entry.pair, ladder);
      const double bound = 1e-8 * dd * kappa * kappa;
      worst = std::max({worst, vac.max_phi_deviation / bound,
                        vac.max_psi_deviation / bound});
    }
    detail = "worst/bound " + fmt(worst);
    return worst <= 1.0;
  });

  gate.run("non-regular fixture is caught with its exact witness",
           [&](std::string& detail) {
    std::ostringstream got;
    bool ok = true;
    for (Index d : {5, 16}) {
      const TruncatedPair pair = generate(PairFamily::non_regular_shift(), d);
      ok = ok && biorthogonality_residual(pair) <= 1e-15;

      const AnalysisOutcome outcome = analyze_pair(pair);
      ok = ok && outcome.exit_code == kExitIndeterminate;

      ComplexVector e0 = ComplexVector::Zero(d);
      e0(0) = 1.0;
      const double span = (pair.psi().adjoint() * e0).norm();
      ok = ok && span == 0.0;

      const RegularityVerdict verdict = regularity_check(pair);
      ok = ok && verdict.psi_orthogonal_witness.has_value();
      if (verdict.psi_orthogonal_witness) {
        const ComplexVector& w = *verdict.psi_orthogonal_witness;
        ok = ok && std::abs(w(0) - Complex(1.0, 0.0)) <= 1e-12;
      }

      const fs::path file = workdir / ("fixture_" + std::to_string(d) + ".json");
      save_pair(pair, file.string());
      const int code = run_cli(cli, "analyze --pair " + file.string());
      got << "d=" << d << " exit " << code << " span " << fmt(span) << "; ";
      ok = ok && code == kExitIndeterminate;
    }
    detail = got.str();
    return ok;
  });

  gate.run("CLI pipeline is deterministic and files round-trip bit-exactly",
           [&](std::string& detail) {
    const fs::path pair_file = workdir / "cli_pair.json";
    const fs::path resaved = workdir / "cli_pair_resaved.json";
    const fs::path rep1 = workdir / "cli_report_1.json";
    const fs::path rep2 = workdir / "cli_report_2.json";

    int code = run_cli(cli, "generate --family random-regular "
                            "--param kappa=100 --param seed=3 --dim 8 --out " +
                            pair_file.string());
    if (code != 0) {
      detail = "generate exited " + std::to_string(code);
      return false;
    }
    code = run_cli(cli, "analyze --pair " + pair_file.string() + " --out " +
                        rep1.string());
    if (code != 0) {
      detail = "analyze exited " + std::to_string(code);
      return false;
    }
    code = run_cli(cli, "analyze --pair " + pair_file.string() + " --out " +
                        rep2.string());
    if (code != 0) {
      detail = "second analyze exited " + std::to_string(code);
      return false;
    }
    const bool reports_identical = slurp(rep1) == slurp(rep2);

    const TruncatedPair loaded = load_pair(pair_file.string());
    save_pair(loaded, resaved.string());
    const bool files_identical = slurp(pair_file) == slurp(resaved);
    const TruncatedPair reloaded = load_pair(resaved.string());
    const bool matrices_identical =
        max_abs(loaded.phi() - reloaded.phi()) == 0.0 &&
        max_abs(loaded.psi() - reloaded.psi()) == 0.0;

    detail = std::string("reports byte-identical: ") +
             (reports_identical ? "yes" : "no") +
             ", pair file round-trip byte-identical: " +
             (files_identical ? "yes" : "no");
    return reports_identical && files_identical && matrices_identical;
  });

  std::error_code ec;
  fs::remove_all(workdir, ec);

  std::cout << (gate.all_ok() ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: criteria failed")
            << "\n";
  return gate.all_ok() ? 0 : 1;
}
