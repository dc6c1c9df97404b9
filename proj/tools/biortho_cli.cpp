// Command-line front end: generate pair files, analyze them against the full
// verification pipeline, and sweep families across dimensions to classify
// their Riesz character. Reports are deterministic JSON on stdout or --out.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "biortho/analyze.hpp"
#include "biortho/errors.hpp"
#include "biortho/families.hpp"
#include "biortho/pair_io.hpp"

namespace {

// "key=value" -> map entry; values are numeric (seed included).
std::map<std::string, double> parse_params(
    const std::vector<std::string>& raw) {
  std::map<std::string, double> params;
  for (const std::string& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw biortho::BadParameter("--param expects key=value, got '" + item +
                                  "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double parsed = std::stod(value, &used);
      if (used != value.size()) {
        throw std::invalid_argument(value);
      }
      params[key] = parsed;
    } catch (const std::exception&) {
      throw biortho::BadParameter("--param " + key +
                                  " has non-numeric value '" + value + "'");
    }
  }
  return params;
}

std::vector<biortho::Index> parse_dims(const std::string& csv) {
  std::vector<biortho::Index> dims;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string token =
        csv.substr(start, comma == std::string::npos ? std::string::npos
                                                     : comma - start);
    if (token.empty()) {
      throw biortho::BadParameter("--dims expects a comma-separated list of "
                                  "integers, got '" + csv + "'");
    }
    try {
      std::size_t used = 0;
      const long long parsed = std::stoll(token, &used);
      if (used != token.size() || parsed < 1) {
        throw std::invalid_argument(token);
      }
      dims.push_back(static_cast<biortho::Index>(parsed));
    } catch (const std::exception&) {
      throw biortho::BadParameter("--dims entry '" + token +
                                  "' is not a positive integer");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

int emit(const nlohmann::ordered_json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return biortho::kExitInputError;
  }
  out << text;
  if (!out.good()) {
    std::cerr << "error: failed while writing '" << out_path << "'\n";
    return biortho::kExitInputError;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification toolkit for finite biorthogonal pairs: canonical "
               "forms, frame identities, ladder operators, and Riesz "
               "classification"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path,
                 "Write the JSON report/pair here instead of stdout");

  // analyze -------------------------------------------------------------
  auto* analyze = app.add_subcommand(
      "analyze", "Run the full verification pipeline on a pair file");
  analyze->fallthrough();
  std::string pair_path;
  double tol_scale = 1.0;
  std::uint64_t seed = 2024;
  int probes = 64;
  int onb_bases = 3;
  analyze->add_option("--pair", pair_path, "Pair file (JSON)")->required();
  analyze->add_option("--tol-scale", tol_scale,
                      "Multiplier on every default tolerance");
  analyze->add_option("--seed", seed, "Seed for randomized checks");
  analyze->add_option("--probes", probes, "Bessel-bound probe count");
  analyze->add_option("--onb-bases", onb_bases,
                      "Random bases for the invariance check");

  // sweep ---------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "sweep", "Classify a family's Riesz character across dimensions");
  sweep->fallthrough();
  std::string sweep_family_name;
  std::vector<std::string> sweep_params;
  std::string dims_csv;
  double growth_tol = 0.05;
  sweep->add_option("--family", sweep_family_name, "Family name")->required();
  sweep->add_option("--param", sweep_params,
                    "Family parameter key=value (repeatable)");
  sweep->add_option("--dims", dims_csv, "Comma-separated ascending dimensions")
      ->required();
  sweep->add_option("--growth-tol", growth_tol,
                    "Plateau/growth threshold on consecutive ratios");

  // generate ------------------------------------------------------------
  auto* generate = app.add_subcommand(
      "generate", "Generate a family member and write it as a pair file");
  generate->fallthrough();
  std::string gen_family_name;
  std::vector<std::string> gen_params;
  biortho::Index dim = 0;
  std::string gen_label;
  generate->add_option("--family", gen_family_name, "Family name")->required();
  generate->add_option("--param", gen_params,
                       "Family parameter key=value (repeatable)");
  generate->add_option("--dim", dim, "Dimension")->required();
  generate->add_option("--label", gen_label,
                       "Override the generated pair label");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Keep --help/--version at status 0, but fold every actual parse failure
    // into the input-error slot of the exit-code contract.
    const int status = app.exit(e);
    return status == 0 ? 0 : biortho::kExitInputError;
  }

  try {
    if (*analyze) {
      const biortho::TruncatedPair pair = biortho::load_pair(pair_path);
      biortho::AnalysisOptions options;
      options.tol_scale = tol_scale;
      options.seed = seed;
      options.bessel_probes = probes;
      options.onb_bases = onb_bases;
      const biortho::AnalysisOutcome outcome =
          biortho::analyze_pair(pair, options);
      const int emit_status = emit(outcome.report, out_path);
      return emit_status != 0 ? emit_status : outcome.exit_code;
    }

    if (*sweep) {
      const biortho::PairFamily family = biortho::PairFamily::from_name(
          sweep_family_name, parse_params(sweep_params));
      const std::vector<biortho::Index> dims = parse_dims(dims_csv);
      const biortho::AnalysisOutcome outcome =
          biortho::sweep_family(family, dims, growth_tol);
      const int emit_status = emit(outcome.report, out_path);
      return emit_status != 0 ? emit_status : outcome.exit_code;
    }

    if (*generate) {
      biortho::PairFamily family = biortho::PairFamily::from_name(
          gen_family_name, parse_params(gen_params));
      biortho::TruncatedPair pair = biortho::generate(family, dim);
      if (!gen_label.empty()) {
        pair = biortho::TruncatedPair(pair.phi(), pair.psi(), gen_label);
      }
      if (out_path.empty()) {
        std::cout << biortho::pair_to_json(pair).dump(2) << "\n";
      } else {
        biortho::save_pair(pair, out_path);
      }
      return 0;
    }
  } catch (const biortho::ConditioningExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return biortho::kExitConditioning;
  } catch (const biortho::Error& e) {
    // Bad files, bad parameters, inconsistent schemas: all input problems.
    std::cerr << "error: " << e.what() << "\n";
    return biortho::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return biortho::kExitInputError;
  }
  return 0;
}
