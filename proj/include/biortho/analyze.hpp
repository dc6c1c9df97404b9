#pragma once

#include <cstdint>
#include <json.hpp>
#include <span>
#include <string>

#include "biortho/families.hpp"
#include "biortho/pair.hpp"
#include "biortho/types.hpp"

namespace biortho {

// Process exit codes shared by the library pipeline and the CLI.
inline constexpr int kExitAllPass = 0;
inline constexpr int kExitChecksFailed = 2;
inline constexpr int kExitIndeterminate = 3;
inline constexpr int kExitInputError = 4;
inline constexpr int kExitConditioning = 5;

struct AnalysisOptions {
  // Multiplier applied to every d-/kappa-scaled default tolerance.
  double tol_scale = 1.0;
  // Probe count for the empirical Bessel-bound sampling.
  int bessel_probes = 64;
  // Seed driving every randomized check (Bessel probes, invariance bases).
  std::uint64_t seed = 2024;
  // Number of random orthonormal bases for the invariance check (>= 2).
  int onb_bases = 3;
};

// A full analysis run: report document plus the exit code the CLI should
// return. The report is deterministic for fixed input and options (stable
// key order, complex numbers as [re, im], every judged value next to the
// tolerance it was judged against).
struct AnalysisOutcome {
  nlohmann::ordered_json report;
  int exit_code = kExitAllPass;
  bool all_passed() const { return exit_code == kExitAllPass; }
};

// Run the whole verification pipeline on one pair: biorthogonality ->
// regularity -> canonical form -> frame identities -> ladder operators ->
// number/vacuum checks. Indeterminate regularity short-circuits (exit 3,
// witnesses embedded); a conditioning cap short-circuits with the partial
// report (exit 5); any failed tolerance yields exit 2.
AnalysisOutcome analyze_pair(const TruncatedPair& pair,
                             const AnalysisOptions& options = {});

// Run the classification sweep for a family and wrap the traces and verdict
// in a report. BadParameter/FamilyNotRegular surface in the report with the
// input-error exit code rather than as exceptions.
AnalysisOutcome sweep_family(const PairFamily& family,
                             std::span<const Index> dims, double growth_tol,
                             const AnalysisOptions& options = {});

} // namespace biortho
