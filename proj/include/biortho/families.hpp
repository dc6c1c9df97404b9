#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "biortho/pair.hpp"
#include "biortho/types.hpp"

namespace biortho {

enum class FamilyKind {
  Identity,            // phi_k = psi_k = e_k
  DiagPower,           // phi_k = (k+1)^alpha e_k, psi_k = (k+1)^{-alpha} e_k
  DiagExp,             // phi_k = exp(beta k) e_k, psi_k = exp(-beta k) e_k
  DiagMixed,           // alternating growth/decay on even/odd indices
  BoundedPerturbation, // Phi = I + eps * S with ||S||_2 = 1, Psi = (Phi^{-1})^*
  NonRegularShift,     // n = d-1, phi_k = e_{k+1} + e_0, psi_k = e_{k+1}
  RandomRegular,       // Phi = Q1 diag(s) Q2 with prescribed condition number
};

// A parameterized generator of pairs, one pair per dimension. Families are
// the probes the classification sweep runs on, and double as deterministic
// test corpora.
struct PairFamily {
  FamilyKind kind = FamilyKind::Identity;
  double alpha = 1.0;          // DiagPower exponent
  double beta = 1.0;           // DiagExp rate
  double epsilon = 0.1;        // BoundedPerturbation size, in [0, 1)
  double kappa_target = 10.0;  // RandomRegular condition number, >= 1
  std::uint64_t seed = 0;      // BoundedPerturbation / RandomRegular stream

  static PairFamily identity();
  static PairFamily diag_power(double alpha);
  static PairFamily diag_exp(double beta);
  static PairFamily diag_mixed();
  static PairFamily bounded_perturbation(double epsilon, std::uint64_t seed);
  static PairFamily non_regular_shift();
  static PairFamily random_regular(double kappa_target, std::uint64_t seed);

  // Resolve a CLI-style name ("identity", "diag-power", "diag-exp",
  // "diag-mixed", "bounded-perturbation", "non-regular-shift",
  // "random-regular") plus key=value parameters (alpha, beta, epsilon,
  // kappa, seed). Unknown names/keys or out-of-range values throw
  // BadParameter.
  static PairFamily from_name(const std::string& name,
                              const std::map<std::string, double>& params);

  // Stable human-readable tag, e.g. "diag-power(alpha=1)"; used as the pair
  // label and in reports.
  std::string description() const;
};

// Generate the family member in dimension d (>= 2; BadParameter below).
// Every kind except NonRegularShift produces a regular pair with exact or
// near-exact biorthogonality; NonRegularShift produces the n = d-1 pair
// whose psi family provably misses e_0.
TruncatedPair generate(const PairFamily& family, Index d);

} // namespace biortho
