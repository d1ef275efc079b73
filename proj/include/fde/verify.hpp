#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fde::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Difference-weight inequalities, closed-form binomial oracle, hand values.
SuiteResult run_weights_suite(std::uint64_t seed);
// Generating-function identities: series agreement, parity, zero-order
// limits, nonnegativity/sup bound, projector decay, h/F limit values.
SuiteResult run_symbols_suite(std::uint64_t seed);
// Eigenvalue distribution vs symbol samples (empirical CDF distance).
SuiteResult run_distribution_suite(std::uint64_t seed);
// Two-grid theory constants, smoother A-norm monotonicity, V-cycle baselines.
SuiteResult run_tgm_suite(std::uint64_t seed);

// which: one suite name or "all".
std::vector<SuiteResult> run_suites(const std::string& which,
                                    std::uint64_t seed);

} // namespace fde::verify
