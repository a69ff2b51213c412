#pragma once

#include <string>
#include <vector>

#include "gbm/config.hpp"

namespace gbm {

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // bound it was held to
  std::string detail;
};

struct SuiteResult {
  std::vector<CheckResult> checks;
  std::vector<std::string> report_files;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int exit_code() const { return all_pass() ? 0 : 1; }
};

// Chaos-identity residuals (closed form vs discrete), recursion residuals on
// both sides, unit-integrand closed form, moment-bound slacks, and the
// PDE/Monte-Carlo cross-check. Writes <out>/verify_report.json and CSV
// tables; one line per check on stdout.
SuiteResult run_verify(const RunConfig& cfg);

// Grid-refinement study of the identity residual: CSV rows
// (order, steps, rms_error, rms_magnitude, empirical_order). Needs >= 3 grid
// sizes.
SuiteResult run_convergence(const RunConfig& cfg);

// Upper/lower sublinear expectation sweeps for the configured functionals.
SuiteResult run_expectation(const RunConfig& cfg);

// G-heat solves for the configured payoffs; profiles as CSV, values as JSON.
SuiteResult run_gheat(const RunConfig& cfg);

// Exact integer coefficient table for degrees 0..max_degree (CSV).
SuiteResult run_hermite_table(int max_degree, const std::string& out_dir, bool to_stdout);

}  // namespace gbm
