#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbm/expectation.hpp"
#include "gbm/payoff.hpp"
#include "gbm/scenario.hpp"

namespace gbm {

// Configuration problems (bad document, bad field, missing file) map to
// exit code 2; check failures map to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pass/fail thresholds applied by the verify suite. Defaults are the
// project's acceptance values; configs may only tighten or re-state them.
struct Thresholds {
  double identity_rel_rms = 2e-2;   // chaos identity, relative RMS at finest grid
  double min_order = 0.4;           // empirical convergence order between grids
  double closed_form_tol = 1e-10;   // recursion residual, closed-form side
  double corollary_tol = 1e-12;     // unit-integrand closed form vs scaled Hermite
  double se_multiplier = 3.0;       // Monte Carlo slack allowance
  double pde_mc_rel_tol = 1e-2;     // PDE vs MC cross-check
};

struct PdeSettings {
  int space_steps = 600;
  std::optional<double> half_width;  // default 6 sigma_hi sqrt(T)
  std::optional<int> time_steps;     // default: smallest CFL-respecting count
};

struct RunConfig {
  VolatilityBounds bounds;
  double horizon = 1.0;
  std::vector<int> grid_sizes = {256, 1024, 4096};  // powers of two
  std::vector<ScenarioSpec> scenarios;              // default set in parse
  GridFunctionSpec f;                               // integrand for the identity suites
  std::vector<int> chaos_orders = {2, 3, 4, 5};
  std::size_t paths_per_scenario = 1000;
  std::uint64_t seed = 0;  // must be given explicitly; no wall-clock seeding
  std::string out_dir = "out";
  bool emit_json = true;
  bool emit_csv = true;
  std::vector<Payoff> payoffs;  // default set in parse
  std::vector<FunctionalSpec> functionals;  // expectation subcommand; default from payoffs
  Thresholds thresholds;
  PdeSettings pde;
};

// Parses and validates the documented JSON schema. Unknown keys, missing
// seed, unordered bounds, non-power-of-two grid sizes and the like raise
// ConfigError with the offending field path in the message.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

}  // namespace gbm
