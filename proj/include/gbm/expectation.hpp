#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "gbm/ito.hpp"
#include "gbm/payoff.hpp"
#include "gbm/scenario.hpp"

namespace gbm {

// Path functionals whose sublinear expectation is estimated by the scenario
// sweep: a terminal payoff phi(B_T), a multiple integral I_n of a product
// integrand, or a squared simple-process integral.
struct TerminalFunctional {
  Payoff payoff;
};
struct ChaosFunctional {
  GridFunctionSpec f;
  int order = 1;
};
struct SquaredItoFunctional {
  GridFunctionSpec eta;
};
using FunctionalSpec = std::variant<TerminalFunctional, ChaosFunctional, SquaredItoFunctional>;

std::string functional_label(const FunctionalSpec& x);

using PathFunctional = std::function<double(const BrownianPath&)>;

// Resolves the descriptor on a concrete grid.
PathFunctional compile_functional(const FunctionalSpec& x, const TimeGrid& grid);

struct ScenarioEstimate {
  std::string scenario;
  double mean = 0.0;
  double std_error = 0.0;
};

// One sweep gives both envelope values: the upper expectation is the largest
// scenario mean, the lower expectation the smallest (the dual of the upper
// expectation of the negated functional, exactly).
struct EstimateReport {
  std::string functional;
  double upper = 0.0;
  double lower = 0.0;
  std::string argmax_scenario;
  std::string argmin_scenario;
  std::size_t paths_per_scenario = 0;
  std::uint64_t seed = 0;
  std::vector<ScenarioEstimate> rows;

  const ScenarioEstimate& argmax_row() const;
};

// Core sweep: per-scenario Monte Carlo means of X with common random numbers
// (path j consumes the same normal substream under every scenario).
// Scenario list must be nonempty and contain the two constant endpoint
// scenarios sigma_lo and sigma_hi.
EstimateReport sweep_expectation(const PathFunctional& x, const std::string& label,
                                 const VolatilityBounds& bounds, const TimeGrid& grid,
                                 const std::vector<ScenarioSpec>& scenarios,
                                 std::size_t paths_per_scenario, std::uint64_t seed);

EstimateReport upper_expectation(const FunctionalSpec& x, const VolatilityBounds& bounds,
                                 const TimeGrid& grid, const std::vector<ScenarioSpec>& scenarios,
                                 std::size_t paths_per_scenario, std::uint64_t seed);

// lower(X) = -upper(-X); both fall out of the same sweep.
EstimateReport lower_expectation(const FunctionalSpec& x, const VolatilityBounds& bounds,
                                 const TimeGrid& grid, const std::vector<ScenarioSpec>& scenarios,
                                 std::size_t paths_per_scenario, std::uint64_t seed);

// Constant scenarios on an evenly spaced sigma grid, endpoints exact.
std::vector<ScenarioSpec> constant_sweep(const VolatilityBounds& bounds, int points);

// Second-moment bound for the simple-process integral: the estimated upper
// expectation of (int eta dB)^2 against sigma_hi^2 * int eta^2 dt. The slack
// (lhs - rhs) must not exceed the stated multiple of the Monte Carlo
// standard error at the argmax scenario.
struct MomentBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double std_error = 0.0;
  double se_multiplier = 3.0;
  bool within_margin = false;
  EstimateReport detail;
};

MomentBoundReport moment_bound_check(const GridFunction& eta, const VolatilityBounds& bounds,
                                     const TimeGrid& grid,
                                     const std::vector<ScenarioSpec>& scenarios,
                                     std::size_t paths_per_scenario, std::uint64_t seed);

// Chaos bound: upper expectation of I_n(f x...x f)^2 against
// sigma_hi^(2n) * n! * (int f^2 dt)^n. Guarded at n <= 5.
MomentBoundReport chaos_moment_bound_check(const GridFunctionSpec& f, int order,
                                           const VolatilityBounds& bounds, const TimeGrid& grid,
                                           const std::vector<ScenarioSpec>& scenarios,
                                           std::size_t paths_per_scenario, std::uint64_t seed);

}  // namespace gbm
