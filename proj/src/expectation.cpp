#include "gbm/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gbm/rng.hpp"

namespace gbm {

namespace {

// Bang-bang scenarios draw their switching noise from seeds far away from
// the per-path normal substreams.
constexpr std::uint64_t kScenarioSeedBase = 0xB16B00B5CAFEULL;

bool has_constant(const std::vector<ScenarioSpec>& scenarios, double sigma) {
  for (const auto& s : scenarios)
    if (const auto* c = std::get_if<ConstantSpec>(&s))
      if (c->sigma == sigma) return true;
  return false;
}

}  // namespace

std::string functional_label(const FunctionalSpec& x) {
  if (const auto* t = std::get_if<TerminalFunctional>(&x)) return "terminal:" + t->payoff.label();
  if (const auto* c = std::get_if<ChaosFunctional>(&x))
    return "chaos:I" + std::to_string(c->order) + "(" + c->f.label() + ")";
  const auto& s = std::get<SquaredItoFunctional>(x);
  return "squared-ito(" + s.eta.label() + ")";
}

PathFunctional compile_functional(const FunctionalSpec& x, const TimeGrid& grid) {
  if (const auto* t = std::get_if<TerminalFunctional>(&x)) {
    Payoff phi = t->payoff;
    return [phi](const BrownianPath& p) { return phi(p.terminal()); };
  }
  if (const auto* c = std::get_if<ChaosFunctional>(&x)) {
    GridFunction f = c->f.instantiate(grid);
    int order = c->order;
    return [f, order](const BrownianPath& p) { return multiple_integral(f, p, order); };
  }
  const auto& s = std::get<SquaredItoFunctional>(x);
  GridFunction eta = s.eta.instantiate(grid);
  return [eta](const BrownianPath& p) {
    const double v = ito_integral(eta, p);
    return v * v;
  };
}

const ScenarioEstimate& EstimateReport::argmax_row() const {
  for (const auto& r : rows)
    if (r.scenario == argmax_scenario) return r;
  throw std::logic_error("estimate report: argmax scenario missing from rows");
}

EstimateReport sweep_expectation(const PathFunctional& x, const std::string& label,
                                 const VolatilityBounds& bounds, const TimeGrid& grid,
                                 const std::vector<ScenarioSpec>& scenarios,
                                 std::size_t paths_per_scenario, std::uint64_t seed) {
  if (scenarios.empty()) throw std::invalid_argument("expectation: scenario list is empty");
  if (paths_per_scenario < 1) throw std::invalid_argument("expectation: need at least one path");
  if (!has_constant(scenarios, bounds.sigma_lo) || !has_constant(scenarios, bounds.sigma_hi))
    throw std::invalid_argument(
        "expectation: scenario list must include the constant endpoint scenarios sigma_lo and "
        "sigma_hi");

  EstimateReport report;
  report.functional = label;
  report.paths_per_scenario = paths_per_scenario;
  report.seed = seed;
  report.rows.reserve(scenarios.size());

  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    const ScenarioPath scenario =
        build_scenario(bounds, grid, scenarios[s], rng::substream_seed(seed, kScenarioSeedBase + s));
    // Welford in fixed path order: deterministic for a given seed.
    double mean = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < paths_per_scenario; ++j) {
      const BrownianPath path = simulate_path(scenario, seed, j);
      const double v = x(path);
      const double d = v - mean;
      mean += d / static_cast<double>(j + 1);
      m2 += d * (v - mean);
    }
    const double n = static_cast<double>(paths_per_scenario);
    const double se = paths_per_scenario > 1 ? std::sqrt(m2 / (n - 1.0) / n) : 0.0;
    std::string id = scenario.label + "#" + std::to_string(s);
    report.rows.push_back({std::move(id), mean, se});
  }

  report.upper = report.rows.front().mean;
  report.lower = report.rows.front().mean;
  report.argmax_scenario = report.rows.front().scenario;
  report.argmin_scenario = report.rows.front().scenario;
  for (const auto& r : report.rows) {
    if (r.mean > report.upper) {
      report.upper = r.mean;
      report.argmax_scenario = r.scenario;
    }
    if (r.mean < report.lower) {
      report.lower = r.mean;
      report.argmin_scenario = r.scenario;
    }
  }
  return report;
}

EstimateReport upper_expectation(const FunctionalSpec& x, const VolatilityBounds& bounds,
                                 const TimeGrid& grid, const std::vector<ScenarioSpec>& scenarios,
                                 std::size_t paths_per_scenario, std::uint64_t seed) {
  return sweep_expectation(compile_functional(x, grid), functional_label(x), bounds, grid,
                           scenarios, paths_per_scenario, seed);
}

EstimateReport lower_expectation(const FunctionalSpec& x, const VolatilityBounds& bounds,
                                 const TimeGrid& grid, const std::vector<ScenarioSpec>& scenarios,
                                 std::size_t paths_per_scenario, std::uint64_t seed) {
  PathFunctional f = compile_functional(x, grid);
  PathFunctional negated = [f](const BrownianPath& p) { return -f(p); };
  EstimateReport neg =
      sweep_expectation(negated, functional_label(x), bounds, grid, scenarios, paths_per_scenario,
                        seed);
  // -E_upper[-X]: flip the envelope and restore the sign of every row.
  EstimateReport out = neg;
  out.upper = -neg.lower;
  out.lower = -neg.upper;
  out.argmax_scenario = neg.argmin_scenario;
  out.argmin_scenario = neg.argmax_scenario;
  for (auto& r : out.rows) r.mean = -r.mean;
  return out;
}

std::vector<ScenarioSpec> constant_sweep(const VolatilityBounds& bounds, int points) {
  if (points < 2) throw std::invalid_argument("constant_sweep: need at least 2 points");
  std::vector<ScenarioSpec> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    double sigma;
    if (i == 0)
      sigma = bounds.sigma_lo;
    else if (i == points - 1)
      sigma = bounds.sigma_hi;
    else
      sigma = bounds.sigma_lo + (bounds.sigma_hi - bounds.sigma_lo) * i / (points - 1);
    out.push_back(ConstantSpec{sigma});
  }
  return out;
}

MomentBoundReport moment_bound_check(const GridFunction& eta, const VolatilityBounds& bounds,
                                     const TimeGrid& grid,
                                     const std::vector<ScenarioSpec>& scenarios,
                                     std::size_t paths_per_scenario, std::uint64_t seed) {
  if (!(eta.grid == grid)) throw std::invalid_argument("moment_bound_check: eta grid mismatch");
  PathFunctional x = [eta](const BrownianPath& p) {
    const double v = ito_integral(eta, p);
    return v * v;
  };
  MomentBoundReport r;
  r.detail = sweep_expectation(x, "squared-ito", bounds, grid, scenarios, paths_per_scenario, seed);
  r.lhs = r.detail.upper;
  r.rhs = bounds.sigma_hi * bounds.sigma_hi * eta.l2_norm_squared();
  r.slack = r.lhs - r.rhs;
  r.std_error = r.detail.argmax_row().std_error;
  r.within_margin = r.slack <= r.se_multiplier * r.std_error;
  return r;
}

MomentBoundReport chaos_moment_bound_check(const GridFunctionSpec& f, int order,
                                           const VolatilityBounds& bounds, const TimeGrid& grid,
                                           const std::vector<ScenarioSpec>& scenarios,
                                           std::size_t paths_per_scenario, std::uint64_t seed) {
  if (order < 0 || order > 5)
    throw std::invalid_argument(
        "chaos_moment_bound_check: order above variance-growth guard (n <= 5)");
  GridFunction fg = f.instantiate(grid);
  PathFunctional x = [fg, order](const BrownianPath& p) {
    const double v = multiple_integral(fg, p, order);
    return v * v;
  };
  MomentBoundReport r;
  r.detail = sweep_expectation(x, "chaos:I" + std::to_string(order) + "^2", bounds, grid,
                               scenarios, paths_per_scenario, seed);
  r.lhs = r.detail.upper;
  r.rhs = std::pow(bounds.sigma_hi, 2 * order) * factorial(order) *
          std::pow(fg.l2_norm_squared(), order);
  r.slack = r.lhs - r.rhs;
  r.std_error = r.detail.argmax_row().std_error;
  r.within_margin = r.slack <= r.se_multiplier * r.std_error;
  return r;
}

}  // namespace gbm
