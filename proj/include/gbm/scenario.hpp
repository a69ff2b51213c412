#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace gbm {

// Volatility uncertainty interval [sigma_lo, sigma_hi], 0 <= lo <= hi < inf.
struct VolatilityBounds {
  double sigma_lo = 0.0;
  double sigma_hi = 1.0;

  VolatilityBounds() = default;
  VolatilityBounds(double lo, double hi);

  bool contains(double sigma) const { return sigma >= sigma_lo && sigma <= sigma_hi; }
};

// Uniform partition 0 = t_0 < ... < t_N = T of [0, T].
struct TimeGrid {
  double horizon = 1.0;
  int steps = 1;

  TimeGrid() = default;
  TimeGrid(double T, int N);

  double dt() const { return horizon / steps; }
  double time(int i) const { return i * dt(); }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.horizon == b.horizon && a.steps == b.steps;
  }
};

// Scenario descriptors: the admissible volatility controls swept over when
// estimating the sublinear expectation.
struct ConstantSpec {
  double sigma = 1.0;
};
struct PiecewiseSpec {
  // (fraction of [0,T], sigma) segments; fractions must sum to 1.
  std::vector<std::pair<double, double>> segments;
};
struct BangBangSpec {
  // Volatility takes only the extreme values, switching with probability
  // switch_prob at each step; the initial value is a fair draw.
  double switch_prob = 0.5;
};
using ScenarioSpec = std::variant<ConstantSpec, PiecewiseSpec, BangBangSpec>;

enum class ScenarioKind { kConstant, kPiecewise, kBangBangRandom };

std::string scenario_label(const ScenarioSpec& spec);

// One realized volatility trajectory on the grid: sigma[i] applies on
// [t_i, t_{i+1}). Adapted by construction (deterministic schedule, or
// randomized switching from a stream independent of the Gaussian draws).
struct ScenarioPath {
  TimeGrid grid;
  ScenarioKind kind = ScenarioKind::kConstant;
  std::vector<double> sigma;
  std::string label;
};

// Validates the descriptor against the bounds and materializes the
// trajectory. Bang-bang randomness comes from a dedicated stream derived
// from rng_seed. Throws std::invalid_argument on bounds violations or
// malformed segment fractions.
ScenarioPath build_scenario(const VolatilityBounds& bounds, const TimeGrid& grid,
                            const ScenarioSpec& spec, std::uint64_t rng_seed);

// One simulated path. Increment i is sigma[i]*sqrt(dt)*Z_i with Z_i standard
// normal; both the scenario quadratic variation (sum sigma_i^2 dt) and the
// realized one (sum dB_i^2) are carried as running series.
struct BrownianPath {
  ScenarioPath scenario;
  std::vector<double> dB;           // N increments
  std::vector<double> B;            // N+1 running values, B[0] = 0
  std::vector<double> qv_scenario;  // N+1 partial sums of sigma_i^2 dt
  std::vector<double> qv_realized;  // N+1 partial sums of dB_i^2

  const TimeGrid& grid() const { return scenario.grid; }
  double terminal() const { return B.back(); }
  double terminal_qv_realized() const { return qv_realized.back(); }
  double terminal_qv_scenario() const { return qv_scenario.back(); }
};

// Path `path_index` under `master_seed`; the normal stream is the SplitMix64
// substream (master_seed, path_index), so disjoint index ranges can be
// generated concurrently and the same inputs always reproduce the same path.
BrownianPath simulate_path(const ScenarioPath& scenario, std::uint64_t master_seed,
                           std::uint64_t path_index);

std::vector<BrownianPath> simulate_paths(const ScenarioPath& scenario, std::size_t count,
                                         std::uint64_t master_seed);

// The partial sums sum_{j<i} dB_j^2: nondecreasing, starts at 0.
std::vector<double> realized_qv_series(const BrownianPath& path);

// CSV with header t,B,qv_realized,sigma; one row per grid point, 17
// significant digits. sigma on the terminal row repeats the last interval's
// value (the trajectory is defined on intervals, not points).
void write_path_csv(std::ostream& os, const BrownianPath& path);

}  // namespace gbm
