#include "gbm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "gbm/rng.hpp"

namespace gbm {

namespace {

// Scenario randomness must not alias the per-path normal streams, which use
// substream indices 0..count-1; scenario streams live behind this tag.
constexpr std::uint64_t kScenarioStreamTag = 0x5CE4A210F00D4A11ULL;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

}  // namespace

VolatilityBounds::VolatilityBounds(double lo, double hi) : sigma_lo(lo), sigma_hi(hi) {
  if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi))
    throw std::invalid_argument("bounds: need 0 <= sigma_lo <= sigma_hi < inf");
  if (!(hi > 0.0)) throw std::invalid_argument("bounds: sigma_hi must be positive");
}

TimeGrid::TimeGrid(double T, int N) : horizon(T), steps(N) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("grid: horizon must be positive");
  if (N < 1) throw std::invalid_argument("grid: steps must be >= 1");
}

std::string scenario_label(const ScenarioSpec& spec) {
  if (const auto* c = std::get_if<ConstantSpec>(&spec)) return "constant(" + fmt(c->sigma) + ")";
  if (const auto* p = std::get_if<PiecewiseSpec>(&spec))
    return "piecewise(" + std::to_string(p->segments.size()) + " segments)";
  const auto& b = std::get<BangBangSpec>(spec);
  return "bang-bang(p=" + fmt(b.switch_prob) + ")";
}

ScenarioPath build_scenario(const VolatilityBounds& bounds, const TimeGrid& grid,
                            const ScenarioSpec& spec, std::uint64_t rng_seed) {
  const int n = grid.steps;
  ScenarioPath out;
  out.grid = grid;
  out.label = scenario_label(spec);

  if (const auto* c = std::get_if<ConstantSpec>(&spec)) {
    if (!bounds.contains(c->sigma))
      throw std::invalid_argument("scenario: constant sigma " + fmt(c->sigma) +
                                  " outside [" + fmt(bounds.sigma_lo) + ", " +
                                  fmt(bounds.sigma_hi) + "]");
    out.kind = ScenarioKind::kConstant;
    out.sigma.assign(n, c->sigma);
    return out;
  }

  if (const auto* p = std::get_if<PiecewiseSpec>(&spec)) {
    if (p->segments.empty()) throw std::invalid_argument("scenario: piecewise needs segments");
    double total = 0.0;
    for (const auto& [frac, sigma] : p->segments) {
      if (!(frac >= 0.0)) throw std::invalid_argument("scenario: segment fraction must be >= 0");
      if (!bounds.contains(sigma))
        throw std::invalid_argument("scenario: segment sigma " + fmt(sigma) + " outside [" +
                                    fmt(bounds.sigma_lo) + ", " + fmt(bounds.sigma_hi) + "]");
      total += frac;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw std::invalid_argument("scenario: segment fractions sum to " + fmt(total) + ", expected 1");
    out.kind = ScenarioKind::kPiecewise;
    out.sigma.assign(n, p->segments.back().second);
    double cum = 0.0;
    int lo = 0;
    for (const auto& [frac, sigma] : p->segments) {
      cum += frac;
      int hi = static_cast<int>(std::llround(cum * n));
      if (hi > n) hi = n;
      for (int i = lo; i < hi; ++i) out.sigma[i] = sigma;
      lo = hi;
    }
    return out;
  }

  const auto& b = std::get<BangBangSpec>(spec);
  if (!(b.switch_prob >= 0.0 && b.switch_prob <= 1.0))
    throw std::invalid_argument("scenario: switch probability must be in [0,1]");
  out.kind = ScenarioKind::kBangBangRandom;
  out.sigma.resize(n);
  rng::SplitMix64 gen(rng::substream_seed(rng_seed, kScenarioStreamTag));
  double cur = gen.next_open01() < 0.5 ? bounds.sigma_lo : bounds.sigma_hi;
  for (int i = 0; i < n; ++i) {
    out.sigma[i] = cur;
    if (gen.next_open01() < b.switch_prob)
      cur = (cur == bounds.sigma_lo) ? bounds.sigma_hi : bounds.sigma_lo;
  }
  return out;
}

BrownianPath simulate_path(const ScenarioPath& scenario, std::uint64_t master_seed,
                           std::uint64_t path_index) {
  const int n = scenario.grid.steps;
  const double dt = scenario.grid.dt();
  const double sqrt_dt = std::sqrt(dt);

  BrownianPath p;
  p.scenario = scenario;
  p.dB.resize(n);
  p.B.assign(n + 1, 0.0);
  p.qv_scenario.assign(n + 1, 0.0);
  p.qv_realized.assign(n + 1, 0.0);

  rng::NormalStream normals(rng::substream_seed(master_seed, path_index));
  for (int i = 0; i < n; ++i) {
    const double s = scenario.sigma[i];
    const double db = s * sqrt_dt * normals.next();
    p.dB[i] = db;
    p.B[i + 1] = p.B[i] + db;
    p.qv_scenario[i + 1] = p.qv_scenario[i] + s * s * dt;
    p.qv_realized[i + 1] = p.qv_realized[i] + db * db;
  }
  return p;
}

std::vector<BrownianPath> simulate_paths(const ScenarioPath& scenario, std::size_t count,
                                         std::uint64_t master_seed) {
  if (count < 1) throw std::invalid_argument("simulate_paths: count must be >= 1");
  std::vector<BrownianPath> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(simulate_path(scenario, master_seed, j));
  return out;
}

std::vector<double> realized_qv_series(const BrownianPath& path) { return path.qv_realized; }

void write_path_csv(std::ostream& os, const BrownianPath& path) {
  const int n = path.grid().steps;
  os << "t,B,qv_realized,sigma\n";
  char buf[160];
  for (int i = 0; i <= n; ++i) {
    const double sigma = path.scenario.sigma[i < n ? i : n - 1];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", path.grid().time(i), path.B[i],
                  path.qv_realized[i], sigma);
    os << buf;
  }
}

}  // namespace gbm
