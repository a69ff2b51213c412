#include "gbm/gheat.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

namespace gbm {

double g_function(double alpha, const VolatilityBounds& bounds) {
  const double pos = alpha > 0.0 ? alpha : 0.0;
  const double neg = alpha < 0.0 ? -alpha : 0.0;
  return 0.5 * (bounds.sigma_hi * bounds.sigma_hi * pos - bounds.sigma_lo * bounds.sigma_lo * neg);
}

PdeConfig PdeConfig::standard(const VolatilityBounds& bounds, double horizon, int space_steps) {
  PdeConfig cfg;
  cfg.bounds = bounds;
  cfg.horizon = horizon;
  cfg.half_width = 6.0 * bounds.sigma_hi * std::sqrt(horizon);
  cfg.space_steps = space_steps;
  const double dx = cfg.dx();
  const double s2 = bounds.sigma_hi * bounds.sigma_hi;
  cfg.time_steps = std::max(16, static_cast<int>(std::ceil(horizon * s2 / (dx * dx))));
  while (cfg.cfl_number() > 0.5) ++cfg.time_steps;
  return cfg;
}

void PdeConfig::validate() const {
  if (!(horizon > 0.0)) throw std::invalid_argument("pde: horizon must be positive");
  if (!(half_width > 0.0)) throw std::invalid_argument("pde: half width must be positive");
  if (space_steps < 4 || space_steps % 2 != 0)
    throw std::invalid_argument("pde: space_steps must be even and >= 4");
  if (time_steps < 1) throw std::invalid_argument("pde: time_steps must be >= 1");
  if (cfl_number() > 0.5) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "pde: CFL condition violated (number %.3g > 0.5)", cfl_number());
    throw std::invalid_argument(buf);
  }
}

PdeSolution solve_gheat(const Payoff& phi, const PdeConfig& config) {
  config.validate();
  const int m = config.space_steps;
  const double dx = config.dx();
  const double dt = config.dt();
  const double inv_dx2 = 1.0 / (dx * dx);

  PdeSolution sol;
  sol.config = config;
  sol.x.resize(m + 1);
  sol.u.resize(m + 1);
  for (int j = 0; j <= m; ++j) {
    sol.x[j] = -config.half_width + j * dx;
    sol.u[j] = phi(sol.x[j]);
  }

  // Boundary rows stay at phi's values in both buffers; only the interior
  // is rewritten each step.
  std::vector<double> next = sol.u;
  for (int k = 0; k < config.time_steps; ++k) {
    for (int j = 1; j < m; ++j) {
      const double d2 = (sol.u[j + 1] - 2.0 * sol.u[j] + sol.u[j - 1]) * inv_dx2;
      next[j] = sol.u[j] + dt * g_function(d2, config.bounds);
    }
    std::swap(sol.u, next);
  }
  sol.value_at_zero = sol.u[m / 2];
  return sol;
}

void write_profile_csv(std::ostream& os, const PdeSolution& solution) {
  os << "x,u\n";
  char buf[96];
  for (std::size_t j = 0; j < solution.x.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", solution.x[j], solution.u[j]);
    os << buf;
  }
}

namespace {

// Value of the degree-n probabilists' Hermite polynomial, scaled to dodge
// overflow: returns (v, e) with h_n(x) = v * 2^e.
struct Scaled {
  double value;
  int exponent;
};

Scaled hermite_value_scaled(int n, double x) {
  double hm1 = 0.0, h = 1.0;
  int e = 0;
  for (int k = 0; k < n; ++k) {
    const double hn = x * h - k * hm1;
    hm1 = h;
    h = hn;
    if (std::abs(h) > 0x1.0p+512) {
      h *= 0x1.0p-512;
      hm1 *= 0x1.0p-512;
      e += 512;
    }
  }
  return {h, e};
}

double hermite_sign(int n, double x) {
  const Scaled s = hermite_value_scaled(n, x);
  return s.value > 0 ? 1.0 : (s.value < 0 ? -1.0 : 0.0);
}

GaussHermiteRule build_rule(int n) {
  if (n < 2 || n > 512) throw std::invalid_argument("gauss-hermite: nodes must be in 2..512");

  // All roots lie inside (-2 sqrt(n), 2 sqrt(n)); scan for sign changes,
  // refine by bisection.
  const double bound = 2.0 * std::sqrt(static_cast<double>(n)) + 1.0;
  const int scan = 32 * n;
  std::vector<double> roots;
  roots.reserve(n);
  double xp = -bound, sp = hermite_sign(n, xp);
  for (int i = 1; i <= scan; ++i) {
    double xc = -bound + (2.0 * bound * i) / scan;
    double sc = hermite_sign(n, xc);
    while (sc == 0.0) {  // scan point dead on a root: nudge off it
      xc = std::nextafter(xc, bound);
      sc = hermite_sign(n, xc);
    }
    if (sp != sc) {
      double lo = xp, hi = xc;
      const double slo = sp;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double sm = hermite_sign(n, mid);
        if (sm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo)
          lo = mid;
        else
          hi = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    xp = xc;
    sp = sc;
  }
  if (static_cast<int>(roots.size()) != n)
    throw std::logic_error("gauss-hermite: root scan found " + std::to_string(roots.size()) +
                           " of " + std::to_string(n) + " roots");

  // Normalized weights w_i = n! / (n^2 h_{n-1}(x_i)^2), computed in logs
  // since h_{n-1} at the extreme roots overflows a double squared.
  GaussHermiteRule rule;
  rule.nodes = roots;
  rule.weights.resize(n);
  const double log_nfact = std::lgamma(static_cast<double>(n) + 1.0);
  const double log2 = std::log(2.0);
  for (int i = 0; i < n; ++i) {
    const Scaled s = hermite_value_scaled(n - 1, roots[i]);
    const double log_h = std::log(std::abs(s.value)) + s.exponent * log2;
    rule.weights[i] =
        std::exp(log_nfact - 2.0 * std::log(static_cast<double>(n)) - 2.0 * log_h);
  }

  double total = 0.0;
  for (double w : rule.weights) total += w;
  if (std::abs(total - 1.0) > 1e-10)
    throw std::logic_error("gauss-hermite: weights sum to " + std::to_string(total));
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double gauss_hermite_expectation(const Payoff& phi, double stddev, int nodes) {
  if (!(stddev >= 0.0)) throw std::invalid_argument("gauss-hermite: stddev must be >= 0");
  const GaussHermiteRule& rule = gauss_hermite_rule(nodes);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * phi(stddev * rule.nodes[i]);
  return acc;
}

}  // namespace gbm
