#pragma once

#include <iosfwd>
#include <vector>

#include "gbm/payoff.hpp"
#include "gbm/scenario.hpp"

namespace gbm {

// G(alpha) = (sigma_hi^2 alpha^+ - sigma_lo^2 alpha^-) / 2: the generator
// encoding the volatility interval.
double g_function(double alpha, const VolatilityBounds& bounds);

// Explicit finite-difference setup for u_t = G(u_xx) on [-L, L] x [0, T].
// space_steps must be even (so x = 0 is a node); the monotone-stencil CFL
// condition sigma_hi^2 * dt <= dx^2 is enforced, never silently violated.
struct PdeConfig {
  VolatilityBounds bounds;
  double horizon = 1.0;
  double half_width = 6.0;
  int space_steps = 600;
  int time_steps = 2400;

  double dx() const { return 2.0 * half_width / space_steps; }
  double dt() const { return horizon / time_steps; }
  double cfl_number() const { return 0.5 * bounds.sigma_hi * bounds.sigma_hi * dt() / (dx() * dx()); }

  // L = 6 sigma_hi sqrt(T) (tail mass beyond that is below every tolerance
  // used here) and the smallest CFL-respecting number of time steps.
  static PdeConfig standard(const VolatilityBounds& bounds, double horizon, int space_steps = 600);

  void validate() const;  // throws std::invalid_argument
};

struct PdeSolution {
  PdeConfig config;
  std::vector<double> x;  // space nodes
  std::vector<double> u;  // final profile u(T, .)
  double value_at_zero = 0.0;
};

// Marches u^{k+1}_j = u^k_j + dt * G(second difference / dx^2) from
// u(0,.) = phi with the boundary rows held at phi's values (phi extended
// linearly past the box, which the default box width makes immaterial).
// u(T, 0) estimates the upper expectation of phi(B_T).
PdeSolution solve_gheat(const Payoff& phi, const PdeConfig& config);

void write_profile_csv(std::ostream& os, const PdeSolution& solution);

// Classical E[phi(stddev * Z)], Z standard normal, by Gauss-Hermite
// quadrature on the probabilists' weight (nodes = roots of the degree-n
// Hermite polynomial, computed once per n and cached).
double gauss_hermite_expectation(const Payoff& phi, double stddev, int nodes = 160);

struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // normalized against the Gaussian weight
};
const GaussHermiteRule& gauss_hermite_rule(int n);

}  // namespace gbm
