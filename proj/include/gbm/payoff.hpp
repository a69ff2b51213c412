#pragma once

#include <string>
#include <vector>

namespace gbm {

// Terminal payoff catalog, shared by the Monte Carlo sweeps and the PDE
// solver so cross-checks evaluate the same function.
struct Payoff {
  enum class Kind { kLinear, kSquare, kNegSquare, kCall, kAbs, kPoly };

  Kind kind = Kind::kLinear;
  double strike = 0.0;               // call only
  std::vector<double> coefficients;  // poly only, c_0 + c_1 x + ...

  static Payoff linear() { return {Kind::kLinear}; }
  static Payoff square() { return {Kind::kSquare}; }
  static Payoff neg_square() { return {Kind::kNegSquare}; }
  static Payoff call(double strike) { return {Kind::kCall, strike}; }
  static Payoff abs() { return {Kind::kAbs}; }
  static Payoff poly(std::vector<double> coefficients);

  double operator()(double x) const;
  std::string label() const;
};

}  // namespace gbm
