#include "gbm/payoff.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace gbm {

Payoff Payoff::poly(std::vector<double> coefficients) {
  if (coefficients.empty()) throw std::invalid_argument("payoff: poly needs coefficients");
  for (double c : coefficients)
    if (!std::isfinite(c)) throw std::invalid_argument("payoff: poly coefficients must be finite");
  Payoff p{Kind::kPoly};
  p.coefficients = std::move(coefficients);
  return p;
}

double Payoff::operator()(double x) const {
  switch (kind) {
    case Kind::kLinear:
      return x;
    case Kind::kSquare:
      return x * x;
    case Kind::kNegSquare:
      return -x * x;
    case Kind::kCall:
      return x > strike ? x - strike : 0.0;
    case Kind::kAbs:
      return std::abs(x);
    case Kind::kPoly: {
      double acc = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
  }
  throw std::logic_error("payoff: bad kind");
}

std::string Payoff::label() const {
  switch (kind) {
    case Kind::kLinear:
      return "linear";
    case Kind::kSquare:
      return "square";
    case Kind::kNegSquare:
      return "neg-square";
    case Kind::kCall: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "call(%g)", strike);
      return buf;
    }
    case Kind::kAbs:
      return "abs";
    case Kind::kPoly:
      return "poly[" + std::to_string(coefficients.size()) + "]";
  }
  return "?";
}

}  // namespace gbm
