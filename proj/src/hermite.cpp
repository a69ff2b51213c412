#include "gbm/hermite.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace gbm::hermite {

namespace {

using wide = __int128;

void check_degree(int n) {
  if (n < 0) throw std::invalid_argument("hermite: degree must be nonnegative");
  if (n > kMaxDegree)
    throw std::domain_error("hermite: degree overflow (max supported degree is " +
                            std::to_string(kMaxDegree) + ", got " + std::to_string(n) + ")");
}

std::int64_t narrow(wide v) {
  if (v > wide(std::numeric_limits<std::int64_t>::max()) ||
      v < wide(std::numeric_limits<std::int64_t>::min()))
    throw std::domain_error("hermite: coefficient overflows int64");
  return static_cast<std::int64_t>(v);
}

wide factorial_wide(int n) {
  wide r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

// Coefficient table for h_0..h_kMaxDegree, built once. Safe for concurrent
// readers after initialization (magic static).
const std::vector<ChaosPolynomial>& table() {
  static const std::vector<ChaosPolynomial> t = [] {
    std::vector<std::vector<wide>> rows(kMaxDegree + 1);
    rows[0] = {1};
    rows[1] = {0, 1};
    for (int n = 2; n <= kMaxDegree; ++n) {
      std::vector<wide> c(n + 1, 0);
      for (int k = 0; k < n; ++k) c[k + 1] += rows[n - 1][k];
      for (int k = 0; k <= n - 2; ++k) c[k] -= wide(n - 1) * rows[n - 2][k];
      rows[n] = std::move(c);
    }
    std::vector<ChaosPolynomial> out(kMaxDegree + 1);
    for (int n = 0; n <= kMaxDegree; ++n) {
      out[n].degree = n;
      out[n].coeffs.resize(n + 1);
      for (int k = 0; k <= n; ++k) out[n].coeffs[k] = narrow(rows[n][k]);
    }
    return out;
  }();
  return t;
}

}  // namespace

ChaosPolynomial coeffs(int n) {
  check_degree(n);
  return table()[n];
}

ChaosPolynomial coeffs_explicit(int n) {
  check_degree(n);
  ChaosPolynomial p;
  p.degree = n;
  p.coeffs.assign(n + 1, 0);
  const wide nfact = factorial_wide(n);
  wide pow2 = 1;
  for (int m = 0; 2 * m <= n; ++m) {
    const wide den = pow2 * factorial_wide(m) * factorial_wide(n - 2 * m);
    if (nfact % den != 0)
      throw std::logic_error("hermite: explicit-sum term is not integral");
    const wide term = nfact / den;
    p.coeffs[n - 2 * m] = narrow(m % 2 == 0 ? term : -term);
    pow2 *= 2;
  }
  return p;
}

double eval(int n, double x) {
  check_degree(n);
  const auto& c = table()[n].coeffs;
  double acc = 0.0;
  for (int k = n; k >= 0; --k) acc = acc * x + static_cast<double>(c[k]);
  return acc;
}

double scaled_eval(int n, double x, double v) {
  check_degree(n);
  if (v < 0.0)
    throw std::domain_error("hermite: scaled_eval requires v >= 0 (quadratic variation cannot be negative)");
  const auto& c = table()[n].coeffs;
  // H_n(x,v) = sum over nonzero c_k of c_k * x^k * v^((n-k)/2).
  double acc = 0.0;
  for (int k = n; k >= 0; k -= 2) {
    double term = static_cast<double>(c[k]);
    for (int j = 0; j < k; ++j) term *= x;
    for (int j = 0; j < (n - k) / 2; ++j) term *= v;
    acc += term;
  }
  return acc;
}

}  // namespace gbm::hermite
