#pragma once

#include <cstdint>
#include <vector>

namespace gbm::hermite {

// Largest degree representable with int64 coefficients. Above this the
// factorial terms leave the 64-bit range; callers wanting more must move
// to wide integers explicitly.
inline constexpr int kMaxDegree = 30;

// Probabilists' Hermite polynomial h_n as exact integer coefficients,
// h_n(x) = sum_k coeffs[k] * x^k. Monic, with the parity of n.
struct ChaosPolynomial {
  int degree = 0;
  std::vector<std::int64_t> coeffs;
};

// h_n built from h_0 = 1, h_1 = x by the three-term recurrence
// h_n(y) = y*h_{n-1}(y) - (n-1)*h_{n-2}(y). Throws std::domain_error
// ("degree overflow") for n > kMaxDegree, std::invalid_argument for n < 0.
ChaosPolynomial coeffs(int n);

// Same polynomial from the explicit factorial sum
//   h_n(x) = n! * sum_{m=0..n/2} (-1)^m x^(n-2m) / (2^m m! (n-2m)!),
// each term computed as an exact rational and checked to be integral.
ChaosPolynomial coeffs_explicit(int n);

// Horner evaluation of h_n at x (coefficients from a process-lifetime cache).
double eval(int n, double x);

// Homogeneous two-variable form
//   H_n(x, v) = sum_{m=0..n/2} n! (-1)^m v^m x^(n-2m) / (2^m m! (n-2m)!),
// equal to v^(n/2) h_n(x/sqrt(v)) for v > 0 and well defined at v = 0.
// Throws std::domain_error for v < 0.
double scaled_eval(int n, double x, double v);

}  // namespace gbm::hermite
