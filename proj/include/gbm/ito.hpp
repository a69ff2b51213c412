#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gbm/scenario.hpp"

namespace gbm {

// Deterministic simple integrand: values[i] = f(t_i), used on [t_i, t_{i+1}).
// Left-endpoint sampling keeps every integral non-anticipating.
struct GridFunction {
  TimeGrid grid;
  std::vector<double> values;  // length N

  static GridFunction constant(const TimeGrid& grid, double c);
  static GridFunction affine(const TimeGrid& grid, double a, double b);  // a + b*t
  static GridFunction from_samples(const TimeGrid& grid, std::vector<double> values);

  GridFunction squared() const;

  // Left-endpoint quadrature of f^2 dt (the deterministic L2 norm squared).
  double l2_norm_squared() const;
};

// Named integrand descriptor, resolvable on any grid. Shared by the
// expectation sweeps and the CLI config.
struct GridFunctionSpec {
  enum class Kind { kOne, kAffine, kSamples };
  Kind kind = Kind::kOne;
  double a = 1.0;  // affine: a + b*t
  double b = 0.0;
  std::vector<double> samples;

  static GridFunctionSpec one() { return {}; }
  static GridFunctionSpec affine(double a, double b);
  static GridFunctionSpec from_samples(std::vector<double> values);

  GridFunction instantiate(const TimeGrid& grid) const;
  std::string label() const;
};

// Symmetric integrand on grid nodes for the n-fold simplex sum: eval gets n
// grid indices (i_1..i_n) and returns g(t_{i_1},...,t_{i_n}). Total on all
// index tuples; symmetry is checked on sampled tuples before use.
struct SimplexFunction {
  int order = 1;  // 1..4
  TimeGrid grid;
  std::function<double(std::span<const int>)> eval;
};

SimplexFunction product_form(const GridFunction& f, int order);

// Samples random index tuples and compares eval under permutations; throws
// std::invalid_argument on asymmetry beyond 1e-12 relative.
void check_symmetry(const SimplexFunction& g, std::uint64_t seed, int samples);

enum class QvKind { kRealized, kScenario };
enum class RecursionSide { kClosedForm, kDiscrete };

// sum_j eta_j * dB_j. Throws on grid mismatch.
double ito_integral(const GridFunction& eta, const BrownianPath& path);

// sum_j eta_j * d<B>_j with d<B>_j = dB_j^2 (realized) or sigma_j^2 dt
// (scenario).
double qv_integral(const GridFunction& eta, const BrownianPath& path, QvKind which);

// n-fold iterated integral J_n of the product integrand f(t_1)...f(t_n) over
// the discrete simplex i_1 < ... < i_n, via the running recursion
// X_k <- X_k + X_{k-1} * f_i * dB_i (k descending). O(N*n). J_0 = 1.
double iterated_product(const GridFunction& f, const BrownianPath& path, int order);

// All of J_0..J_max_order from one pass of the same recursion.
std::vector<double> iterated_products(const GridFunction& f, const BrownianPath& path,
                                      int max_order);

// Naive simplex sum over i_1 < ... < i_n for general symmetric g; the O(N^n)
// oracle for iterated_product. Guards: order <= 4, N <= 512.
double iterated_general(const SimplexFunction& g, const BrownianPath& path);

// Multiple integral I_n = n! * J_n.
double multiple_integral(const GridFunction& f, const BrownianPath& path, int order);
double multiple_integral(const SimplexFunction& g, const BrownianPath& path);

// Closed-form side of the chaos identity: H_n(theta_T, ||f||_T^2) with
// theta_T = ito_integral(f) and ||f||_T^2 = qv_integral(f^2). Well defined
// when ||f||_T = 0.
double hermite_closed_form(const GridFunction& f, const BrownianPath& path, int order,
                           QvKind which);

// Residual of the three-term recursion
//   I_n - [theta_T * I_{n-1} - (n-1) * ||f||_T^2 * I_{n-2}],
// with the I_k taken from the closed form or from the discrete iterated
// sums, per `side`. n >= 2.
double recursion_residual(const GridFunction& f, const BrownianPath& path, int order,
                          RecursionSide side, QvKind which = QvKind::kRealized);

// Closed form for the unit-integrand iterated integral J_n:
//   sum_{m=0..n/2} (-1)^m / (2^m m! (n-2m)!) * <B>_T^m * B_T^(n-2m).
double iterated_closed_form(const BrownianPath& path, int order, QvKind which);

double factorial(int n);

}  // namespace gbm
