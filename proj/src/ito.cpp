#include "gbm/ito.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gbm/hermite.hpp"
#include "gbm/rng.hpp"

namespace gbm {

namespace {

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* what) {
  if (!(a == b))
    throw std::invalid_argument(std::string(what) + ": grid mismatch (" +
                                std::to_string(a.steps) + " steps vs " + std::to_string(b.steps) +
                                ")");
}

void require_order(int order, int max_order, const char* what) {
  if (order < 0) throw std::invalid_argument(std::string(what) + ": order must be >= 0");
  if (order > max_order)
    throw std::invalid_argument(std::string(what) + ": order " + std::to_string(order) +
                                " above supported limit " + std::to_string(max_order));
}

}  // namespace

GridFunction GridFunction::constant(const TimeGrid& grid, double c) {
  return {grid, std::vector<double>(grid.steps, c)};
}

GridFunction GridFunction::affine(const TimeGrid& grid, double a, double b) {
  GridFunction f{grid, std::vector<double>(grid.steps)};
  for (int i = 0; i < grid.steps; ++i) f.values[i] = a + b * grid.time(i);
  return f;
}

GridFunction GridFunction::from_samples(const TimeGrid& grid, std::vector<double> values) {
  if (static_cast<int>(values.size()) != grid.steps)
    throw std::invalid_argument("grid function: expected " + std::to_string(grid.steps) +
                                " samples, got " + std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("grid function: samples must be finite");
  return {grid, std::move(values)};
}

GridFunction GridFunction::squared() const {
  GridFunction s{grid, values};
  for (double& v : s.values) v *= v;
  return s;
}

double GridFunction::l2_norm_squared() const {
  const double dt = grid.dt();
  double acc = 0.0;
  for (double v : values) acc += v * v * dt;
  return acc;
}

GridFunctionSpec GridFunctionSpec::affine(double a, double b) {
  GridFunctionSpec s;
  s.kind = Kind::kAffine;
  s.a = a;
  s.b = b;
  return s;
}

GridFunctionSpec GridFunctionSpec::from_samples(std::vector<double> values) {
  GridFunctionSpec s;
  s.kind = Kind::kSamples;
  s.samples = std::move(values);
  return s;
}

GridFunction GridFunctionSpec::instantiate(const TimeGrid& grid) const {
  switch (kind) {
    case Kind::kOne:
      return GridFunction::constant(grid, 1.0);
    case Kind::kAffine:
      return GridFunction::affine(grid, a, b);
    case Kind::kSamples:
      return GridFunction::from_samples(grid, samples);
  }
  throw std::logic_error("grid function spec: bad kind");
}

std::string GridFunctionSpec::label() const {
  switch (kind) {
    case Kind::kOne:
      return "one";
    case Kind::kAffine: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "affine(%g,%g)", a, b);
      return buf;
    }
    case Kind::kSamples:
      return "samples[" + std::to_string(samples.size()) + "]";
  }
  return "?";
}

SimplexFunction product_form(const GridFunction& f, int order) {
  require_order(order, 4, "product_form");
  if (order < 1) throw std::invalid_argument("product_form: order must be >= 1");
  SimplexFunction g;
  g.order = order;
  g.grid = f.grid;
  g.eval = [values = f.values](std::span<const int> idx) {
    double p = 1.0;
    for (int i : idx) p *= values[i];
    return p;
  };
  return g;
}

void check_symmetry(const SimplexFunction& g, std::uint64_t seed, int samples) {
  if (g.order < 1 || g.order > 4)
    throw std::invalid_argument("simplex function: order must be in 1..4");
  if (!g.eval) throw std::invalid_argument("simplex function: missing evaluator");
  if (g.order == 1) return;
  rng::SplitMix64 gen(seed);
  std::vector<int> idx(g.order);
  for (int s = 0; s < samples; ++s) {
    for (int& i : idx) i = static_cast<int>(gen.next() % static_cast<std::uint64_t>(g.grid.steps));
    const double ref = g.eval(idx);
    // A couple of independent shuffles per sample cover the permutation group
    // well enough to catch any real asymmetry.
    for (int rep = 0; rep < 2; ++rep) {
      for (int k = g.order - 1; k > 0; --k)
        std::swap(idx[k], idx[gen.next() % static_cast<std::uint64_t>(k + 1)]);
      const double perm = g.eval(idx);
      const double scale = std::max({1.0, std::abs(ref), std::abs(perm)});
      if (std::abs(perm - ref) > 1e-12 * scale)
        throw std::invalid_argument("simplex function: not symmetric under index permutation");
    }
  }
}

double ito_integral(const GridFunction& eta, const BrownianPath& path) {
  require_same_grid(eta.grid, path.grid(), "ito_integral");
  double acc = 0.0;
  for (int i = 0; i < eta.grid.steps; ++i) acc += eta.values[i] * path.dB[i];
  return acc;
}

double qv_integral(const GridFunction& eta, const BrownianPath& path, QvKind which) {
  require_same_grid(eta.grid, path.grid(), "qv_integral");
  double acc = 0.0;
  if (which == QvKind::kRealized) {
    for (int i = 0; i < eta.grid.steps; ++i) acc += eta.values[i] * path.dB[i] * path.dB[i];
  } else {
    const double dt = eta.grid.dt();
    for (int i = 0; i < eta.grid.steps; ++i) {
      const double s = path.scenario.sigma[i];
      acc += eta.values[i] * s * s * dt;
    }
  }
  return acc;
}

std::vector<double> iterated_products(const GridFunction& f, const BrownianPath& path,
                                      int max_order) {
  require_same_grid(f.grid, path.grid(), "iterated_product");
  require_order(max_order, hermite::kMaxDegree, "iterated_product");
  // X[k] holds the k-fold simplex sum over indices seen so far; updating k
  // downward keeps X[k-1] at its strictly-before-t_i value.
  std::vector<double> x(max_order + 1, 0.0);
  x[0] = 1.0;
  const int n = f.grid.steps;
  for (int i = 0; i < n; ++i) {
    const double w = f.values[i] * path.dB[i];
    for (int k = max_order; k >= 1; --k) x[k] += x[k - 1] * w;
  }
  return x;
}

double iterated_product(const GridFunction& f, const BrownianPath& path, int order) {
  return iterated_products(f, path, order)[order];
}

double iterated_general(const SimplexFunction& g, const BrownianPath& path) {
  require_same_grid(g.grid, path.grid(), "iterated_general");
  if (g.order < 1 || g.order > 4)
    throw std::invalid_argument("iterated_general: order must be in 1..4");
  const int n = g.grid.steps;
  if (n > 512)
    throw std::length_error("iterated_general: grid too fine for the naive simplex sum (N <= 512)");
  check_symmetry(g, /*seed=*/0x51135EEDULL, /*samples=*/32);

  const auto& dB = path.dB;
  double acc = 0.0;
  int idx[4] = {0, 0, 0, 0};
  switch (g.order) {
    case 1:
      for (int i = 0; i < n; ++i) {
        idx[0] = i;
        acc += g.eval(std::span<const int>(idx, 1)) * dB[i];
      }
      break;
    case 2:
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
          idx[0] = i;
          idx[1] = j;
          acc += g.eval(std::span<const int>(idx, 2)) * dB[i] * dB[j];
        }
      break;
    case 3:
      for (int k = 2; k < n; ++k)
        for (int j = 1; j < k; ++j)
          for (int i = 0; i < j; ++i) {
            idx[0] = i;
            idx[1] = j;
            idx[2] = k;
            acc += g.eval(std::span<const int>(idx, 3)) * dB[i] * dB[j] * dB[k];
          }
      break;
    case 4:
      for (int l = 3; l < n; ++l)
        for (int k = 2; k < l; ++k)
          for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i) {
              idx[0] = i;
              idx[1] = j;
              idx[2] = k;
              idx[3] = l;
              acc += g.eval(std::span<const int>(idx, 4)) * dB[i] * dB[j] * dB[k] * dB[l];
            }
      break;
  }
  return acc;
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double multiple_integral(const GridFunction& f, const BrownianPath& path, int order) {
  return factorial(order) * iterated_product(f, path, order);
}

double multiple_integral(const SimplexFunction& g, const BrownianPath& path) {
  return factorial(g.order) * iterated_general(g, path);
}

double hermite_closed_form(const GridFunction& f, const BrownianPath& path, int order,
                           QvKind which) {
  const double theta = ito_integral(f, path);
  const double norm_sq = qv_integral(f.squared(), path, which);
  if (norm_sq < 0.0)
    throw std::logic_error("hermite_closed_form: negative quadratic-variation integral");
  return hermite::scaled_eval(order, theta, norm_sq);
}

double recursion_residual(const GridFunction& f, const BrownianPath& path, int order,
                          RecursionSide side, QvKind which) {
  if (order < 2) throw std::invalid_argument("recursion_residual: order must be >= 2");
  const double theta = ito_integral(f, path);
  const double norm_sq = qv_integral(f.squared(), path, which);
  double in, in1, in2;
  if (side == RecursionSide::kClosedForm) {
    in = hermite::scaled_eval(order, theta, norm_sq);
    in1 = hermite::scaled_eval(order - 1, theta, norm_sq);
    in2 = hermite::scaled_eval(order - 2, theta, norm_sq);
  } else {
    in = multiple_integral(f, path, order);
    in1 = multiple_integral(f, path, order - 1);
    in2 = multiple_integral(f, path, order - 2);
  }
  return in - (theta * in1 - (order - 1) * norm_sq * in2);
}

double iterated_closed_form(const BrownianPath& path, int order, QvKind which) {
  require_order(order, hermite::kMaxDegree, "iterated_closed_form");
  const double b = path.terminal();
  const double qv =
      which == QvKind::kRealized ? path.terminal_qv_realized() : path.terminal_qv_scenario();
  double acc = 0.0;
  for (int m = 0; 2 * m <= order; ++m) {
    double term = (m % 2 == 0) ? 1.0 : -1.0;
    term /= std::pow(2.0, m) * factorial(m) * factorial(order - 2 * m);
    for (int j = 0; j < m; ++j) term *= qv;
    for (int j = 0; j < order - 2 * m; ++j) term *= b;
    acc += term;
  }
  return acc;
}

}  // namespace gbm
