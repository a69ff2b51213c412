#include "gbm/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "gbm/gheat.hpp"
#include "gbm/hermite.hpp"
#include "gbm/ito.hpp"
#include "gbm/rng.hpp"

namespace gbm {

namespace {

using nlohmann::json;

// Residuals this far below the working magnitude are reported as "exact":
// the discrete identity holds up to rounding and no convergence order is
// defined for it.
constexpr double kExactCutoff = 1e-13;

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  return out;
}

void print_check(const CheckResult& c) {
  std::printf("[%s] %-42s value=%-12.5g threshold=%-12.5g %s\n", c.pass ? "PASS" : "FAIL",
              c.name.c_str(), c.value, c.threshold, c.detail.c_str());
}

CheckResult& add_check(SuiteResult& suite, std::string name, bool pass, double value,
                       double threshold, std::string detail = "") {
  suite.checks.push_back({std::move(name), pass, value, threshold, std::move(detail)});
  print_check(suite.checks.back());
  return suite.checks.back();
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("config: cannot create output directory '" + cfg.out_dir + "'");
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text,
                SuiteResult& suite) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
  suite.report_files.push_back(path.string());
}

// Wall-clock metadata lives in a sidecar so the report itself is
// byte-reproducible for identical configs.
void write_meta_sidecar(const std::filesystem::path& report_path, SuiteResult& suite) {
  json meta;
  meta["report"] = report_path.filename().string();
  meta["generated_at_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count();
  std::filesystem::path p = report_path;
  p.replace_extension(".meta.json");
  std::ofstream out(p, std::ios::binary);
  out << meta.dump(2) << "\n";
}

json scenario_json(const ScenarioSpec& s) {
  json j;
  if (const auto* c = std::get_if<ConstantSpec>(&s)) {
    j["kind"] = "constant";
    j["sigma"] = c->sigma;
  } else if (const auto* p = std::get_if<PiecewiseSpec>(&s)) {
    j["kind"] = "piecewise";
    j["segments"] = json::array();
    for (const auto& [f, v] : p->segments) j["segments"].push_back({f, v});
  } else {
    j["kind"] = "bang-bang";
    j["switch_prob"] = std::get<BangBangSpec>(s).switch_prob;
  }
  return j;
}

json config_echo(const RunConfig& cfg) {
  json j;
  j["bounds"] = {{"sigma_lo", cfg.bounds.sigma_lo}, {"sigma_hi", cfg.bounds.sigma_hi}};
  j["horizon"] = cfg.horizon;
  j["grid_sizes"] = cfg.grid_sizes;
  j["f"] = cfg.f.label();
  j["chaos_orders"] = cfg.chaos_orders;
  j["paths_per_scenario"] = cfg.paths_per_scenario;
  j["seed"] = cfg.seed;
  j["scenarios"] = json::array();
  for (const auto& s : cfg.scenarios) j["scenarios"].push_back(scenario_json(s));
  j["thresholds"] = {{"identity_rel_rms", cfg.thresholds.identity_rel_rms},
                     {"min_order", cfg.thresholds.min_order},
                     {"closed_form_tol", cfg.thresholds.closed_form_tol},
                     {"corollary_tol", cfg.thresholds.corollary_tol},
                     {"se_multiplier", cfg.thresholds.se_multiplier},
                     {"pde_mc_rel_tol", cfg.thresholds.pde_mc_rel_tol}};
  return j;
}

json report_json(const EstimateReport& r, const RunConfig& cfg, const TimeGrid& grid) {
  json j;
  j["functional"] = r.functional;
  j["bounds"] = {{"sigma_lo", cfg.bounds.sigma_lo}, {"sigma_hi", cfg.bounds.sigma_hi}};
  j["grid"] = {{"horizon", grid.horizon}, {"steps", grid.steps}};
  j["upper"] = r.upper;
  j["lower"] = r.lower;
  j["argmax_scenario"] = r.argmax_scenario;
  j["argmin_scenario"] = r.argmin_scenario;
  j["paths_per_scenario"] = r.paths_per_scenario;
  j["seed"] = r.seed;
  j["scenarios"] = json::array();
  for (const auto& row : r.rows)
    j["scenarios"].push_back(
        {{"scenario", row.scenario}, {"mean", row.mean}, {"std_error", row.std_error}});
  return j;
}

// Per-(order, grid) residual statistics for the chaos identity and the
// discrete recursion, plus path maxima for the closed-form checks.
struct IdentityStats {
  int order = 0;
  int steps = 0;
  double rms_residual = 0.0;
  double rms_magnitude = 0.0;
  double recursion_rms = 0.0;        // discrete three-term recursion residual
  double closed_form_max = 0.0;      // scaled residual, closed-form recursion
  double corollary_max = 0.0;        // scaled residual, unit-integrand closed form

  bool exact() const { return rms_residual <= kExactCutoff * std::max(rms_magnitude, 1.0); }
  double rel() const { return rms_residual / std::max(rms_magnitude, 1e-300); }
  bool recursion_exact() const {
    return recursion_rms <= kExactCutoff * std::max(rms_magnitude, 1.0);
  }
  double recursion_rel() const { return recursion_rms / std::max(rms_magnitude, 1e-300); }
};

// One simulation pass per (grid size): every statistic for every requested
// order comes from the same path set.
std::vector<IdentityStats> identity_pass(const RunConfig& cfg, int steps,
                                         const ScenarioSpec& scenario_spec) {
  const TimeGrid grid(cfg.horizon, steps);
  const GridFunction f = cfg.f.instantiate(grid);
  const GridFunction f_sq = f.squared();
  const ScenarioPath scenario =
      build_scenario(cfg.bounds, grid, scenario_spec, rng::substream_seed(cfg.seed, 0));

  const int max_order = *std::max_element(cfg.chaos_orders.begin(), cfg.chaos_orders.end());
  std::vector<IdentityStats> stats;
  for (int n : cfg.chaos_orders) stats.push_back({n, steps});

  std::vector<double> sum_res2(cfg.chaos_orders.size(), 0.0);
  std::vector<double> sum_mag2(cfg.chaos_orders.size(), 0.0);
  std::vector<double> sum_rec2(cfg.chaos_orders.size(), 0.0);

  for (std::size_t j = 0; j < cfg.paths_per_scenario; ++j) {
    const BrownianPath path = simulate_path(scenario, cfg.seed, j);
    const double theta = ito_integral(f, path);
    const double norm_sq = qv_integral(f_sq, path, QvKind::kRealized);
    const std::vector<double> iter = iterated_products(f, path, max_order);
    const double b_t = path.terminal();
    const double qv_t = path.terminal_qv_realized();

    for (std::size_t k = 0; k < cfg.chaos_orders.size(); ++k) {
      const int n = cfg.chaos_orders[k];
      const double i_n = factorial(n) * iter[n];
      const double h_n = hermite::scaled_eval(n, theta, norm_sq);
      sum_res2[k] += (i_n - h_n) * (i_n - h_n);
      sum_mag2[k] += i_n * i_n;

      if (n >= 2) {
        const double i_n1 = factorial(n - 1) * iter[n - 1];
        const double i_n2 = factorial(n - 2) * iter[n - 2];
        const double rec = i_n - (theta * i_n1 - (n - 1) * norm_sq * i_n2);
        sum_rec2[k] += rec * rec;

        const double h_n1 = hermite::scaled_eval(n - 1, theta, norm_sq);
        const double h_n2 = hermite::scaled_eval(n - 2, theta, norm_sq);
        const double term1 = theta * h_n1;
        const double term2 = (n - 1) * norm_sq * h_n2;
        const double scale = std::max({1.0, std::abs(h_n), std::abs(term1), std::abs(term2)});
        stats[k].closed_form_max =
            std::max(stats[k].closed_form_max, std::abs(h_n - (term1 - term2)) / scale);
      }

      if (n <= hermite::kMaxDegree) {
        const double a = iterated_closed_form(path, n, QvKind::kRealized);
        const double b = hermite::scaled_eval(n, b_t, qv_t) / factorial(n);
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        stats[k].corollary_max = std::max(stats[k].corollary_max, std::abs(a - b) / scale);
      }
    }
  }

  const double inv_paths = 1.0 / static_cast<double>(cfg.paths_per_scenario);
  for (std::size_t k = 0; k < cfg.chaos_orders.size(); ++k) {
    stats[k].rms_residual = std::sqrt(sum_res2[k] * inv_paths);
    stats[k].rms_magnitude = std::sqrt(sum_mag2[k] * inv_paths);
    stats[k].recursion_rms = std::sqrt(sum_rec2[k] * inv_paths);
  }
  return stats;
}

double order_between(double err_coarse, int n_coarse, double err_fine, int n_fine) {
  return (std::log2(err_coarse) - std::log2(err_fine)) /
         (std::log2(static_cast<double>(n_fine)) - std::log2(static_cast<double>(n_coarse)));
}

std::string identity_csv(const std::vector<std::vector<IdentityStats>>& per_grid,
                         const RunConfig& cfg, bool recursion) {
  std::string csv = "order,steps,rms_residual,rms_magnitude,relative,empirical_order\n";
  for (std::size_t k = 0; k < cfg.chaos_orders.size(); ++k) {
    for (std::size_t g = 0; g < per_grid.size(); ++g) {
      const IdentityStats& s = per_grid[g][k];
      const double res = recursion ? s.recursion_rms : s.rms_residual;
      const bool exact = recursion ? s.recursion_exact() : s.exact();
      std::string order_col = "";
      if (g > 0) {
        const IdentityStats& p = per_grid[g - 1][k];
        const double prev = recursion ? p.recursion_rms : p.rms_residual;
        const bool prev_exact = recursion ? p.recursion_exact() : p.exact();
        order_col = (exact || prev_exact)
                        ? "exact"
                        : num(order_between(prev, p.steps, res, s.steps));
      }
      csv += std::to_string(s.order) + "," + std::to_string(s.steps) + "," + num(res) + "," +
             num(s.rms_magnitude) + "," + num(exact ? 0.0 : res / std::max(s.rms_magnitude, 1e-300)) +
             "," + order_col + "\n";
    }
  }
  return csv;
}

json identity_table_json(const std::vector<std::vector<IdentityStats>>& per_grid,
                         const RunConfig& cfg, bool recursion) {
  json rows = json::array();
  for (std::size_t k = 0; k < cfg.chaos_orders.size(); ++k)
    for (std::size_t g = 0; g < per_grid.size(); ++g) {
      const IdentityStats& s = per_grid[g][k];
      const double res = recursion ? s.recursion_rms : s.rms_residual;
      rows.push_back({{"order", s.order},
                      {"steps", s.steps},
                      {"rms_residual", res},
                      {"rms_magnitude", s.rms_magnitude},
                      {"exact", recursion ? s.recursion_exact() : s.exact()}});
    }
  return rows;
}

// Identity / recursion checks share the convergence-regime logic: relative
// RMS at the finest grid under the threshold, and empirical order at least
// min_order between successive grids (exact rows pass outright).
void convergence_checks(SuiteResult& suite, const std::string& prefix,
                        const std::vector<std::vector<IdentityStats>>& per_grid,
                        const RunConfig& cfg, bool recursion) {
  for (std::size_t k = 0; k < cfg.chaos_orders.size(); ++k) {
    const int n = cfg.chaos_orders[k];
    if (recursion && n < 2) continue;
    const IdentityStats& finest = per_grid.back()[k];
    const bool exact = recursion ? finest.recursion_exact() : finest.exact();
    const double rel = recursion ? finest.recursion_rel() : finest.rel();
    const std::string base = prefix + ".n" + std::to_string(n);
    add_check(suite, base + ".rel_rms", exact || rel <= cfg.thresholds.identity_rel_rms,
              exact ? 0.0 : rel, cfg.thresholds.identity_rel_rms,
              exact ? "exact at machine precision" : "at N=" + std::to_string(finest.steps));

    if (per_grid.size() < 2) continue;
    double min_order = 1e300;
    bool any_exact = false;
    for (std::size_t g = 1; g < per_grid.size(); ++g) {
      const IdentityStats& a = per_grid[g - 1][k];
      const IdentityStats& b = per_grid[g][k];
      const bool ea = recursion ? a.recursion_exact() : a.exact();
      const bool eb = recursion ? b.recursion_exact() : b.exact();
      if (ea || eb) {
        any_exact = true;
        continue;
      }
      min_order = std::min(min_order, order_between(recursion ? a.recursion_rms : a.rms_residual,
                                                    a.steps,
                                                    recursion ? b.recursion_rms : b.rms_residual,
                                                    b.steps));
    }
    if (min_order == 1e300) {
      add_check(suite, base + ".order", true, 0.0, cfg.thresholds.min_order,
                "exact at machine precision");
    } else {
      add_check(suite, base + ".order", min_order >= cfg.thresholds.min_order, min_order,
                cfg.thresholds.min_order, any_exact ? "some grids exact" : "");
    }
  }
}

void moment_bound_rows(SuiteResult& suite, json& table, std::string& csv, const std::string& name,
                       const MomentBoundReport& r, double se_mult) {
  add_check(suite, name, r.within_margin, r.slack, se_mult * r.std_error,
            "lhs=" + num(r.lhs) + " rhs=" + num(r.rhs) + " se=" + num(r.std_error));
  table.push_back({{"check", name},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"slack", r.slack},
                   {"std_error", r.std_error},
                   {"argmax_scenario", r.detail.argmax_scenario},
                   {"pass", r.within_margin}});
  csv += name + "," + num(r.lhs) + "," + num(r.rhs) + "," + num(r.slack) + "," +
         num(r.std_error) + "," + (r.within_margin ? "pass" : "fail") + "\n";
}

PdeConfig pde_config_from(const RunConfig& cfg) {
  PdeConfig pde = PdeConfig::standard(cfg.bounds, cfg.horizon, cfg.pde.space_steps);
  if (cfg.pde.half_width) {
    pde.half_width = *cfg.pde.half_width;
    // Recompute the time-step count for the narrower/wider box.
    const double dx = pde.dx();
    const double s2 = cfg.bounds.sigma_hi * cfg.bounds.sigma_hi;
    pde.time_steps = std::max(16, static_cast<int>(std::ceil(pde.horizon * s2 / (dx * dx))));
    while (pde.cfl_number() > 0.5) ++pde.time_steps;
  }
  if (cfg.pde.time_steps) pde.time_steps = *cfg.pde.time_steps;
  return pde;
}

}  // namespace

SuiteResult run_verify(const RunConfig& cfg) {
  SuiteResult suite;
  const auto out_dir = ensure_out_dir(cfg);
  json report;
  report["report_version"] = 1;
  report["suite"] = "verify";
  report["config"] = config_echo(cfg);

  // --- chaos identity, recursion, closed-form tables ---
  std::vector<std::vector<IdentityStats>> per_grid;
  bool identity_ok = true;
  try {
    for (int steps : cfg.grid_sizes)
      per_grid.push_back(identity_pass(cfg, steps, cfg.scenarios.front()));
  } catch (const std::exception& e) {
    identity_ok = false;
    add_check(suite, "identity.compute", false, 0.0, 0.0, e.what());
  }

  if (identity_ok) {
    convergence_checks(suite, "identity", per_grid, cfg, /*recursion=*/false);
    convergence_checks(suite, "recursion.discrete", per_grid, cfg, /*recursion=*/true);
    for (std::size_t k = 0; k < cfg.chaos_orders.size(); ++k) {
      const int n = cfg.chaos_orders[k];
      if (n >= 2) {
        double worst = 0.0;
        for (const auto& g : per_grid) worst = std::max(worst, g[k].closed_form_max);
        add_check(suite, "recursion.closed_form.n" + std::to_string(n),
                  worst <= cfg.thresholds.closed_form_tol, worst, cfg.thresholds.closed_form_tol);
      }
      double worst_cor = 0.0;
      for (const auto& g : per_grid) worst_cor = std::max(worst_cor, g[k].corollary_max);
      add_check(suite, "corollary.n" + std::to_string(n), worst_cor <= cfg.thresholds.corollary_tol,
                worst_cor, cfg.thresholds.corollary_tol);
    }

    report["tables"]["identity"] = identity_table_json(per_grid, cfg, false);
    report["tables"]["recursion_discrete"] = identity_table_json(per_grid, cfg, true);
    if (cfg.emit_csv) {
      write_text(out_dir / "verify_identity.csv", identity_csv(per_grid, cfg, false), suite);
      write_text(out_dir / "verify_recursion.csv", identity_csv(per_grid, cfg, true), suite);
    }
  }

  // --- moment bounds (simple-process and chaos) ---
  {
    const TimeGrid grid(cfg.horizon, cfg.grid_sizes.back());
    json table = json::array();
    std::string csv = "check,lhs,rhs,slack,std_error,result\n";
    try {
      const auto one = GridFunction::constant(grid, 1.0);
      const auto ramp = GridFunction::affine(grid, 0.0, 1.0);
      moment_bound_rows(suite, table, csv, "moment.eta-one",
                        moment_bound_check(one, cfg.bounds, grid, cfg.scenarios,
                                           cfg.paths_per_scenario, cfg.seed),
                        cfg.thresholds.se_multiplier);
      moment_bound_rows(suite, table, csv, "moment.eta-ramp",
                        moment_bound_check(ramp, cfg.bounds, grid, cfg.scenarios,
                                           cfg.paths_per_scenario, cfg.seed),
                        cfg.thresholds.se_multiplier);
      for (int n = 1; n <= 3; ++n)
        moment_bound_rows(suite, table, csv, "moment.chaos-n" + std::to_string(n),
                          chaos_moment_bound_check(cfg.f, n, cfg.bounds, grid, cfg.scenarios,
                                                   cfg.paths_per_scenario, cfg.seed),
                          cfg.thresholds.se_multiplier);
    } catch (const std::exception& e) {
      add_check(suite, "moment.compute", false, 0.0, 0.0, e.what());
    }
    report["tables"]["moment_bounds"] = table;
    if (cfg.emit_csv) write_text(out_dir / "verify_moment_bounds.csv", csv, suite);
  }

  // --- PDE vs Monte Carlo cross-check on the payoff catalog ---
  {
    const TimeGrid grid(cfg.horizon, cfg.grid_sizes.back());
    json table = json::array();
    std::string csv = "payoff,pde_value,mc_upper,abs_diff,tolerance,std_error,result\n";
    try {
      const PdeConfig pde_cfg = pde_config_from(cfg);
      for (const Payoff& phi : cfg.payoffs) {
        const PdeSolution sol = solve_gheat(phi, pde_cfg);
        const EstimateReport mc = upper_expectation(TerminalFunctional{phi}, cfg.bounds, grid,
                                                    cfg.scenarios, cfg.paths_per_scenario, cfg.seed);
        const double se = mc.argmax_row().std_error;
        const double diff = std::abs(sol.value_at_zero - mc.upper);
        const double tol = cfg.thresholds.pde_mc_rel_tol *
                               std::max(std::abs(sol.value_at_zero), std::abs(mc.upper)) +
                           cfg.thresholds.se_multiplier * se;
        const bool pass = diff <= tol;
        add_check(suite, "pde-cross." + phi.label(), pass, diff, tol,
                  "pde=" + num(sol.value_at_zero) + " mc=" + num(mc.upper));
        table.push_back({{"payoff", phi.label()},
                         {"pde_value", sol.value_at_zero},
                         {"mc_upper", mc.upper},
                         {"abs_diff", diff},
                         {"tolerance", tol},
                         {"std_error", se},
                         {"pass", pass}});
        csv += phi.label() + "," + num(sol.value_at_zero) + "," + num(mc.upper) + "," + num(diff) +
               "," + num(tol) + "," + num(se) + "," + (pass ? "pass" : "fail") + "\n";
      }
    } catch (const std::exception& e) {
      add_check(suite, "pde-cross.compute", false, 0.0, 0.0, e.what());
    }
    report["tables"]["pde_cross"] = table;
    if (cfg.emit_csv) write_text(out_dir / "verify_pde_cross.csv", csv, suite);
  }

  json checks = json::array();
  int failed = 0;
  for (const auto& c : suite.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"detail", c.detail}});
    if (!c.pass) ++failed;
  }
  report["checks"] = checks;
  report["failed_checks"] = failed;

  if (cfg.emit_json) {
    const auto path = out_dir / "verify_report.json";
    write_text(path, report.dump(2) + "\n", suite);
    write_meta_sidecar(path, suite);
  }
  std::printf("verify: %zu checks, %d failed\n", suite.checks.size(), failed);
  return suite;
}

SuiteResult run_convergence(const RunConfig& cfg) {
  if (cfg.grid_sizes.size() < 3)
    throw ConfigError("config: grid_sizes: convergence study needs at least 3 grid sizes");
  SuiteResult suite;
  const auto out_dir = ensure_out_dir(cfg);

  std::vector<std::vector<IdentityStats>> per_grid;
  for (int steps : cfg.grid_sizes)
    per_grid.push_back(identity_pass(cfg, steps, cfg.scenarios.front()));

  convergence_checks(suite, "convergence", per_grid, cfg, /*recursion=*/false);

  if (cfg.emit_csv)
    write_text(out_dir / "convergence.csv", identity_csv(per_grid, cfg, false), suite);
  if (cfg.emit_json) {
    json report;
    report["report_version"] = 1;
    report["suite"] = "convergence";
    report["config"] = config_echo(cfg);
    report["tables"]["identity"] = identity_table_json(per_grid, cfg, false);
    json checks = json::array();
    for (const auto& c : suite.checks)
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}});
    report["checks"] = checks;
    const auto path = out_dir / "convergence_report.json";
    write_text(path, report.dump(2) + "\n", suite);
    write_meta_sidecar(path, suite);
  }
  return suite;
}

SuiteResult run_expectation(const RunConfig& cfg) {
  SuiteResult suite;
  const auto out_dir = ensure_out_dir(cfg);
  const TimeGrid grid(cfg.horizon, cfg.grid_sizes.back());

  json reports = json::array();
  std::string csv = "functional,scenario,mean,std_error,upper,lower\n";
  for (const auto& x : cfg.functionals) {
    const EstimateReport r = upper_expectation(x, cfg.bounds, grid, cfg.scenarios,
                                               cfg.paths_per_scenario, cfg.seed);
    reports.push_back(report_json(r, cfg, grid));
    for (const auto& row : r.rows)
      csv += r.functional + "," + row.scenario + "," + num(row.mean) + "," + num(row.std_error) +
             "," + num(r.upper) + "," + num(r.lower) + "\n";
    add_check(suite, "expectation." + r.functional, true, r.upper, r.upper,
              "upper=" + num(r.upper) + " lower=" + num(r.lower) + " argmax=" + r.argmax_scenario);
  }

  if (cfg.emit_json) {
    json report;
    report["report_version"] = 1;
    report["suite"] = "expectation";
    report["config"] = config_echo(cfg);
    report["estimates"] = reports;
    const auto path = out_dir / "expectation_report.json";
    write_text(path, report.dump(2) + "\n", suite);
    write_meta_sidecar(path, suite);
  }
  if (cfg.emit_csv) write_text(out_dir / "expectation_rows.csv", csv, suite);
  return suite;
}

SuiteResult run_gheat(const RunConfig& cfg) {
  SuiteResult suite;
  const auto out_dir = ensure_out_dir(cfg);
  const PdeConfig pde_cfg = pde_config_from(cfg);

  json values = json::array();
  for (const Payoff& phi : cfg.payoffs) {
    const PdeSolution sol = solve_gheat(phi, pde_cfg);
    values.push_back({{"payoff", phi.label()},
                      {"value_at_zero", sol.value_at_zero},
                      {"half_width", pde_cfg.half_width},
                      {"space_steps", pde_cfg.space_steps},
                      {"time_steps", pde_cfg.time_steps}});
    add_check(suite, "gheat." + phi.label(), true, sol.value_at_zero, sol.value_at_zero,
              "u(T,0)=" + num(sol.value_at_zero));
    if (cfg.emit_csv) {
      std::ofstream out(out_dir / ("gheat_profile_" + sanitize(phi.label()) + ".csv"),
                        std::ios::binary);
      write_profile_csv(out, sol);
      suite.report_files.push_back((out_dir / ("gheat_profile_" + sanitize(phi.label()) + ".csv")).string());
    }
  }

  if (cfg.emit_json) {
    json report;
    report["report_version"] = 1;
    report["suite"] = "gheat";
    report["config"] = config_echo(cfg);
    report["values"] = values;
    const auto path = out_dir / "gheat_report.json";
    write_text(path, report.dump(2) + "\n", suite);
    write_meta_sidecar(path, suite);
  }
  return suite;
}

SuiteResult run_hermite_table(int max_degree, const std::string& out_dir, bool to_stdout) {
  SuiteResult suite;
  std::string csv = "degree,power,coefficient\n";
  for (int n = 0; n <= max_degree; ++n) {
    const hermite::ChaosPolynomial p = hermite::coeffs(n);  // throws above the cap
    for (int k = 0; k <= n; ++k)
      csv += std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(p.coeffs[k]) + "\n";
  }
  if (to_stdout) std::fputs(csv.c_str(), stdout);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / "hermite_table.csv", std::ios::binary);
    out << csv;
    suite.report_files.push_back((std::filesystem::path(out_dir) / "hermite_table.csv").string());
  }
  add_check(suite, "hermite-table", true, max_degree, hermite::kMaxDegree);
  return suite;
}

}  // namespace gbm
