#include "gbm/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gbm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
  if (!obj.contains(key)) fail(path + "." + key, "missing");
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& path, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number()) fail(path + "." + key, "expected a number");
  return obj[key].get<double>();
}

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

ScenarioSpec parse_scenario(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail(path + ".kind", "missing or not a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    require_keys(j, path, {"kind", "sigma"});
    return ConstantSpec{get_number(j, path, "sigma")};
  }
  if (kind == "piecewise") {
    require_keys(j, path, {"kind", "segments"});
    if (!j.contains("segments") || !j["segments"].is_array() || j["segments"].empty())
      fail(path + ".segments", "expected a nonempty array of [fraction, sigma] pairs");
    PiecewiseSpec spec;
    for (std::size_t i = 0; i < j["segments"].size(); ++i) {
      const auto& seg = j["segments"][i];
      const std::string spath = path + ".segments[" + std::to_string(i) + "]";
      if (!seg.is_array() || seg.size() != 2 || !seg[0].is_number() || !seg[1].is_number())
        fail(spath, "expected [fraction, sigma]");
      spec.segments.emplace_back(seg[0].get<double>(), seg[1].get<double>());
    }
    return spec;
  }
  if (kind == "bang-bang") {
    require_keys(j, path, {"kind", "switch_prob"});
    return BangBangSpec{get_number(j, path, "switch_prob")};
  }
  fail(path + ".kind", "unknown scenario kind '" + kind + "'");
}

GridFunctionSpec parse_function(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("name") || !j["name"].is_string()) fail(path + ".name", "missing or not a string");
  const std::string name = j["name"].get<std::string>();
  if (name == "one") {
    require_keys(j, path, {"name"});
    return GridFunctionSpec::one();
  }
  if (name == "affine") {
    require_keys(j, path, {"name", "a", "b"});
    return GridFunctionSpec::affine(get_number(j, path, "a"), get_number(j, path, "b"));
  }
  if (name == "samples") {
    require_keys(j, path, {"name", "values"});
    if (!j.contains("values") || !j["values"].is_array() || j["values"].empty())
      fail(path + ".values", "expected a nonempty number array");
    std::vector<double> values;
    for (const auto& v : j["values"]) {
      if (!v.is_number()) fail(path + ".values", "expected numbers");
      values.push_back(v.get<double>());
    }
    return GridFunctionSpec::from_samples(std::move(values));
  }
  fail(path + ".name", "unknown integrand '" + name + "' (use one | affine | samples)");
}

Payoff parse_payoff(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail(path + ".kind", "missing or not a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "linear") {
    require_keys(j, path, {"kind"});
    return Payoff::linear();
  }
  if (kind == "square") {
    require_keys(j, path, {"kind"});
    return Payoff::square();
  }
  if (kind == "neg-square") {
    require_keys(j, path, {"kind"});
    return Payoff::neg_square();
  }
  if (kind == "abs") {
    require_keys(j, path, {"kind"});
    return Payoff::abs();
  }
  if (kind == "call") {
    require_keys(j, path, {"kind", "strike"});
    return Payoff::call(get_number(j, path, "strike"));
  }
  if (kind == "poly") {
    require_keys(j, path, {"kind", "coefficients"});
    if (!j.contains("coefficients") || !j["coefficients"].is_array())
      fail(path + ".coefficients", "expected a number array");
    std::vector<double> c;
    for (const auto& v : j["coefficients"]) {
      if (!v.is_number()) fail(path + ".coefficients", "expected numbers");
      c.push_back(v.get<double>());
    }
    try {
      return Payoff::poly(std::move(c));
    } catch (const std::invalid_argument& e) {
      fail(path + ".coefficients", e.what());
    }
  }
  fail(path + ".kind", "unknown payoff kind '" + kind + "'");
}

FunctionalSpec parse_functional(const json& j, const std::string& path,
                                const GridFunctionSpec& default_f) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("type") || !j["type"].is_string()) fail(path + ".type", "missing or not a string");
  const std::string type = j["type"].get<std::string>();
  if (type == "terminal") {
    require_keys(j, path, {"type", "payoff"});
    if (!j.contains("payoff")) fail(path + ".payoff", "missing");
    return TerminalFunctional{parse_payoff(j["payoff"], path + ".payoff")};
  }
  if (type == "chaos") {
    require_keys(j, path, {"type", "order", "f"});
    const double order = get_number(j, path, "order");
    if (order != std::floor(order) || order < 0) fail(path + ".order", "expected a nonnegative integer");
    GridFunctionSpec f = j.contains("f") ? parse_function(j["f"], path + ".f") : default_f;
    return ChaosFunctional{std::move(f), static_cast<int>(order)};
  }
  if (type == "squared-ito") {
    require_keys(j, path, {"type", "eta"});
    GridFunctionSpec eta = j.contains("eta") ? parse_function(j["eta"], path + ".eta") : default_f;
    return SquaredItoFunctional{std::move(eta)};
  }
  fail(path + ".type", "unknown functional type '" + type + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");

  require_keys(doc, "", {"bounds", "horizon", "grid_sizes", "scenarios", "f", "chaos_orders",
                         "paths_per_scenario", "seed", "out_dir", "report_formats", "payoffs",
                         "functionals", "thresholds", "pde"});

  RunConfig cfg;

  // bounds
  if (!doc.contains("bounds") || !doc["bounds"].is_object())
    fail("bounds", "missing object with sigma_lo, sigma_hi");
  require_keys(doc["bounds"], "bounds", {"sigma_lo", "sigma_hi"});
  const double lo = get_number(doc["bounds"], "bounds", "sigma_lo");
  const double hi = get_number(doc["bounds"], "bounds", "sigma_hi");
  try {
    cfg.bounds = VolatilityBounds(lo, hi);
  } catch (const std::invalid_argument& e) {
    fail("bounds", e.what());
  }

  cfg.horizon = get_number(doc, "", "horizon");
  if (!(cfg.horizon > 0)) fail("horizon", "must be positive");

  if (doc.contains("grid_sizes")) {
    if (!doc["grid_sizes"].is_array() || doc["grid_sizes"].empty())
      fail("grid_sizes", "expected a nonempty integer array");
    cfg.grid_sizes.clear();
    for (std::size_t i = 0; i < doc["grid_sizes"].size(); ++i) {
      const auto& v = doc["grid_sizes"][i];
      if (!v.is_number_integer() || !is_power_of_two(v.get<long long>()))
        fail("grid_sizes[" + std::to_string(i) + "]", "grid sizes must be powers of two");
      cfg.grid_sizes.push_back(v.get<int>());
    }
  }

  if (doc.contains("scenarios")) {
    if (!doc["scenarios"].is_array() || doc["scenarios"].empty())
      fail("scenarios", "expected a nonempty array");
    for (std::size_t i = 0; i < doc["scenarios"].size(); ++i)
      cfg.scenarios.push_back(
          parse_scenario(doc["scenarios"][i], "scenarios[" + std::to_string(i) + "]"));
  } else {
    cfg.scenarios = constant_sweep(cfg.bounds, 9);
    cfg.scenarios.push_back(BangBangSpec{0.25});
  }

  if (doc.contains("f")) cfg.f = parse_function(doc["f"], "f");

  if (doc.contains("chaos_orders")) {
    if (!doc["chaos_orders"].is_array() || doc["chaos_orders"].empty())
      fail("chaos_orders", "expected a nonempty integer array");
    cfg.chaos_orders.clear();
    for (std::size_t i = 0; i < doc["chaos_orders"].size(); ++i) {
      const auto& v = doc["chaos_orders"][i];
      if (!v.is_number_integer() || v.get<long long>() < 0)
        fail("chaos_orders[" + std::to_string(i) + "]", "expected a nonnegative integer");
      cfg.chaos_orders.push_back(v.get<int>());
    }
  }

  if (doc.contains("paths_per_scenario")) {
    const auto& v = doc["paths_per_scenario"];
    if (!v.is_number_integer() || v.get<long long>() < 1)
      fail("paths_per_scenario", "expected a positive integer");
    cfg.paths_per_scenario = v.get<std::size_t>();
  }

  if (!doc.contains("seed"))
    fail("seed", "missing (a run must be seeded explicitly; wall-clock seeding is not supported)");
  if (doc["seed"].is_number_unsigned())
    cfg.seed = doc["seed"].get<std::uint64_t>();
  else if (doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0)
    cfg.seed = static_cast<std::uint64_t>(doc["seed"].get<long long>());
  else
    fail("seed", "expected a nonnegative integer");

  if (doc.contains("out_dir")) {
    if (!doc["out_dir"].is_string()) fail("out_dir", "expected a string");
    cfg.out_dir = doc["out_dir"].get<std::string>();
  }

  if (doc.contains("report_formats")) {
    if (!doc["report_formats"].is_array()) fail("report_formats", "expected an array");
    cfg.emit_json = cfg.emit_csv = false;
    for (const auto& v : doc["report_formats"]) {
      if (!v.is_string()) fail("report_formats", "expected strings");
      const std::string s = v.get<std::string>();
      if (s == "json")
        cfg.emit_json = true;
      else if (s == "csv")
        cfg.emit_csv = true;
      else
        fail("report_formats", "unknown format '" + s + "' (use json | csv)");
    }
    if (!cfg.emit_json && !cfg.emit_csv) fail("report_formats", "must enable at least one format");
  }

  if (doc.contains("payoffs")) {
    if (!doc["payoffs"].is_array() || doc["payoffs"].empty())
      fail("payoffs", "expected a nonempty array");
    for (std::size_t i = 0; i < doc["payoffs"].size(); ++i)
      cfg.payoffs.push_back(parse_payoff(doc["payoffs"][i], "payoffs[" + std::to_string(i) + "]"));
  } else {
    cfg.payoffs = {Payoff::square(), Payoff::neg_square(), Payoff::abs(), Payoff::call(0.5)};
  }

  if (doc.contains("functionals")) {
    if (!doc["functionals"].is_array() || doc["functionals"].empty())
      fail("functionals", "expected a nonempty array");
    for (std::size_t i = 0; i < doc["functionals"].size(); ++i)
      cfg.functionals.push_back(
          parse_functional(doc["functionals"][i], "functionals[" + std::to_string(i) + "]", cfg.f));
  } else {
    for (const auto& p : cfg.payoffs) cfg.functionals.push_back(TerminalFunctional{p});
  }

  if (doc.contains("thresholds")) {
    const auto& t = doc["thresholds"];
    if (!t.is_object()) fail("thresholds", "expected an object");
    require_keys(t, "thresholds",
                 {"identity_rel_rms", "min_order", "closed_form_tol", "corollary_tol",
                  "se_multiplier", "pde_mc_rel_tol"});
    cfg.thresholds.identity_rel_rms =
        opt_number(t, "thresholds", "identity_rel_rms", cfg.thresholds.identity_rel_rms);
    cfg.thresholds.min_order = opt_number(t, "thresholds", "min_order", cfg.thresholds.min_order);
    cfg.thresholds.closed_form_tol =
        opt_number(t, "thresholds", "closed_form_tol", cfg.thresholds.closed_form_tol);
    cfg.thresholds.corollary_tol =
        opt_number(t, "thresholds", "corollary_tol", cfg.thresholds.corollary_tol);
    cfg.thresholds.se_multiplier =
        opt_number(t, "thresholds", "se_multiplier", cfg.thresholds.se_multiplier);
    cfg.thresholds.pde_mc_rel_tol =
        opt_number(t, "thresholds", "pde_mc_rel_tol", cfg.thresholds.pde_mc_rel_tol);
  }

  if (doc.contains("pde")) {
    const auto& p = doc["pde"];
    if (!p.is_object()) fail("pde", "expected an object");
    require_keys(p, "pde", {"space_steps", "half_width", "time_steps"});
    if (p.contains("space_steps")) {
      if (!p["space_steps"].is_number_integer()) fail("pde.space_steps", "expected an integer");
      cfg.pde.space_steps = p["space_steps"].get<int>();
      if (cfg.pde.space_steps < 4 || cfg.pde.space_steps % 2 != 0)
        fail("pde.space_steps", "must be even and >= 4");
    }
    if (p.contains("half_width")) cfg.pde.half_width = get_number(p, "pde", "half_width");
    if (p.contains("time_steps")) {
      if (!p["time_steps"].is_number_integer()) fail("pde.time_steps", "expected an integer");
      cfg.pde.time_steps = p["time_steps"].get<int>();
    }
  }

  // The verify/expectation sweeps take the sublinear envelope over this
  // scenario list; without the endpoint constants the sweep cannot reach
  // either edge of the uncertainty interval.
  bool has_lo = false, has_hi = false;
  for (const auto& s : cfg.scenarios) {
    if (const auto* c = std::get_if<ConstantSpec>(&s)) {
      if (c->sigma == cfg.bounds.sigma_lo) has_lo = true;
      if (c->sigma == cfg.bounds.sigma_hi) has_hi = true;
    }
  }
  if (!has_lo || !has_hi)
    fail("scenarios", "must include the constant endpoint scenarios sigma_lo and sigma_hi");

  // Validate scenario descriptors eagerly so a bad config fails before any
  // computation starts (exit code 2, not a mid-run check failure).
  const TimeGrid probe(cfg.horizon, cfg.grid_sizes.front());
  for (std::size_t i = 0; i < cfg.scenarios.size(); ++i) {
    try {
      build_scenario(cfg.bounds, probe, cfg.scenarios[i], cfg.seed);
    } catch (const std::invalid_argument& e) {
      fail("scenarios[" + std::to_string(i) + "]", e.what());
    }
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gbm
