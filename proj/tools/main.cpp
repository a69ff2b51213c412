#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gbm/config.hpp"
#include "gbm/runner.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 check failure, 2 configuration error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

gbm::RunConfig load(const GlobalOpts& g) {
  gbm::RunConfig cfg = gbm::load_config_file(g.config_path);
  if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
  if (g.seed) cfg.seed = *g.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"G-Brownian motion simulation, chaos-identity verification and "
               "sublinear-expectation estimation"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "Run configuration (JSON)");
  app.add_option("--out", g.out_dir, "Output directory (overrides config)");
  app.add_option("--seed", g.seed, "Master seed (overrides config)");

  auto* verify = app.add_subcommand("verify", "Run the verification suites and emit reports");
  auto* convergence =
      app.add_subcommand("convergence", "Grid-refinement study of the identity residual");
  auto* expectation =
      app.add_subcommand("expectation", "Upper/lower expectation sweeps for the config functionals");
  auto* gheat = app.add_subcommand("gheat", "Solve the nonlinear heat equation for the payoffs");
  auto* hermite = app.add_subcommand("hermite-table", "Print the exact coefficient table");
  int max_degree = 10;
  hermite->add_option("--max-degree", max_degree, "Largest degree to tabulate")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfigError;
  }

  try {
    gbm::SuiteResult result;
    if (hermite->parsed()) {
      result = gbm::run_hermite_table(max_degree, g.out_dir, /*to_stdout=*/g.out_dir.empty());
    } else {
      if (g.config_path.empty()) {
        std::fprintf(stderr, "error: --config is required for this subcommand\n");
        return kExitConfigError;
      }
      const gbm::RunConfig cfg = load(g);
      if (verify->parsed())
        result = gbm::run_verify(cfg);
      else if (convergence->parsed())
        result = gbm::run_convergence(cfg);
      else if (expectation->parsed())
        result = gbm::run_expectation(cfg);
      else if (gheat->parsed())
        result = gbm::run_gheat(cfg);
    }
    for (const auto& f : result.report_files) std::printf("wrote %s\n", f.c_str());
    return result.exit_code() == 0 ? kExitPass : kExitCheckFailure;
  } catch (const gbm::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailure;
  }
}
