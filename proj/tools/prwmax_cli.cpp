#include <chrono>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "prwmax/config.hpp"
#include "prwmax/experiments.hpp"

namespace {

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

constexpr Flag kFlags[] = {
    {"--seed", "seed", "base seed"},
    {"--replicas", "replicas", "independent replicas"},
    {"--n", "n_grid", "comma separated sample sizes"},
    {"--delta", "delta", "truncation level"},
    {"--delta-grid", "delta_grid", "comma separated truncation levels"},
    {"--c", "c", "tail constant"},
    {"--a", "a", "tail index"},
    {"--v", "v", "standard deviation of the steps"},
    {"--T", "T", "time horizon"},
    {"--xi", "xi", "step law: rademacher, uniform, gaussian, zero"},
    {"--probe-times", "probe_times", "comma separated times in [0, T]"},
    {"--mc-draws", "mc_draws", "Monte Carlo draws for the disprove quadrature check"},
    {"--demo-levels", "demo_levels", "dyadic levels in the demo measure"},
    {"--out", "output_dir", "output directory"},
    {"--workers", "workers", "worker threads (results do not depend on this)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maxima of perturbed random walks: simulation experiments"};
  app.set_version_flag("--version", std::string(PRWMAX_VERSION));

  std::string experiment;
  app.add_option("experiment", experiment,
                 "convergence | disprove | frechet-check | donsker-check | prm-check | "
                 "theorem2-demo | coupling-identity")
      ->required();
  std::string config_file;
  app.add_option("--config", config_file, "key = value file; flags override it");
  std::map<std::string, std::string> values;
  for (const Flag& f : kFlags) app.add_option(f.name, values[f.key], f.help);

  CLI11_PARSE(app, argc, argv);

  prwmax::ExperimentConfig cfg;
  prwmax::Report report;
  double seconds = 0.0;
  try {
    cfg.experiment = prwmax::parse_experiment(experiment);
    if (!config_file.empty()) prwmax::apply_config_file(cfg, config_file);
    for (const Flag& f : kFlags) {
      if (app.count(f.name) > 0) prwmax::apply_setting(cfg, f.key, values[f.key]);
    }
    const auto start = std::chrono::steady_clock::now();
    report = prwmax::run_experiment(cfg);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    prwmax::write_report(report, cfg.output_dir, seconds);
  } catch (const std::exception& e) {
    std::cerr << "prwmax: " << e.what() << '\n';
    return 2;
  }

  for (const auto& a : report.assertions) {
    std::cout << (a.passed ? "PASS " : "FAIL ") << a.name << "  " << a.detail << '\n';
  }
  std::cout << "wrote " << (cfg.output_dir / "report.json").string() << " (" << seconds
            << " s)\n";
  return report.passed() ? 0 : 1;
}
