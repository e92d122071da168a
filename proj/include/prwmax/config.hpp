#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "prwmax/samplers.hpp"

namespace prwmax {

enum class Experiment {
  kConvergence,
  kDisprove,
  kFrechetCheck,
  kDonskerCheck,
  kPrmCheck,
  kTheorem2Demo,
  kCouplingIdentity,
};

std::string to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

/// Every experiment parameter. Empty grids and a zero replica count mean
/// "use the experiment's default", filled in by resolved().
struct ExperimentConfig {
  Experiment experiment = Experiment::kConvergence;
  double c = 1.0;
  double a = 2.0;
  double v = 1.0;
  XiKind xi = XiKind::kRademacher;
  std::vector<std::int64_t> n_grid;
  std::int64_t replicas = 0;
  double delta = 1e-2;
  std::vector<double> delta_grid;
  double horizon = 1.0;
  std::uint64_t seed = 20140527;
  /// Absolute times in [0, T]; default {0.25, 0.5, 1} * T.
  std::vector<double> probe_times;
  std::int64_t mc_draws = 10'000'000;
  int demo_levels = 5;
  std::filesystem::path output_dir = "out";
  unsigned workers = 1;

  ExperimentConfig resolved() const;
  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
  XiLaw xi_law() const;
  TailLaw tail() const;
};

/// Applies one key=value setting. Keys: c, a, v, xi, n_grid, replicas,
/// delta, delta_grid, T, seed, probe_times, mc_draws, demo_levels,
/// output_dir, workers (and experiment). Lists are comma separated.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Reads `key = value` lines; '#' starts a comment.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Config echo for reports. Leaves out output_dir and workers, which do not
/// influence results.
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

}  // namespace prwmax
