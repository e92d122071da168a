#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "prwmax/config.hpp"

namespace prwmax {

/// Column-oriented table; every column has the same length.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;

  Table(std::string name_, std::vector<std::string> columns_);
  void add_row(const std::vector<double>& row);
  std::size_t rows() const { return values.empty() ? 0 : values.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
  std::string to_csv() const;
};

struct Assertion {
  std::string name;
  bool passed;
  std::string detail;
};

struct Report {
  std::string experiment;
  nlohmann::ordered_json config;
  nlohmann::ordered_json streams;
  std::vector<Table> tables;
  std::vector<Assertion> assertions;

  bool passed() const;
  const Table& table(const std::string& name) const;
  nlohmann::ordered_json to_json() const;
  /// Serialized report.json content; a pure function of config and seed.
  std::string dump() const;
};

Report run_convergence(const ExperimentConfig& cfg);
Report run_disprove(const ExperimentConfig& cfg);
Report run_theorem2_demo(const ExperimentConfig& cfg);
/// frechet-check, donsker-check and prm-check.
Report run_marginal_checks(const ExperimentConfig& cfg);
Report run_coupling_identity(const ExperimentConfig& cfg);

/// Resolves defaults, validates and dispatches on cfg.experiment.
Report run_experiment(const ExperimentConfig& cfg);

/// Writes report.json and one <table>.csv per table into `dir`, plus
/// timing.json with the wall-clock time (kept out of report.json so the
/// report stays byte-reproducible).
void write_report(const Report& report, const std::filesystem::path& dir,
                  double wall_clock_seconds);

}  // namespace prwmax
