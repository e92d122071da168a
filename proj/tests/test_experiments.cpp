#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prwmax/experiments.hpp"

using namespace prwmax;

namespace {

ExperimentConfig small(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.replicas = 200;
  cfg.n_grid = {50, 500};
  cfg.delta = 0.1;
  cfg.delta_grid = {0.5, 0.1};
  cfg.mc_draws = 250000;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Experiment kAll[] = {Experiment::kConvergence,   Experiment::kDisprove,
                           Experiment::kFrechetCheck,  Experiment::kDonskerCheck,
                           Experiment::kPrmCheck,      Experiment::kTheorem2Demo,
                           Experiment::kCouplingIdentity};

}  // namespace

TEST(Table, RowsAndCsv) {
  Table t("demo", {"n", "value"});
  t.add_row({10, 0.5});
  t.add_row({100, 1.0 / 3.0});
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.column("value")[0], 0.5);
  EXPECT_EQ(t.to_csv(), "n,value\n10,0.5\n100,0.3333333333333333\n");
  EXPECT_THROW(t.add_row({1.0}), std::logic_error);
  EXPECT_THROW(t.column("missing"), std::out_of_range);
}

TEST(Experiments, ReportsIndependentOfWorkerCount) {
  for (Experiment e : kAll) {
    ExperimentConfig one = small(e);
    ExperimentConfig many = small(e);
    many.workers = 4;
    EXPECT_EQ(run_experiment(one).dump(), run_experiment(many).dump()) << to_string(e);
  }
}

TEST(Experiments, SeedChangesReport) {
  ExperimentConfig a = small(Experiment::kConvergence);
  ExperimentConfig b = a;
  b.seed += 1;
  EXPECT_NE(run_experiment(a).dump(), run_experiment(b).dump());
}

TEST(Experiments, ReportLayout) {
  const Report rep = run_experiment(small(Experiment::kConvergence));
  const auto j = rep.to_json();
  EXPECT_EQ(j.at("experiment"), "convergence");
  EXPECT_EQ(j.at("version"), PRWMAX_VERSION);
  EXPECT_EQ(j.at("config").at("replicas"), 200);
  EXPECT_EQ(j.at("streams").at("base_seed"), 20140527u);
  EXPECT_TRUE(j.at("streams").contains("roles"));
  EXPECT_EQ(rep.table("ks").rows(), 2u * 3u);
  EXPECT_EQ(rep.table("bracket").rows(), 2u);
  EXPECT_EQ(j.at("passed"), rep.passed());
  EXPECT_FALSE(j.dump().find("wall") != std::string::npos);
}

TEST(Experiments, DegenerateWalkUsesFrechetReference) {
  ExperimentConfig cfg = small(Experiment::kConvergence);
  cfg.xi = XiKind::kZero;
  cfg.v = 0.0;
  cfg.replicas = 2000;
  cfg.n_grid = {100, 10000};
  const Report rep = run_experiment(cfg);
  EXPECT_EQ(rep.table("frechet").rows(), 2u * 3u);
  EXPECT_TRUE(rep.passed());
}

TEST(Experiments, DisproveRejectsDegenerateWalk) {
  ExperimentConfig cfg = small(Experiment::kDisprove);
  cfg.xi = XiKind::kZero;
  cfg.v = 0.0;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  cfg.experiment = Experiment::kDonskerCheck;
  EXPECT_THROW(run_experiment(cfg), std::invalid_argument);
  EXPECT_THROW(run_marginal_checks(small(Experiment::kDisprove).resolved()), std::invalid_argument);
}

TEST(Experiments, SmallRunsPassTheirChecks) {
  for (Experiment e : {Experiment::kTheorem2Demo, Experiment::kCouplingIdentity,
                       Experiment::kDisprove, Experiment::kPrmCheck}) {
    ExperimentConfig cfg = small(e);
    // The tenfold drop needs the full n range, the law comparison a few
    // thousand replicas.
    if (e == Experiment::kTheorem2Demo) cfg.n_grid = {10, 10000};
    if (e == Experiment::kDisprove) cfg.replicas = 3000;
    const Report rep = run_experiment(cfg);
    for (const Assertion& a : rep.assertions) EXPECT_TRUE(a.passed) << a.name << " " << a.detail;
  }
}

TEST(Experiments, WriteReportFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "prwmax_write_report_test";
  std::filesystem::remove_all(dir);
  const Report rep = run_experiment(small(Experiment::kTheorem2Demo));
  write_report(rep, dir, 1.25);
  EXPECT_EQ(slurp(dir / "report.json"), rep.dump());
  EXPECT_EQ(slurp(dir / "theorem2.csv"), rep.table("theorem2").to_csv());
  const auto timing = nlohmann::json::parse(slurp(dir / "timing.json"));
  EXPECT_EQ(timing.at("wall_clock_seconds"), 1.25);
  std::filesystem::remove_all(dir);
}
