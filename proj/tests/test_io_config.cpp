#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "prwmax/config.hpp"
#include "prwmax/io.hpp"

using namespace prwmax;
using nlohmann::json;

TEST(Io, RealsRoundTrip) {
  for (double x : {0.0, -1.5, 1e-300, 0.1, 1.0 / 3.0, kTopMark, kRetainAll}) {
    EXPECT_EQ(real_from_json(json::parse(real_to_json(x).dump())), x);
  }
  EXPECT_TRUE(std::isnan(real_from_json(real_to_json(NAN))));
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(-INFINITY), "-inf");
  EXPECT_THROW(real_from_json(json("abc")), std::invalid_argument);
}

TEST(Io, StepFunctionJson) {
  const StepFunction f(0.25, {{0.1, 1.0 / 3.0}, {0.9, -2.0}}, 1.5);
  const json j = f;
  EXPECT_EQ(j.at("initial_value"), 0.25);
  EXPECT_EQ(j.at("horizon"), 1.5);
  EXPECT_EQ(j.at("jumps").size(), 2u);
  EXPECT_EQ(json::parse(j.dump()).get<StepFunction>(), f);
}

TEST(Io, PointMeasureJson) {
  const PointMeasure nu({{0.0, -1.0}, {0.3, kTopMark}, {0.3, 2.0}}, 1.0, kRetainAll);
  const json j = nu;
  EXPECT_EQ(j.at("truncation"), "-inf");
  EXPECT_EQ(j.at("points")[1].at("mark"), "inf");
  EXPECT_EQ(json::parse(j.dump()).get<PointMeasure>(), nu);
}

TEST(Io, SmallTypesJson) {
  const TailLaw tail(2.0, 1.5);
  EXPECT_EQ(json(tail).get<TailLaw>(), tail);
  const KsReport r{0.25, 10, 20, 0.5};
  const KsReport back = json(r).get<KsReport>();
  EXPECT_EQ(back.statistic, 0.25);
  EXPECT_EQ(back.n1, 10u);
  EXPECT_EQ(back.n2, 20u);
  EXPECT_EQ(back.p_value, 0.5);
}

TEST(Io, LimitSampleJson) {
  const LimitSample s = sample_limit(RngStream(81, 0), TailLaw(1.0, 2.0), 1.0, 1.0, 0.5);
  const json j = s;
  EXPECT_EQ(j.at("bm_values").size(), s.points.size());
  EXPECT_EQ(j.at("segment_maxima").size(), s.points.size() + 1);
  EXPECT_EQ(real_from_json(j.at("lower")), s.lower);
  EXPECT_EQ(real_from_json(j.at("upper")), s.upper);
}

TEST(Io, PointMeasureCsvRoundTrip) {
  const PointMeasure nu({{0.125, 1.0 / 7.0}, {0.5, 3.0}, {1.0, 1e-12}}, 1.0);
  const std::string csv = point_measure_csv(nu);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "time,mark");
  EXPECT_EQ(point_measure_from_csv(csv, 1.0), nu);
  EXPECT_THROW(point_measure_from_csv("time,mark\n0.5\n", 1.0), std::invalid_argument);
}

TEST(Io, StepFunctionCsv) {
  const StepFunction f(1.0, {{0.5, 2.0}}, 1.0);
  EXPECT_EQ(step_function_csv(f), "t,value\n0,1\n0.5,2\n");
  const std::vector<double> qs{0.5}, vals{1.25};
  EXPECT_EQ(quantile_table_csv(qs, vals), "q,value\n0.5,1.25\n");
}

TEST(Config, DefaultsResolvePerExperiment) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kCouplingIdentity;
  const ExperimentConfig r = cfg.resolved();
  EXPECT_EQ(r.n_grid, (std::vector<std::int64_t>{10, 100, 1000, 10000}));
  EXPECT_EQ(r.replicas, 1000);
  EXPECT_EQ(r.probe_times, (std::vector<double>{0.25, 0.5, 1.0}));
  EXPECT_NO_THROW(r.validate());
  cfg.experiment = Experiment::kFrechetCheck;
  EXPECT_EQ(cfg.resolved().n_grid, (std::vector<std::int64_t>{100000}));
  EXPECT_EQ(cfg.resolved().replicas, 10000);
}

TEST(Config, ParsesKeyValueText) {
  ExperimentConfig cfg;
  apply_config_text(cfg,
                    "# comment\n"
                    "experiment = disprove\n"
                    "n = 1e3, 10000  # trailing\n"
                    "delta-grid = 0.5,0.05\n"
                    "replicas = 2e3\n"
                    "T = 2.5\n"
                    "xi = gaussian\n"
                    "seed = 42\n"
                    "\n");
  EXPECT_EQ(cfg.experiment, Experiment::kDisprove);
  EXPECT_EQ(cfg.n_grid, (std::vector<std::int64_t>{1000, 10000}));
  EXPECT_EQ(cfg.delta_grid, (std::vector<double>{0.5, 0.05}));
  EXPECT_EQ(cfg.replicas, 2000);
  EXPECT_EQ(cfg.horizon, 2.5);
  EXPECT_EQ(cfg.xi, XiKind::kGaussian);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.resolved().probe_times, (std::vector<double>{0.625, 1.25, 2.5}));
}

TEST(Config, RejectsBadInput) {
  ExperimentConfig cfg;
  EXPECT_THROW(apply_config_text(cfg, "bogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(apply_config_text(cfg, "replicas\n"), std::invalid_argument);
  EXPECT_THROW(apply_setting(cfg, "replicas", "1.5"), std::invalid_argument);
  EXPECT_THROW(apply_setting(cfg, "delta", "x"), std::invalid_argument);
  EXPECT_THROW(apply_setting(cfg, "experiment", "nope"), std::invalid_argument);
  EXPECT_THROW(apply_config_file(cfg, "/nonexistent/prwmax.cfg"), std::invalid_argument);
  ExperimentConfig bad = ExperimentConfig{}.resolved();
  bad.delta = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = ExperimentConfig{}.resolved();
  bad.probe_times = {2.0};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = ExperimentConfig{}.resolved();
  bad.v = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Config, ZeroStepLawSetsV) {
  ExperimentConfig cfg;
  apply_setting(cfg, "xi", "zero");
  EXPECT_EQ(cfg.v, 0.0);
  EXPECT_NO_THROW(cfg.resolved().validate());
  EXPECT_EQ(cfg.xi_law(), XiLaw::zero());
}

TEST(Config, JsonEchoLeavesOutRunPlumbing) {
  ExperimentConfig cfg;
  cfg.output_dir = "/tmp/x";
  cfg.workers = 8;
  const auto j = config_to_json(cfg.resolved());
  EXPECT_FALSE(j.contains("output_dir"));
  EXPECT_FALSE(j.contains("workers"));
  EXPECT_EQ(j.at("seed"), 20140527u);
  EXPECT_EQ(j.at("experiment"), "convergence");
}
