// Full-scale acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "prwmax/experiments.hpp"
#include "prwmax/limit_process.hpp"
#include "prwmax/parallel.hpp"
#include "prwmax/statistics.hpp"

using namespace prwmax;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ExperimentConfig base(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  return cfg;
}

Outcome coupling_identity() {
  ExperimentConfig cfg = base(Experiment::kCouplingIdentity);
  cfg.replicas = 1000;
  cfg.n_grid = {10, 100, 1000, 10000};
  const Report rep = run_experiment(cfg);
  const Table& t = rep.table("coupling");
  double checked = 0.0, mismatches = 0.0;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    checked += t.column("checked_times")[r];
    mismatches += t.column("mismatches")[r];
  }
  return {mismatches == 0.0 && checked > 0.0,
          "mismatches=" + fmt(mismatches) + " of " + fmt(checked) + " comparisons"};
}

Outcome frechet_marginal() {
  ExperimentConfig cfg = base(Experiment::kFrechetCheck);
  cfg.c = 1.0;
  cfg.a = 2.0;
  cfg.n_grid = {100000};
  cfg.replicas = 10000;
  const Report rep = run_experiment(cfg);
  const double ks = rep.table("frechet").column("ks_statistic")[0];
  return {ks < 1.63 / std::sqrt(1e4), "ks=" + fmt(ks) + " critical=0.0163"};
}

Outcome donsker_marginal() {
  ExperimentConfig cfg = base(Experiment::kDonskerCheck);
  cfg.xi = XiKind::kRademacher;
  cfg.v = 1.0;
  cfg.n_grid = {100000};
  cfg.replicas = 10000;
  std::string detail;
  // One retry with the next seed is allowed.
  for (int attempt = 0; attempt < 2; ++attempt) {
    const Report rep = run_experiment(cfg);
    const double ks = rep.table("donsker").column("ks_statistic")[0];
    detail += (attempt ? " retry ks=" : "ks=") + fmt(ks);
    if (ks < 1.63 / std::sqrt(1e4)) return {true, detail + " critical=0.0163"};
    cfg.seed += 1;
  }
  return {false, detail + " critical=0.0163"};
}

Outcome prm_mean_measure() {
  const TailLaw tail(1.0, 2.0);
  const std::size_t reps = 10000;
  struct Box {
    double s, x, expected;
  };
  const std::vector<Box> boxes{{1.0, 0.1, 100.0}, {0.5, 0.2, 12.5}, {1.0, 1.0, 1.0}};
  const auto counts = parallel_map<std::vector<double>>(reps, 1, [&](std::size_t i) {
    RngStream rng = RngStream(20140527, i).child(16);
    const PointMeasure nu = sample_prm(rng, tail, 1.0, 0.1);
    std::vector<double> out;
    for (const Box& b : boxes) out.push_back(static_cast<double>(nu.count_in_box(b.s, b.x)));
    return out;
  });
  bool ok = true;
  std::string detail;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    double sum = 0.0;
    for (const auto& c : counts) sum += c[b];
    const double m = sum / static_cast<double>(reps);
    const double sigma = std::sqrt(boxes[b].expected / static_cast<double>(reps));
    const double z = (m - boxes[b].expected) / sigma;
    ok = ok && std::abs(z) <= 3.0;
    detail += (b ? " " : "") + std::string("mean=") + fmt(m) + "(z=" + fmt(z) + ")";
  }
  return {ok, detail};
}

Outcome convergence_trend() {
  ExperimentConfig cfg = base(Experiment::kConvergence);
  cfg.c = 1.0;
  cfg.v = 1.0;
  cfg.a = 2.0;
  cfg.n_grid = {100, 10000};
  cfg.replicas = 10000;
  cfg.delta = 1e-2;
  cfg.delta_grid = {1e-1, 1e-2};
  cfg.probe_times = {1.0};
  const Report rep = run_experiment(cfg);
  const Table& ks = rep.table("ks");
  const double ks_small = ks.column("ks_statistic")[0];
  const double ks_large = ks.column("ks_statistic")[1];
  const Table& br = rep.table("bracket");
  const double w_coarse = br.column("mean_width")[0];
  const double w_fine = br.column("mean_width")[1];
  return {ks_large < ks_small && w_fine < w_coarse,
          "ks(1e2)=" + fmt(ks_small) + " ks(1e4)=" + fmt(ks_large) + " width(0.01)=" +
              fmt(w_fine) + " width(0.1)=" + fmt(w_coarse)};
}

Outcome disproof() {
  // (a) U >= 0 over 1e5 limit samples.
  const TailLaw tail(1.0, 2.0);
  const auto uppers = parallel_map<double>(100000, 1, [&](std::size_t i) {
    return sample_limit(RngStream(20140527, i).child(11).child(7), tail, 1.0, 1.0, 0.1).upper;
  });
  std::size_t negative = 0;
  for (double u : uppers) negative += u < 0.0;

  // (b)-(d) through the experiment.
  ExperimentConfig cfg = base(Experiment::kDisprove);
  cfg.c = 1.0;
  cfg.v = 1.0;
  cfg.replicas = 10000;
  cfg.mc_draws = 10'000'000;
  cfg.delta = 1e-2;
  const Report rep = run_experiment(cfg);
  const Table& conj = rep.table("conjecture");
  const double quad = conj.column("quadrature")[0];
  const double mc = conj.column("monte_carlo")[0];
  const double sigma = conj.column("sigma")[0];
  const bool b = quad > 0.0 && std::abs(mc - quad) <= 3.0 * sigma;
  const double p = rep.table("ks_laws").column("p_value")[0];
  const double strict = rep.table("coupled").column("strict")[0];
  const bool ok = negative == 0 && b && p < 1e-3 && strict == 10000.0;
  return {ok, "(a) U<0: " + std::to_string(negative) + "/100000; (b) quadrature=" + fmt(quad) +
                  " mc=" + fmt(mc) + " 3sigma=" + fmt(3 * sigma) + "; (c) p=" + fmt(p) +
                  "; (d) strict=" + fmt(strict) + "/10000"};
}

Outcome demo_bound() {
  ExperimentConfig cfg = base(Experiment::kTheorem2Demo);
  cfg.n_grid = {10, 100, 1000, 10000};
  const Report rep = run_experiment(cfg);
  const Table& t = rep.table("theorem2");
  bool below = true;
  for (std::size_t r = 0; r < t.rows(); ++r) {
    below = below && t.column("bound")[r] <= t.column("majorant")[r];
  }
  const double first = t.column("bound").front();
  const double last = t.column("bound").back();
  return {below && last < first / 10.0,
          "bound(10)=" + fmt(first) + " bound(1e4)=" + fmt(last) +
              (below ? " all below majorant" : " majorant exceeded")};
}

Outcome determinism() {
  std::vector<ExperimentConfig> cfgs;
  for (Experiment e : {Experiment::kConvergence, Experiment::kDisprove, Experiment::kFrechetCheck,
                       Experiment::kDonskerCheck, Experiment::kPrmCheck, Experiment::kTheorem2Demo,
                       Experiment::kCouplingIdentity}) {
    ExperimentConfig cfg = base(e);
    cfg.replicas = 300;
    cfg.n_grid = {100, 1000};
    cfg.delta = 0.1;
    cfg.delta_grid = {0.5, 0.1};
    cfg.mc_draws = 300000;
    cfgs.push_back(cfg);
  }
  std::size_t identical = 0;
  for (ExperimentConfig cfg : cfgs) {
    cfg.workers = 1;
    const std::string first = run_experiment(cfg).dump();
    const std::string again = run_experiment(cfg).dump();
    cfg.workers = 4;
    const std::string threaded = run_experiment(cfg).dump();
    identical += first == again && first == threaded;
  }
  return {identical == cfgs.size(),
          std::to_string(identical) + "/" + std::to_string(cfgs.size()) +
              " experiments byte-identical across reruns and worker counts"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 coupling identity (exact)", coupling_identity},
      {"2 Frechet marginal", frechet_marginal},
      {"3 Donsker marginal", donsker_marginal},
      {"4 PRM mean measure", prm_mean_measure},
      {"5 convergence trend", convergence_trend},
      {"6 disproof of the conjectured limit", disproof},
      {"7 continuity demo bound", demo_bound},
      {"8 determinism", determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  [%s]  %s  (%.1f s)\n", out.passed ? "PASS" : "FAIL", c.name,
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !out.passed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
