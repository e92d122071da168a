#include "prwmax/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "prwmax/functional.hpp"
#include "prwmax/io.hpp"
#include "prwmax/limit_process.hpp"
#include "prwmax/parallel.hpp"
#include "prwmax/statistics.hpp"
#include "prwmax/walk.hpp"

namespace prwmax {

using nlohmann::ordered_json;

Table::Table(std::string name_, std::vector<std::string> columns_)
    : name(std::move(name_)), columns(std::move(columns_)), values(columns.size()) {}

void Table::add_row(const std::vector<double>& row) {
  if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
  for (std::size_t i = 0; i < row.size(); ++i) values[i].push_back(row[i]);
}

const std::vector<double>& Table::column(const std::string& col) const {
  auto it = std::find(columns.begin(), columns.end(), col);
  if (it == columns.end()) throw std::out_of_range("Table: no column " + col);
  return values[static_cast<std::size_t>(it - columns.begin())];
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += (c ? "," : "") + columns[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out += (c ? "," : "") + format_real(values[c][r]);
    }
    out += '\n';
  }
  return out;
}

bool Report::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const Assertion& a) { return a.passed; });
}

const Table& Report::table(const std::string& name) const {
  for (const Table& t : tables) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("Report: no table " + name);
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["experiment"] = experiment;
  j["version"] = PRWMAX_VERSION;
  j["config"] = config;
  j["streams"] = streams;
  ordered_json tabs = ordered_json::array();
  for (const Table& t : tables) {
    ordered_json cols = ordered_json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      ordered_json col = ordered_json::array();
      for (double x : t.values[c]) col.push_back(ordered_json(real_to_json(x)));
      cols[t.columns[c]] = std::move(col);
    }
    tabs.push_back({{"name", t.name}, {"columns", std::move(cols)}});
  }
  j["tables"] = std::move(tabs);
  ordered_json checks = ordered_json::array();
  for (const Assertion& a : assertions) {
    checks.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  }
  j["assertions"] = std::move(checks);
  j["passed"] = passed();
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + '\n'; }

namespace {

// Child roles under a replica stream (seed, replica).
constexpr std::uint64_t kRolePreLimit = 10;
constexpr std::uint64_t kRoleLimit = 11;
constexpr std::uint64_t kRoleConjecture = 12;
constexpr std::uint64_t kRoleCoupled = 13;
constexpr std::uint64_t kRoleMonteCarlo = 14;
constexpr std::uint64_t kRoleMarginal = 15;
constexpr std::uint64_t kRolePrm = 16;
constexpr std::uint64_t kRoleCoupling = 17;

constexpr std::int64_t kMonteCarloChunk = 100'000;

RngStream replica_stream(const ExperimentConfig& cfg, std::size_t replica,
                         std::uint64_t role, std::uint64_t grid_index = 0) {
  return RngStream(cfg.seed, replica).child(role).child(grid_index);
}

Report make_report(const ExperimentConfig& cfg) {
  Report rep;
  rep.experiment = to_string(cfg.experiment);
  rep.config = config_to_json(cfg);
  rep.streams = {
      {"base_seed", cfg.seed},
      {"replica_streams", {{"first", 0}, {"count", cfg.replicas}}},
      {"generator", "xoshiro256** seeded by SplitMix64 from hash(seed, stream index)"},
      {"layout", "replica i draws from stream (seed, i) -> child(role) -> child(grid index)"},
      {"roles",
       {{"pre_limit", kRolePreLimit},
        {"limit", kRoleLimit},
        {"conjecture", kRoleConjecture},
        {"coupled", kRoleCoupled},
        {"monte_carlo", kRoleMonteCarlo},
        {"marginal", kRoleMarginal},
        {"prm", kRolePrm},
        {"coupling", kRoleCoupling}}},
  };
  return rep;
}

std::string describe(const std::string& label, double value) {
  return label + "=" + format_real(value);
}

std::string describe(const std::string& a, double x, const std::string& b, double y) {
  return describe(a, x) + " " + describe(b, y);
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

WalkConfig walk_config(const ExperimentConfig& cfg, std::int64_t n) {
  return {cfg.xi_law(), cfg.tail(), n, cfg.horizon};
}

// Distinct deltas, largest first.
std::vector<double> delta_levels(const ExperimentConfig& cfg) {
  std::vector<double> ds = cfg.delta_grid;
  ds.push_back(cfg.delta);
  std::sort(ds.begin(), ds.end(), std::greater<>());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  return ds;
}

struct LimitSummary {
  std::vector<double> lower_at_probes;
  double lower = 0.0;
  double upper = 0.0;
  double points = 0.0;
};

std::vector<LimitSummary> limit_summaries(const ExperimentConfig& cfg, double delta,
                                          std::uint64_t grid_index) {
  const TailLaw tail = cfg.tail();
  return parallel_map<LimitSummary>(
      static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
        const LimitSample s = sample_limit(replica_stream(cfg, i, kRoleLimit, grid_index),
                                           tail, cfg.v, cfg.horizon, delta);
        LimitSummary out;
        for (double t : cfg.probe_times) out.lower_at_probes.push_back(s.lower_at(t));
        out.lower = s.lower;
        out.upper = s.upper;
        out.points = static_cast<double>(s.points.size());
        return out;
      });
}

std::vector<std::vector<double>> prelimit_at_probes(const ExperimentConfig& cfg,
                                                    std::size_t grid_index) {
  const WalkConfig wc = walk_config(cfg, cfg.n_grid[grid_index]);
  return parallel_map<std::vector<double>>(
      static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
        const StepFunction path =
            perturbed_max_path(replica_stream(cfg, i, kRolePreLimit, grid_index), wc);
        std::vector<double> out;
        for (double t : cfg.probe_times) out.push_back(path(t));
        return out;
      });
}

std::vector<double> column_of(const std::vector<std::vector<double>>& rows, std::size_t k) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

void convergence_degenerate(const ExperimentConfig& cfg, Report& rep) {
  // With xi = 0 the pre-limit maximum over [0, t] is a maximum of [nt]+1
  // scaled perturbations, whose limit is Frechet with scale t c.
  Table tab("frechet", {"n", "t", "ks_statistic", "p_value", "critical"});
  const double crit = ks_critical_1pct(static_cast<std::size_t>(cfg.replicas));
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const auto rows = prelimit_at_probes(cfg, g);
    for (std::size_t k = 0; k < cfg.probe_times.size(); ++k) {
      const double t = cfg.probe_times[k];
      if (!(t > 0.0)) continue;
      const TailLaw scaled(t * cfg.c, cfg.a);
      const KsReport r = ks_one_sample(column_of(rows, k),
                                       [&](double x) { return frechet_cdf(x, scaled); });
      tab.add_row({static_cast<double>(cfg.n_grid[g]), t, r.statistic, r.p_value, crit});
    }
  }
  const auto& ns = tab.column("n");
  const auto& ts = tab.column("t");
  const auto& ks = tab.column("ks_statistic");
  const double n_max = *std::max_element(cfg.n_grid.begin(), cfg.n_grid.end());
  for (std::size_t r = 0; r < tab.rows(); ++r) {
    if (ns[r] == n_max && ts[r] == cfg.horizon) {
      rep.assertions.push_back({"degenerate_walk_frechet_marginal", ks[r] < crit,
                                describe("ks", ks[r], "critical", crit)});
    }
  }
  rep.tables.push_back(std::move(tab));
}

}  // namespace

Report run_convergence(const ExperimentConfig& cfg) {
  Report rep = make_report(cfg);
  if (cfg.xi == XiKind::kZero) {
    convergence_degenerate(cfg, rep);
    return rep;
  }

  const std::vector<double> deltas = delta_levels(cfg);
  Table brackets("bracket", {"delta", "mean_width", "mean_points", "frac_empty"});
  std::vector<LimitSummary> reference;
  double reference_width = 0.0;
  std::vector<double> widths;
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    auto summaries = limit_summaries(cfg, deltas[d], d);
    std::vector<double> w, pts;
    double empty = 0.0;
    for (const auto& s : summaries) {
      w.push_back(s.upper - s.lower);
      pts.push_back(s.points);
      empty += (s.points == 0.0) ? 1.0 : 0.0;
    }
    const double mw = mean_of(w);
    widths.push_back(mw);
    brackets.add_row({deltas[d], mw, mean_of(pts), empty / static_cast<double>(w.size())});
    if (deltas[d] == cfg.delta) {
      reference = std::move(summaries);
      reference_width = mw;
    }
  }

  Table ks("ks", {"n", "t", "ks_statistic", "p_value", "mean_bracket_width"});
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const auto rows = prelimit_at_probes(cfg, g);
    for (std::size_t k = 0; k < cfg.probe_times.size(); ++k) {
      std::vector<double> limit_vals;
      limit_vals.reserve(reference.size());
      for (const auto& s : reference) limit_vals.push_back(s.lower_at_probes[k]);
      const KsReport r = ks_two_sample(column_of(rows, k), limit_vals);
      ks.add_row({static_cast<double>(cfg.n_grid[g]), cfg.probe_times[k], r.statistic,
                  r.p_value, reference_width});
    }
  }

  if (cfg.n_grid.size() >= 2) {
    const auto [lo_it, hi_it] = std::minmax_element(cfg.n_grid.begin(), cfg.n_grid.end());
    double ks_lo = NAN, ks_hi = NAN;
    const auto& col_n = ks.column("n");
    const auto& col_t = ks.column("t");
    const auto& col_ks = ks.column("ks_statistic");
    for (std::size_t r = 0; r < ks.rows(); ++r) {
      if (col_t[r] != cfg.horizon) continue;
      if (col_n[r] == static_cast<double>(*lo_it)) ks_lo = col_ks[r];
      if (col_n[r] == static_cast<double>(*hi_it)) ks_hi = col_ks[r];
    }
    if (!std::isnan(ks_lo) && !std::isnan(ks_hi)) {
      rep.assertions.push_back({"ks_decreases_in_n_at_T", ks_hi < ks_lo,
                                describe("ks_max_n", ks_hi, "ks_min_n", ks_lo)});
    }
  }
  bool shrinking = true;
  for (std::size_t d = 1; d < widths.size(); ++d) shrinking = shrinking && widths[d] < widths[d - 1];
  rep.assertions.push_back({"bracket_width_shrinks_with_delta", shrinking,
                            describe("width_smallest_delta", widths.back(),
                                     "width_largest_delta", widths.front())});
  rep.tables.push_back(std::move(ks));
  rep.tables.push_back(std::move(brackets));
  return rep;
}

Report run_disprove(const ExperimentConfig& cfg) {
  if (cfg.xi == XiKind::kZero) {
    throw std::invalid_argument("disprove needs a non-degenerate walk (v > 0)");
  }
  Report rep = make_report(cfg);
  const TailLaw tail = cfg.tail();
  const auto R = static_cast<std::size_t>(cfg.replicas);

  // (i) brackets never straddle below zero from above.
  Table brackets("brackets", {"delta", "replicas", "frac_upper_negative",
                              "frac_lower_negative", "mean_width"});
  std::vector<double> reference_lower;
  bool upper_nonnegative = true;
  const std::vector<double> deltas = delta_levels(cfg);
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    const auto summaries = limit_summaries(cfg, deltas[d], d);
    double up_neg = 0.0, lo_neg = 0.0;
    std::vector<double> w;
    for (const auto& s : summaries) {
      up_neg += s.upper < 0.0 ? 1.0 : 0.0;
      lo_neg += s.lower < 0.0 ? 1.0 : 0.0;
      w.push_back(s.upper - s.lower);
    }
    upper_nonnegative = upper_nonnegative && up_neg == 0.0;
    brackets.add_row({deltas[d], static_cast<double>(R), up_neg / static_cast<double>(R),
                      lo_neg / static_cast<double>(R), mean_of(w)});
    if (deltas[d] == cfg.delta) {
      for (const auto& s : summaries) reference_lower.push_back(s.lower);
    }
  }
  rep.assertions.push_back({"upper_bracket_never_negative", upper_nonnegative,
                            "fraction of U < 0 is zero at every delta"});

  // (ii) P{theta + v B(1) < 0}: quadrature and Monte Carlo.
  const double quad = prob_conjecture_negative(tail, cfg.v);
  const std::int64_t chunks = (cfg.mc_draws + kMonteCarloChunk - 1) / kMonteCarloChunk;
  const auto counts = parallel_map<std::int64_t>(
      static_cast<std::size_t>(chunks), cfg.workers, [&](std::size_t k) {
        RngStream rng = replica_stream(cfg, k, kRoleMonteCarlo);
        const std::int64_t begin = static_cast<std::int64_t>(k) * kMonteCarloChunk;
        const std::int64_t size = std::min(kMonteCarloChunk, cfg.mc_draws - begin);
        std::int64_t neg = 0;
        for (std::int64_t i = 0; i < size; ++i) neg += sample_conjecture_rv(rng, tail, cfg.v) < 0.0;
        return neg;
      });
  const double draws = static_cast<double>(cfg.mc_draws);
  const double mc = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::int64_t{0})) / draws;
  const double sigma = std::sqrt(quad * (1.0 - quad) / draws);
  Table conj("conjecture", {"quadrature", "monte_carlo", "sigma", "draws"});
  conj.add_row({quad, mc, sigma, draws});
  rep.assertions.push_back({"conjecture_negative_mass_positive", quad > 0.01,
                            describe("quadrature", quad, "floor", 0.01)});
  rep.assertions.push_back({"monte_carlo_matches_quadrature", std::abs(mc - quad) <= 3.0 * sigma,
                            describe("monte_carlo", mc, "three_sigma", 3.0 * sigma)});

  // (iii) the limit law and the conjectured law differ.
  const auto conjectured = parallel_map<double>(R, cfg.workers, [&](std::size_t i) {
    RngStream rng = replica_stream(cfg, i, kRoleConjecture);
    return sample_conjecture_rv(rng, tail, cfg.v);
  });
  const KsReport laws = ks_two_sample(reference_lower, conjectured);
  Table ks("ks_laws", {"statistic", "p_value", "n1", "n2"});
  ks.add_row({laws.statistic, laws.p_value, static_cast<double>(laws.n1),
              static_cast<double>(laws.n2)});
  rep.assertions.push_back({"limit_law_differs_from_conjecture", laws.p_value < 1e-3,
                            describe("p_value", laws.p_value)});

  // (iv) strict inequality against sup j + v sup B in the same draw.
  const auto comps = parallel_map<CoupledComparison>(R, cfg.workers, [&](std::size_t i) {
    return coupled_comparison(replica_stream(cfg, i, kRoleCoupled), tail, cfg.v,
                              cfg.horizon, cfg.delta);
  });
  double strict = 0.0, resamples = 0.0, min_gap = std::numeric_limits<double>::infinity();
  for (const auto& c : comps) {
    strict += c.lower < c.rhs ? 1.0 : 0.0;
    resamples += static_cast<double>(c.resamples);
    min_gap = std::min(min_gap, c.rhs - c.lower);
  }
  Table coupled("coupled", {"delta", "draws", "strict", "resamples", "min_gap"});
  coupled.add_row({cfg.delta, static_cast<double>(R), strict, resamples, min_gap});
  rep.assertions.push_back({"strict_inequality_every_draw", strict == static_cast<double>(R),
                            describe("strict", strict, "draws", static_cast<double>(R))});

  rep.tables.push_back(std::move(brackets));
  rep.tables.push_back(std::move(conj));
  rep.tables.push_back(std::move(ks));
  rep.tables.push_back(std::move(coupled));
  return rep;
}

Report run_theorem2_demo(const ExperimentConfig& cfg) {
  Report rep = make_report(cfg);
  DemoParameters params;
  params.levels = cfg.demo_levels;
  params.horizon = cfg.horizon;

  Table tab("theorem2", {"n", "matched", "gamma", "mesh", "uniform_error", "lambda_deviation",
                         "matched_error", "modulus_term", "bound", "majorant"});
  bool below = true;
  for (std::int64_t n : cfg.n_grid) {
    const ConvergenceBound b = theorem2_demo_bound(n, params);
    below = below && std::isfinite(b.bound) && b.bound <= b.majorant;
    tab.add_row({static_cast<double>(n), static_cast<double>(b.matched), b.gamma, b.mesh,
                 b.uniform_error, b.lambda_deviation, b.matched_error, b.modulus_term,
                 b.bound, b.majorant});
  }
  rep.assertions.push_back({"bound_below_majorant", below, "every n in the grid"});

  const auto [lo_it, hi_it] = std::minmax_element(cfg.n_grid.begin(), cfg.n_grid.end());
  const auto& ns = tab.column("n");
  const auto& bounds = tab.column("bound");
  auto bound_at = [&](std::int64_t n) {
    return bounds[static_cast<std::size_t>(
        std::find(ns.begin(), ns.end(), static_cast<double>(n)) - ns.begin())];
  };
  if (*lo_it != *hi_it) {
    rep.assertions.push_back({"bound_halves_over_grid", bound_at(*hi_it) < bound_at(*lo_it) / 2.0,
                              describe("bound_max_n", bound_at(*hi_it), "bound_min_n",
                                       bound_at(*lo_it))});
    rep.assertions.push_back({"bound_drops_tenfold_over_grid", bound_at(*hi_it) < bound_at(*lo_it) / 10.0,
                              describe("bound_max_n", bound_at(*hi_it), "bound_min_n",
                                       bound_at(*lo_it))});
  }

  const DemoInstance inst = theorem2_demo_instance(*lo_it, params);
  double f0_norm = std::abs(inst.f_0.initial_value());
  for (const Jump& j : inst.f_0.jumps()) f0_norm = std::max(f0_norm, std::abs(j.value));
  if (*hi_it >= 10000) {
    rep.assertions.push_back({"bound_small_at_max_n", bound_at(*hi_it) < 0.01 * f0_norm,
                              describe("bound", bound_at(*hi_it), "limit", 0.01 * f0_norm)});
  }

  const DemoSchedule sched = demo_schedule(*lo_it, params);
  const ConvergenceBound ident =
      convergence_bound(inst.f_0, inst.nu_0, inst.f_0, inst.nu_0, sched.gamma, sched.partition);
  rep.assertions.push_back({"identity_instance_zero", ident.bound == 0.0,
                            describe("bound", ident.bound)});

  const double h = params.horizon / static_cast<double>(params.resolution_steps);
  const auto problems =
      check_demo_hypotheses(inst.f_0, inst.nu_0, std::ldexp(params.horizon, -params.levels),
                            demo_polygon_lipschitz(params.horizon) * h * (1.0 + 1e-9));
  rep.assertions.push_back({"demo_hypotheses_hold", problems.empty(),
                            problems.empty() ? "ok" : problems.front()});
  rep.tables.push_back(std::move(tab));
  return rep;
}

namespace {

double standardized(double mean_count, double expected, double replicas) {
  return (mean_count - expected) / std::sqrt(expected / replicas);
}

void frechet_check(const ExperimentConfig& cfg, Report& rep) {
  const TailLaw tail = cfg.tail();
  const double crit = ks_critical_1pct(static_cast<std::size_t>(cfg.replicas));
  Table tab("frechet", {"n", "ks_statistic", "p_value", "critical"});
  bool ok = true;
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const std::int64_t n = cfg.n_grid[g];
    const auto maxima = parallel_map<double>(
        static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
          return scaled_eta_maximum(replica_stream(cfg, i, kRoleMarginal, g), tail, n);
        });
    const KsReport r = ks_one_sample(maxima, [&](double x) { return frechet_cdf(x, tail); });
    ok = ok && r.statistic < crit;
    tab.add_row({static_cast<double>(n), r.statistic, r.p_value, crit});
  }
  rep.assertions.push_back({"frechet_marginal_ks", ok, describe("critical", crit)});
  rep.tables.push_back(std::move(tab));
}

void donsker_check(const ExperimentConfig& cfg, Report& rep) {
  if (cfg.xi == XiKind::kZero) throw std::invalid_argument("donsker-check needs v > 0");
  const double crit = ks_critical_1pct(static_cast<std::size_t>(cfg.replicas));
  const double sd = cfg.v * std::sqrt(cfg.horizon);
  Table tab("donsker", {"n", "ks_statistic", "p_value", "critical"});
  bool ok = true;
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    // Donsker scaling n^{-1/2} regardless of the tail index.
    const WalkConfig wc{cfg.xi_law(), TailLaw(cfg.c, 2.0), cfg.n_grid[g], cfg.horizon};
    const auto ends = parallel_map<double>(
        static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
          return scaled_walk_endpoint(replica_stream(cfg, i, kRoleMarginal, g), wc);
        });
    const KsReport r = ks_one_sample(ends, [&](double x) { return normal_cdf(x / sd); });
    ok = ok && r.statistic < crit;
    tab.add_row({static_cast<double>(cfg.n_grid[g]), r.statistic, r.p_value, crit});
  }
  rep.assertions.push_back({"donsker_marginal_ks", ok, describe("critical", crit)});
  rep.tables.push_back(std::move(tab));
}

void prm_check(const ExperimentConfig& cfg, Report& rep) {
  const TailLaw tail = cfg.tail();
  const double T = cfg.horizon;
  const auto R = static_cast<double>(cfg.replicas);
  bool ok = true;

  struct Box {
    double s, x;
  };
  const std::vector<Box> prm_boxes{{T, cfg.delta}, {T / 2, 2 * cfg.delta}, {T, 10 * cfg.delta}};
  Table prm("prm_boxes", {"s", "x", "expected", "mean_count", "z"});
  const auto counts = parallel_map<std::vector<double>>(
      static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
        RngStream rng = replica_stream(cfg, i, kRolePrm);
        const PointMeasure nu = sample_prm(rng, tail, T, cfg.delta);
        std::vector<double> out;
        for (const Box& b : prm_boxes) out.push_back(static_cast<double>(nu.count_in_box(b.s, b.x)));
        return out;
      });
  for (std::size_t b = 0; b < prm_boxes.size(); ++b) {
    const double expected = prm_boxes[b].s * tail.tail_mass(prm_boxes[b].x);
    const double m = mean_of(column_of(counts, b));
    const double z = standardized(m, expected, R);
    ok = ok && std::abs(z) <= 3.0;
    prm.add_row({prm_boxes[b].s, prm_boxes[b].x, expected, m, z});
  }

  const std::vector<Box> emp_boxes{{T, 1.0}, {T / 2, 2.0}, {T, 0.5}};
  Table emp("empirical_boxes", {"n", "s", "x", "expected", "mean_count", "z"});
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const WalkConfig wc = walk_config(cfg, cfg.n_grid[g]);
    const auto emp_counts = parallel_map<std::vector<double>>(
        static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
          const auto etas = sample_etas(replica_stream(cfg, i, kRolePrm, g + 1), wc);
          const PointMeasure nu = empirical_point_measure(etas, wc.n, tail.a, 0.5, T);
          std::vector<double> out;
          for (const Box& b : emp_boxes) out.push_back(static_cast<double>(nu.count_in_box(b.s, b.x)));
          return out;
        });
    for (std::size_t b = 0; b < emp_boxes.size(); ++b) {
      const double expected = emp_boxes[b].s * tail.tail_mass(emp_boxes[b].x);
      const double m = mean_of(column_of(emp_counts, b));
      const double z = standardized(m, expected, R);
      ok = ok && std::abs(z) <= 3.0;
      emp.add_row({static_cast<double>(wc.n), emp_boxes[b].s, emp_boxes[b].x, expected, m, z});
    }
  }
  rep.assertions.push_back({"box_counts_within_3_sigma", ok, "every box, |z| <= 3"});
  rep.tables.push_back(std::move(prm));
  rep.tables.push_back(std::move(emp));
}

}  // namespace

Report run_marginal_checks(const ExperimentConfig& cfg) {
  Report rep = make_report(cfg);
  switch (cfg.experiment) {
    case Experiment::kFrechetCheck: frechet_check(cfg, rep); break;
    case Experiment::kDonskerCheck: donsker_check(cfg, rep); break;
    case Experiment::kPrmCheck: prm_check(cfg, rep); break;
    default: throw std::invalid_argument("run_marginal_checks: not a marginal check");
  }
  return rep;
}

Report run_coupling_identity(const ExperimentConfig& cfg) {
  Report rep = make_report(cfg);
  Table tab("coupling", {"n", "replicas", "checked_times", "mismatches"});
  bool ok = true;
  struct Outcome {
    double checked = 0.0;
    double mismatches = 0.0;
  };
  for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
    const WalkConfig wc = walk_config(cfg, cfg.n_grid[g]);
    const auto outcomes = parallel_map<Outcome>(
        static_cast<std::size_t>(cfg.replicas), cfg.workers, [&](std::size_t i) {
          const RngStream rng = replica_stream(cfg, i, kRoleCoupling, g);
          const StepFunction walk = scaled_walk_path(rng, wc);
          const auto etas = sample_etas(rng, wc);
          const PointMeasure nu = empirical_point_measure(etas, wc.n, wc.tail.a, kRetainAll, wc.horizon);
          const StepFunction maxpath = perturbed_max_path(rng, wc);
          Outcome o;
          auto check = [&](double t) {
            o.checked += 1.0;
            if (eval_sup_functional(walk, nu, t) != maxpath(t)) o.mismatches += 1.0;
          };
          check(0.0);
          for (const Jump& j : maxpath.jumps()) check(j.time);
          o.checked += 1.0;
          if (!(sup_functional_path(walk, nu) == maxpath)) o.mismatches += 1.0;
          return o;
        });
    double checked = 0.0, mismatches = 0.0;
    for (const auto& o : outcomes) {
      checked += o.checked;
      mismatches += o.mismatches;
    }
    ok = ok && mismatches == 0.0;
    tab.add_row({static_cast<double>(wc.n), static_cast<double>(cfg.replicas), checked, mismatches});
  }
  rep.assertions.push_back({"coupling_identity_exact", ok, "bit-for-bit at every jump time"});
  rep.tables.push_back(std::move(tab));
  return rep;
}

Report run_experiment(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = raw.resolved();
  cfg.validate();
  switch (cfg.experiment) {
    case Experiment::kConvergence: return run_convergence(cfg);
    case Experiment::kDisprove: return run_disprove(cfg);
    case Experiment::kTheorem2Demo: return run_theorem2_demo(cfg);
    case Experiment::kCouplingIdentity: return run_coupling_identity(cfg);
    case Experiment::kFrechetCheck:
    case Experiment::kDonskerCheck:
    case Experiment::kPrmCheck: return run_marginal_checks(cfg);
  }
  throw std::logic_error("unhandled experiment");
}

void write_report(const Report& report, const std::filesystem::path& dir,
                  double wall_clock_seconds) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "report.json", report.dump());
  for (const Table& t : report.tables) write_text_file(dir / (t.name + ".csv"), t.to_csv());
  ordered_json timing{{"experiment", report.experiment},
                      {"wall_clock_seconds", wall_clock_seconds}};
  write_text_file(dir / "timing.json", timing.dump(2) + '\n');
}

}  // namespace prwmax
