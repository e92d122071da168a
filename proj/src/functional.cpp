#include "prwmax/functional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

namespace prwmax {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_compatible(const StepFunction& f, const PointMeasure& nu) {
  if (f.horizon() != nu.horizon()) {
    throw std::domain_error("functional: horizon mismatch between f and nu");
  }
  if (!nu.valid()) {
    throw std::invalid_argument("functional: invalid measure: " + *nu.violation());
  }
}

}  // namespace

double eval_sup_functional(const StepFunction& f, const PointMeasure& nu, double t) {
  require_compatible(f, nu);
  if (!(t >= 0.0 && t <= f.horizon())) {
    throw std::domain_error("functional: evaluation time outside [0, T]");
  }
  auto pts = nu.points();
  if (pts.empty() || pts.front().time > t) return f.initial_value();
  StepCursor cursor(f);
  double best = kNegInf;
  for (std::size_t k = 0; k < pts.size() && pts[k].time <= t; ++k) {
    best = std::max(best, cursor(pts[k].time) + pts[k].mark);
  }
  return best;
}

StepFunction sup_functional_path(const StepFunction& f, const PointMeasure& nu) {
  require_compatible(f, nu);
  auto pts = nu.points();
  StepCursor cursor(f);
  double initial = f.initial_value();
  double current = initial;
  double running = kNegInf;
  std::vector<Jump> jumps;
  std::size_t k = 0;
  while (k < pts.size()) {
    const double t = pts[k].time;
    const double ft = cursor(t);
    // Tied atoms enter together.
    for (; k < pts.size() && pts[k].time == t; ++k) {
      running = std::max(running, ft + pts[k].mark);
    }
    if (!std::isfinite(running)) {
      throw std::domain_error("functional: path value is not finite");
    }
    if (t == 0.0) {
      initial = current = running;
    } else if (running != current) {
      current = running;
      jumps.push_back({t, running});
    }
  }
  return StepFunction(initial, std::move(jumps), f.horizon());
}

TimeChange::TimeChange(std::vector<Knot> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw std::invalid_argument("TimeChange: need at least two knots");
  const double horizon = knots_.back().s;
  if (knots_.front().s != 0.0 || knots_.front().value != 0.0 ||
      knots_.back().value != horizon || !(horizon > 0.0)) {
    throw std::invalid_argument("TimeChange: endpoints must be fixed at 0 and T");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].s > knots_[i - 1].s) || !(knots_[i].value > knots_[i - 1].value)) {
      throw std::invalid_argument("TimeChange: knots must be strictly increasing");
    }
  }
}

TimeChange TimeChange::identity(double horizon) {
  return TimeChange({{0.0, 0.0}, {horizon, horizon}});
}

namespace {

double interpolate(double x, double x0, double x1, double y0, double y1) {
  if (x == x0) return y0;
  if (x == x1) return y1;
  if (x0 == y0 && x1 == y1) return x;
  return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
}

}  // namespace

double TimeChange::operator()(double s) const {
  if (!(s >= 0.0 && s <= horizon())) throw std::domain_error("TimeChange: outside [0, T]");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s,
                             [](double x, const Knot& k) { return x < k.s; });
  if (it == knots_.end()) return knots_.back().value;
  const Knot& a = *std::prev(it);
  return interpolate(s, a.s, it->s, a.value, it->value);
}

double TimeChange::inverse(double t) const {
  if (!(t >= 0.0 && t <= horizon())) throw std::domain_error("TimeChange: outside [0, T]");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                             [](double x, const Knot& k) { return x < k.value; });
  if (it == knots_.end()) return knots_.back().s;
  const Knot& a = *std::prev(it);
  return interpolate(t, a.value, it->value, a.s, it->s);
}

double TimeChange::sup_deviation() const {
  double best = 0.0;
  for (const Knot& k : knots_) best = std::max(best, std::abs(k.value - k.s));
  return best;
}

NotYetMatched::NotYetMatched(std::size_t count_n, std::size_t count_0)
    : std::runtime_error("not yet matched: " + std::to_string(count_n) +
                         " atoms above the level versus " + std::to_string(count_0)),
      count_n_(count_n),
      count_0_(count_0) {}

TimeChange build_time_change(const PointMeasure& nu_n, const PointMeasure& nu_0,
                             double gamma, double horizon) {
  if (nu_n.horizon() != horizon || nu_0.horizon() != horizon) {
    throw std::domain_error("build_time_change: horizon mismatch");
  }
  const PointMeasure big_n = nu_n.restrict_above(gamma);
  const PointMeasure big_0 = nu_0.restrict_above(gamma);
  if (big_n.size() != big_0.size()) throw NotYetMatched(big_n.size(), big_0.size());

  std::vector<Knot> knots{{0.0, 0.0}};
  auto add = [&](Knot k) {
    if (k == knots.back()) return;
    if (!(k.s > knots.back().s) || !(k.value > knots.back().value)) {
      throw std::invalid_argument("build_time_change: matched times are not strictly monotone");
    }
    knots.push_back(k);
  };
  for (std::size_t i = 0; i < big_n.size(); ++i) {
    add({big_n.points()[i].time, big_0.points()[i].time});
  }
  add({horizon, horizon});
  return TimeChange(std::move(knots));
}

StepFunction compose(const StepFunction& g, const TimeChange& lambda) {
  if (g.horizon() != lambda.horizon()) throw std::domain_error("compose: horizon mismatch");
  double initial = g.initial_value();
  std::vector<Jump> jumps;
  jumps.reserve(g.jumps().size());
  for (const Jump& j : g.jumps()) {
    const double s = lambda.inverse(j.time);
    if (s <= 0.0) {
      initial = j.value;
    } else if (!jumps.empty() && jumps.back().time >= s) {
      jumps.back().value = j.value;
    } else {
      jumps.push_back({s, j.value});
    }
  }
  return StepFunction(initial, std::move(jumps), g.horizon());
}

double skorokhod_upper_bound(const StepFunction& g1, const StepFunction& g2,
                             const TimeChange& lambda) {
  return std::max(lambda.sup_deviation(), sup_distance(g1, compose(g2, lambda)));
}

double modulus_of_continuity(const StepFunction& f, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("modulus_of_continuity: eps must be positive");
  // Constancy intervals I_i = [l_i, r_i); values on I_i and I_j (i < j) are
  // eps-close in time iff l_j - r_i < eps. r_i is increasing, so admissible
  // i form a window ending at j - 1.
  auto jumps = f.jumps();
  const std::size_t count = jumps.size() + 1;
  auto left = [&](std::size_t i) { return i == 0 ? 0.0 : jumps[i - 1].time; };
  auto right = [&](std::size_t i) { return i + 1 < count ? jumps[i].time : f.horizon(); };
  auto value = [&](std::size_t i) { return i == 0 ? f.initial_value() : jumps[i - 1].value; };

  std::deque<std::size_t> max_q, min_q;
  std::size_t start = 0;
  double best = 0.0;
  for (std::size_t j = 1; j < count; ++j) {
    const std::size_t i = j - 1;
    while (!max_q.empty() && value(max_q.back()) <= value(i)) max_q.pop_back();
    max_q.push_back(i);
    while (!min_q.empty() && value(min_q.back()) >= value(i)) min_q.pop_back();
    min_q.push_back(i);
    while (start < i && !(left(j) - right(start) < eps)) ++start;
    while (max_q.front() < start) max_q.pop_front();
    while (min_q.front() < start) min_q.pop_front();
    best = std::max({best, std::abs(value(j) - value(max_q.front())),
                     std::abs(value(j) - value(min_q.front()))});
  }
  return best;
}

double Partition::mesh() const {
  double best = 0.0;
  for (std::size_t k = 1; k < knots.size(); ++k) {
    best = std::max(best, knots[k] - knots[k - 1]);
  }
  return best;
}

Partition offset_grid_partition(double horizon, double cell, double offset) {
  if (!(horizon > 0.0) || !(cell > 0.0) || !(offset > 0.0 && offset < 1.0)) {
    throw std::invalid_argument("offset_grid_partition: bad parameters");
  }
  Partition p{{0.0}};
  for (std::int64_t k = 1;; ++k) {
    const double s = (static_cast<double>(k) + offset) * cell;
    if (!(s + cell < horizon)) break;
    p.knots.push_back(s);
  }
  p.knots.push_back(horizon);
  return p;
}

std::optional<std::string> check_partition(const Partition& alpha,
                                           const PointMeasure& nu, double gamma) {
  const auto& s = alpha.knots;
  if (s.size() < 2 || s.front() != 0.0 || s.back() != nu.horizon()) {
    return "partition must run from 0 to T";
  }
  auto pts = nu.points();
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    for (const MarkedPoint& p : pts) {
      if (p.time == s[k] && p.mark > 0.0) return "atom on partition knot";
    }
  }
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const bool hit = std::any_of(pts.begin(), pts.end(), [&](const MarkedPoint& p) {
      return p.time > s[k] && p.time < s[k + 1] && p.mark > gamma;
    });
    if (!hit) return "cell without an atom above the level";
  }
  return std::nullopt;
}

namespace {

constexpr std::array<Knot, 6> kPolygon{{{0.0, 0.0},
                                        {0.2, 0.8},
                                        {0.45, -0.4},
                                        {0.7, 0.5},
                                        {0.85, 0.1},
                                        {1.0, 0.3}}};

int decimal_digits(std::int64_t n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

// Mark of the atom at odd multiple j of 2^{-level}, in [1, 1.5] * 2^{-level}.
double demo_mark(std::int64_t j, int level) {
  return std::ldexp(1.25 + 0.25 * std::cos(static_cast<double>(j + level)), -level);
}

}  // namespace

double demo_polygon(double t, double horizon) {
  const double u = t / horizon;
  for (std::size_t i = 1; i < kPolygon.size(); ++i) {
    if (u <= kPolygon[i].s) {
      const Knot& a = kPolygon[i - 1];
      const Knot& b = kPolygon[i];
      return a.value + (u - a.s) * (b.value - a.value) / (b.s - a.s);
    }
  }
  return kPolygon.back().value;
}

double demo_polygon_lipschitz(double horizon) {
  double best = 0.0;
  for (std::size_t i = 1; i < kPolygon.size(); ++i) {
    best = std::max(best, std::abs(kPolygon[i].value - kPolygon[i - 1].value) /
                              (kPolygon[i].s - kPolygon[i - 1].s));
  }
  return best / horizon;
}

DemoInstance theorem2_demo_instance(std::int64_t n, const DemoParameters& params) {
  if (n < 1) throw std::invalid_argument("theorem2_demo_instance: n must be >= 1");
  const double T = params.horizon;
  const std::int64_t steps = params.resolution_steps;
  const auto at_step = [&](std::int64_t j, std::int64_t m) {
    return std::min(T, T * static_cast<double>(j) / static_cast<double>(m));
  };

  std::vector<Jump> f0_jumps;
  f0_jumps.reserve(static_cast<std::size_t>(steps));
  for (std::int64_t j = 1; j <= steps; ++j) {
    const double t = at_step(j, steps);
    f0_jumps.push_back({t, demo_polygon(t, T)});
  }
  StepFunction f_0(demo_polygon(0.0, T), std::move(f0_jumps), T);

  const double height = 0.5 / static_cast<double>(n);
  std::vector<Jump> stair;
  stair.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k < n; ++k) {
    stair.push_back({at_step(k, n), (k % 2 == 0) ? height : -height});
  }
  StepFunction f_n = f_0 + StepFunction(height, std::move(stair), T);

  std::vector<MarkedPoint> atoms;
  for (int level = 1; level <= params.levels; ++level) {
    const std::int64_t denom = std::int64_t{1} << level;
    for (std::int64_t j = 1; j < denom; j += 2) {
      atoms.push_back({at_step(j, denom), demo_mark(j, level)});
    }
  }
  PointMeasure nu_0 = PointMeasure::from_unsorted(std::move(atoms), T);

  const double rel = params.perturbation / static_cast<double>(n);
  const double time_scale = rel * std::ldexp(T, -params.levels);
  std::vector<MarkedPoint> moved;
  moved.reserve(nu_0.size());
  for (std::size_t i = 0; i < nu_0.size(); ++i) {
    const MarkedPoint& p = nu_0.points()[i];
    const auto x = static_cast<double>(i);
    moved.push_back({p.time + time_scale * std::sin(2.3 * x + 0.7),
                     p.mark * (1.0 + rel * std::cos(1.7 * x + 0.3))});
  }
  PointMeasure nu_n = PointMeasure::from_unsorted(std::move(moved), T);

  return {std::move(f_n), std::move(nu_n), std::move(f_0), std::move(nu_0)};
}

DemoSchedule demo_schedule(std::int64_t n, const DemoParameters& params) {
  const int matched = std::min(params.levels, decimal_digits(n));
  const double cell = std::ldexp(params.horizon, -matched);
  // Level-l marks lie in [1, 1.5] 2^{-l} and level l+1 marks below
  // 0.75 * 2^{-l}, so 0.875 * 2^{-l} separates them with room for the
  // relative mark perturbation.
  return {matched, 0.875 * std::ldexp(1.0, -matched),
          offset_grid_partition(params.horizon, cell, params.partition_offset)};
}

std::vector<std::string> check_demo_hypotheses(const StepFunction& f_0,
                                               const PointMeasure& nu_0,
                                               double gap_resolution,
                                               double max_jump) {
  std::vector<std::string> problems;
  if (auto v = validate_measure(nu_0)) problems.push_back("measure: " + *v);
  double prev_time = 0.0;
  double prev_value = f_0.initial_value();
  for (const Jump& j : f_0.jumps()) {
    if (std::abs(j.value - prev_value) > max_jump) {
      problems.push_back("f_0 jumps by more than the continuity tolerance");
      break;
    }
    prev_value = j.value;
  }
  for (const MarkedPoint& p : nu_0.points()) {
    if (!(p.mark > 0.0)) problems.push_back("atom with non-positive mark");
    if (p.time == 0.0) problems.push_back("atom at time 0");
    if (p.time - prev_time > gap_resolution) problems.push_back("gap wider than resolution");
    prev_time = p.time;
  }
  if (nu_0.horizon() - prev_time > gap_resolution) {
    problems.push_back("gap wider than resolution");
  }
  return problems;
}

ConvergenceBound convergence_bound(const StepFunction& f_n, const PointMeasure& nu_n,
                                   const StepFunction& f_0, const PointMeasure& nu_0,
                                   double gamma, const Partition& alpha) {
  const double T = f_0.horizon();
  const TimeChange lambda = build_time_change(nu_n, nu_0, gamma, T);
  const StepFunction path_n = sup_functional_path(f_n, nu_n);
  const StepFunction path_0 = sup_functional_path(f_0, nu_0);

  ConvergenceBound out;
  out.gamma = gamma;
  out.mesh = alpha.mesh();
  out.uniform_error = sup_distance(f_n, f_0);
  out.lambda_deviation = lambda.sup_deviation();

  const PointMeasure big_n = nu_n.restrict_above(gamma);
  const PointMeasure big_0 = nu_0.restrict_above(gamma);
  out.matched = big_0.size();
  for (std::size_t i = 0; i < big_0.size(); ++i) {
    const MarkedPoint& a = big_n.points()[i];
    const MarkedPoint& b = big_0.points()[i];
    out.matched_error += std::abs(f_0(a.time) - f_0(b.time)) + std::abs(a.mark - b.mark);
  }
  out.modulus_term = modulus_of_continuity(f_0, 3.0 * out.mesh) + gamma;
  out.bound = skorokhod_upper_bound(path_n, path_0, lambda);
  out.majorant = std::max(out.lambda_deviation, out.uniform_error + out.matched_error +
                                                    2.0 * out.modulus_term);
  return out;
}

ConvergenceBound theorem2_demo_bound(std::int64_t n, const DemoParameters& params) {
  const DemoInstance inst = theorem2_demo_instance(n, params);
  const DemoSchedule sched = demo_schedule(n, params);
  for (const PointMeasure* nu : {&inst.nu_0, &inst.nu_n}) {
    if (auto why = check_partition(sched.partition, *nu, sched.gamma)) {
      throw std::logic_error("demo schedule violates the partition condition: " + *why);
    }
  }
  ConvergenceBound out = convergence_bound(inst.f_n, inst.nu_n, inst.f_0, inst.nu_0,
                                           sched.gamma, sched.partition);
  out.n = n;
  return out;
}

}  // namespace prwmax
