#include "prwmax/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prwmax/samplers.hpp"

namespace prwmax {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error(what);
}

}  // namespace

double LimitSample::lower_at(double t) const {
  double best = kNegInf;
  auto pts = points.points();
  for (std::size_t k = 0; k < pts.size() && pts[k].time <= t; ++k) {
    best = std::max(best, v * bm_values[k] + pts[k].mark);
  }
  return best;
}

double LimitSample::max_mark() const {
  double best = kNegInf;
  for (const MarkedPoint& p : points.points()) best = std::max(best, p.mark);
  return best;
}

PointMeasure sample_prm(RngStream& rng, const TailLaw& tail, double horizon,
                        double delta) {
  require_positive(delta, "sample_prm: delta must be positive (mu has infinite total mass)");
  require_positive(horizon, "sample_prm: horizon must be positive");
  const double mean = horizon * tail.tail_mass(delta);
  const std::uint64_t count = sample_poisson(rng, mean);

  std::vector<double> times(count);
  for (double& t : times) t = horizon * rng.uniform();
  std::sort(times.begin(), times.end());

  // Marks are independent of times, so drawing them after the sort keeps the
  // joint law. P{j > x} = (delta / x)^a for x >= delta.
  const TailLaw unit(1.0, tail.a);
  std::vector<MarkedPoint> points(count);
  for (std::size_t k = 0; k < count; ++k) {
    points[k] = {times[k], delta * eta_from_uniform(rng.uniform(), unit)};
  }
  return PointMeasure(std::move(points), horizon, delta);
}

LimitSample sample_limit(const RngStream& rng, const TailLaw& tail, double v,
                         double horizon, double delta) {
  require_positive(v, "sample_limit: v must be positive");
  RngStream prm_rng = rng.child(kPrmSubstream);
  RngStream bm_rng = rng.child(kBrownianSubstream);

  LimitSample out{sample_prm(prm_rng, tail, horizon, delta), {}, {}};
  out.v = v;
  out.delta = delta;
  auto pts = out.points.points();
  out.bm_values.reserve(pts.size());
  out.segment_maxima.reserve(pts.size() + 1);

  auto segment_max = [&](double left, double right, double dt) {
    // Coincident times leave nothing to bridge.
    if (dt > 0.0) return bridge_max_sample(bm_rng, left, right, dt, 1.0);
    return std::max(left, right);
  };

  double t_prev = 0.0;
  double b_prev = 0.0;
  for (const MarkedPoint& p : pts) {
    const double dt = p.time - t_prev;
    const double b = b_prev + std::sqrt(dt) * bm_rng.normal();
    out.segment_maxima.push_back(segment_max(b_prev, b, dt));
    out.bm_values.push_back(b);
    t_prev = p.time;
    b_prev = b;
  }
  const double dt_last = horizon - t_prev;
  out.b_at_horizon = b_prev + std::sqrt(dt_last) * bm_rng.normal();
  out.segment_maxima.push_back(segment_max(b_prev, out.b_at_horizon, dt_last));

  out.sup_b = *std::max_element(out.segment_maxima.begin(), out.segment_maxima.end());
  out.lower = kNegInf;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    out.lower = std::max(out.lower, v * out.bm_values[k] + pts[k].mark);
  }
  out.upper = std::max(out.lower, v * out.sup_b + delta);
  return out;
}

StepFunction limit_path(const LimitSample& sample, PreFirstPoint convention) {
  auto pts = sample.points.points();
  const double horizon = sample.points.horizon();
  if (pts.empty()) {
    if (convention == PreFirstPoint::kZero) return StepFunction::constant(0.0, horizon);
    throw std::domain_error("limit_path: no retained atoms to start the path");
  }
  double running = kNegInf;
  double initial = 0.0;
  std::vector<Jump> jumps;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double value = sample.v * sample.bm_values[k] + pts[k].mark;
    const bool first = (k == 0);
    if (!(value > running)) continue;
    running = value;
    if (convention == PreFirstPoint::kFirstValue && first) {
      initial = running;
      continue;
    }
    if (convention == PreFirstPoint::kZero && running <= 0.0) continue;
    if (pts[k].time == 0.0) {
      initial = running;
    } else if (!jumps.empty() && jumps.back().time == pts[k].time) {
      jumps.back().value = running;
    } else {
      jumps.push_back({pts[k].time, running});
    }
  }
  return StepFunction(initial, std::move(jumps), horizon);
}

StepFunction sample_limit_path(const RngStream& rng, const TailLaw& tail,
                               double v, double horizon, double delta,
                               PreFirstPoint convention) {
  return limit_path(sample_limit(rng, tail, v, horizon, delta), convention);
}

double sample_conjecture_rv(RngStream& rng, const TailLaw& tail, double v) {
  require_positive(v, "sample_conjecture_rv: v must be positive");
  const double theta = sample_frechet(rng, tail);
  return theta + v * rng.normal();
}

CoupledComparison coupled_comparison(const RngStream& rng, const TailLaw& tail,
                                     double v, double horizon, double delta) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const LimitSample s = sample_limit(rng.child(attempt), tail, v, horizon, delta);
    if (s.points.empty()) continue;
    return {s.lower, s.max_mark() + v * s.sup_b, attempt};
  }
}

}  // namespace prwmax
