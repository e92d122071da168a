#include "prwmax/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prwmax {

void WalkConfig::validate() const {
  if (n < 1) throw std::invalid_argument("WalkConfig: n must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("WalkConfig: horizon must be positive");
  }
}

double walk_scale(std::int64_t n, double a) {
  const auto nd = static_cast<double>(n);
  if (a == 2.0) return 1.0 / std::sqrt(nd);
  return std::pow(nd, -1.0 / a);
}

std::int64_t last_index(std::int64_t n, double horizon) {
  return static_cast<std::int64_t>(std::floor(static_cast<double>(n) * horizon));
}

double grid_time(std::int64_t k, std::int64_t n, double horizon) {
  return std::min(static_cast<double>(k) / static_cast<double>(n), horizon);
}

StepFunction perturbed_max_path(const RngStream& rng, const WalkConfig& cfg) {
  cfg.validate();
  RngStream xi_rng = rng.child(kXiSubstream);
  RngStream eta_rng = rng.child(kEtaSubstream);
  const double scale = walk_scale(cfg.n, cfg.tail.a);
  const std::int64_t last = last_index(cfg.n, cfg.horizon);

  double s = 0.0;
  double running = scale * s + scale * sample_eta(eta_rng, cfg.tail);
  const double initial = running;
  std::vector<Jump> jumps;
  for (std::int64_t k = 1; k <= last; ++k) {
    s += sample_xi(xi_rng, cfg.xi);
    const double candidate = scale * s + scale * sample_eta(eta_rng, cfg.tail);
    if (candidate > running) {
      running = candidate;
      jumps.push_back({grid_time(k, cfg.n, cfg.horizon), running});
    }
  }
  return StepFunction(initial, std::move(jumps), cfg.horizon);
}

StepFunction scaled_walk_path(const RngStream& rng, const WalkConfig& cfg) {
  cfg.validate();
  RngStream xi_rng = rng.child(kXiSubstream);
  const double scale = walk_scale(cfg.n, cfg.tail.a);
  const std::int64_t last = last_index(cfg.n, cfg.horizon);

  double s = 0.0;
  double current = scale * s;
  const double initial = current;
  std::vector<Jump> jumps;
  for (std::int64_t k = 1; k <= last; ++k) {
    s += sample_xi(xi_rng, cfg.xi);
    const double value = scale * s;
    if (value != current) {
      current = value;
      jumps.push_back({grid_time(k, cfg.n, cfg.horizon), value});
    }
  }
  return StepFunction(initial, std::move(jumps), cfg.horizon);
}

double scaled_walk_endpoint(const RngStream& rng, const WalkConfig& cfg) {
  cfg.validate();
  RngStream xi_rng = rng.child(kXiSubstream);
  const std::int64_t last = last_index(cfg.n, cfg.horizon);
  double s = 0.0;
  for (std::int64_t k = 1; k <= last; ++k) s += sample_xi(xi_rng, cfg.xi);
  return walk_scale(cfg.n, cfg.tail.a) * s;
}

std::vector<double> sample_etas(const RngStream& rng, const WalkConfig& cfg) {
  cfg.validate();
  RngStream eta_rng = rng.child(kEtaSubstream);
  const std::int64_t count = last_index(cfg.n, cfg.horizon) + 1;
  std::vector<double> etas(static_cast<std::size_t>(count));
  for (double& e : etas) e = sample_eta(eta_rng, cfg.tail);
  return etas;
}

double scaled_eta_maximum(const RngStream& rng, const TailLaw& tail,
                          std::int64_t n) {
  if (n < 1) throw std::invalid_argument("scaled_eta_maximum: n must be >= 1");
  RngStream eta_rng = rng.child(kEtaSubstream);
  // max eta_k is a monotone image of min U_k, so only the minimum is tracked.
  double u_min = 1.0;
  for (std::int64_t k = 0; k < n; ++k) u_min = std::min(u_min, eta_rng.uniform());
  return walk_scale(n, tail.a) * eta_from_uniform(u_min, tail);
}

PointMeasure empirical_point_measure(std::span<const double> etas,
                                     std::int64_t n, double a, double delta,
                                     double horizon) {
  if (n < 1) throw std::invalid_argument("empirical_point_measure: n must be >= 1");
  if (std::isnan(delta) || (delta < 0.0 && delta != kRetainAll)) {
    throw std::invalid_argument("empirical_point_measure: delta must be >= 0");
  }
  const std::int64_t last = last_index(n, horizon);
  if (static_cast<std::int64_t>(etas.size()) < last + 1) {
    throw std::length_error("empirical_point_measure: need [nT]+1 perturbations");
  }
  const double scale = walk_scale(n, a);
  std::vector<MarkedPoint> points;
  for (std::int64_t k = 0; k <= last; ++k) {
    const double mark = scale * etas[static_cast<std::size_t>(k)];
    if (mark > delta) points.push_back({grid_time(k, n, horizon), mark});
  }
  return PointMeasure(std::move(points), horizon, delta);
}

}  // namespace prwmax
