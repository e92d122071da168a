#pragma once

#include <cstdint>
#include <vector>

#include "prwmax/core_types.hpp"
#include "prwmax/rng.hpp"

namespace prwmax {

/// One exact draw of the limit object restricted to marks above delta.
///
/// `points` holds the Poisson atoms (t_k, j_k) in time order; `bm_values[k]`
/// is B(t_k) for a standard Brownian motion B; `segment_maxima` holds the
/// exact maximum of B over [0, t_1], [t_1, t_2], ..., [t_K, T] (K + 1
/// entries); `sup_b` is sup_{t <= T} B(t). The untruncated supremum
/// sup_{t_k <= T} (v B(t_k) + j_k) lies in [lower, upper] almost surely:
///   lower = max_k (v B(t_k) + j_k), -inf without atoms,
///   upper = max(lower, v sup_b + delta).
struct LimitSample {
  PointMeasure points;
  std::vector<double> bm_values;
  std::vector<double> segment_maxima;
  double b_at_horizon = 0.0;
  double sup_b = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double v = 1.0;
  double delta = 0.0;

  double bracket_width() const { return upper - lower; }
  /// max_{t_k <= t} (v B(t_k) + j_k), -inf when no atom precedes t.
  double lower_at(double t) const;
  /// max_k j_k, -inf without atoms.
  double max_mark() const;
};

/// Poisson random measure on [0, T] x (delta, inf] with mean measure
/// LEB x mu_{c,a}: K ~ Poisson(T c delta^{-a}), uniform times sorted,
/// marks delta * U^{-1/a}. Throws std::domain_error for delta <= 0.
PointMeasure sample_prm(RngStream& rng, const TailLaw& tail, double horizon,
                        double delta);

// Sub-streams of a replica stream used by sample_limit.
inline constexpr std::uint64_t kPrmSubstream = 0;
inline constexpr std::uint64_t kBrownianSubstream = 1;

LimitSample sample_limit(const RngStream& rng, const TailLaw& tail, double v,
                         double horizon, double delta);

/// Value of the limit path before the first retained atom.
enum class PreFirstPoint {
  /// The path starts at its value at the first atom.
  kFirstValue,
  /// The path starts at 0, the t -> 0 limit of the untruncated process.
  kZero,
};

/// Running supremum t -> max_{t_k <= t} (v B(t_k) + j_k) of a drawn sample.
/// Throws std::domain_error for an empty sample under kFirstValue.
StepFunction limit_path(const LimitSample& sample,
                        PreFirstPoint convention = PreFirstPoint::kFirstValue);

StepFunction sample_limit_path(const RngStream& rng, const TailLaw& tail,
                               double v, double horizon, double delta,
                               PreFirstPoint convention = PreFirstPoint::kFirstValue);

/// theta + v Z with theta Frechet(c, a) and Z standard normal, independent.
double sample_conjecture_rv(RngStream& rng, const TailLaw& tail, double v);

struct CoupledComparison {
  double lower;
  /// max_k j_k + v sup_b from the same draw.
  double rhs;
  /// Number of empty draws discarded before a non-empty one.
  std::uint64_t resamples;
};

/// Draws until at least one atom is retained (attempt i uses rng.child(i)).
CoupledComparison coupled_comparison(const RngStream& rng, const TailLaw& tail,
                                     double v, double horizon, double delta);

}  // namespace prwmax
