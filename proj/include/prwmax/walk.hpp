#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prwmax/core_types.hpp"
#include "prwmax/rng.hpp"
#include "prwmax/samplers.hpp"

namespace prwmax {

struct WalkConfig {
  XiLaw xi;
  TailLaw tail;
  std::int64_t n = 1;
  double horizon = 1.0;

  void validate() const;
};

/// n^{-1/a}; with a = 2 this is the Donsker scaling n^{-1/2}.
double walk_scale(std::int64_t n, double a);

/// [n T], the last index whose grid time k/n lies in [0, T].
std::int64_t last_index(std::int64_t n, double horizon);

/// Grid time k/n, clamped to T against rounding.
double grid_time(std::int64_t k, std::int64_t n, double horizon);

// Sub-streams of a replica stream. The increments and the perturbations are
// drawn from separate children, so scaled_walk_path and perturbed_max_path
// given the same stream see the same increments.
inline constexpr std::uint64_t kXiSubstream = 0;
inline constexpr std::uint64_t kEtaSubstream = 1;

/// t -> n^{-1/a} max_{0<=k<=[nt]} (S_k + eta_{k+1}) on [0, T].
///
/// Each candidate is formed as scale*S_k + scale*eta_{k+1}, with S_k summed
/// left to right, which is exactly the sum the functional forms from
/// scaled_walk_path and empirical_point_measure. Jumps only where the
/// running maximum increases.
StepFunction perturbed_max_path(const RngStream& rng, const WalkConfig& cfg);

/// t -> n^{-1/a} S_{[nt]}, stored at change points only.
StepFunction scaled_walk_path(const RngStream& rng, const WalkConfig& cfg);

/// n^{-1/a} S_{[nT]} without materializing the path; bit-identical to
/// scaled_walk_path(rng, cfg).final_value().
double scaled_walk_endpoint(const RngStream& rng, const WalkConfig& cfg);

/// eta_1, ..., eta_{[nT]+1} from the perturbation sub-stream.
std::vector<double> sample_etas(const RngStream& rng, const WalkConfig& cfg);

/// n^{-1/a} max_{1<=k<=n} eta_k from the perturbation sub-stream.
double scaled_eta_maximum(const RngStream& rng, const TailLaw& tail,
                          std::int64_t n);

/// Atoms (k/n, n^{-1/a} eta_{k+1}) for 0 <= k <= [nT] with scaled mark
/// strictly above delta. delta = kRetainAll keeps every index regardless of
/// sign. Throws std::length_error when fewer than [nT]+1 values are given.
PointMeasure empirical_point_measure(std::span<const double> etas,
                                     std::int64_t n, double a, double delta,
                                     double horizon);

}  // namespace prwmax
