#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "prwmax/core_types.hpp"
#include "prwmax/rng.hpp"

namespace prwmax {

enum class XiKind { kRademacher, kUniformCentered, kGaussian, kZero };

/// Law of the walk increment: zero mean, standard deviation v.
/// kZero is the degenerate walk (v must be 0).
struct XiLaw {
  XiKind kind = XiKind::kRademacher;
  double v = 1.0;

  XiLaw() = default;
  XiLaw(XiKind kind_, double v_);

  static XiLaw zero() { return XiLaw(XiKind::kZero, 0.0); }

  friend bool operator==(const XiLaw&, const XiLaw&) = default;
};

std::string to_string(XiKind kind);
XiKind parse_xi_kind(std::string_view name);

double sample_xi(RngStream& rng, const XiLaw& law);

/// Inverse transform of P{eta > x} = min(1, c x^{-a}) at u in (0, 1].
double eta_from_uniform(double u, const TailLaw& tail);
double sample_eta(RngStream& rng, const TailLaw& tail);

/// (c / e)^{1/a}: Frechet draw with CDF exp(-c x^{-a}) from an exponential e.
double frechet_from_exponential(double e, const TailLaw& tail);
double sample_frechet(RngStream& rng, const TailLaw& tail);

/// Maximum of a Brownian motion with variance parameter v^2 over a segment
/// of length dt pinned at `left` and `right`, from a uniform u in (0, 1].
/// Inverts P{M > m} = exp(-2 (m - left)(m - right) / (v^2 dt)).
double bridge_max_from_uniform(double u, double left, double right, double dt,
                               double v);
double bridge_max_sample(RngStream& rng, double left, double right, double dt,
                         double v);

/// Poisson(mean) count. Inversion for small means, PTRS transformed
/// rejection above.
std::uint64_t sample_poisson(RngStream& rng, double mean);

/// log(k!) without touching the global state lgamma may write.
double log_factorial(std::uint64_t k);

}  // namespace prwmax
