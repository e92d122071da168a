#include "prwmax/samplers.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prwmax {

XiLaw::XiLaw(XiKind kind_, double v_) : kind(kind_), v(v_) {
  if (kind == XiKind::kZero) {
    if (v != 0.0) throw std::invalid_argument("XiLaw: degenerate law needs v = 0");
  } else if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("XiLaw: v must be positive and finite");
  }
}

std::string to_string(XiKind kind) {
  switch (kind) {
    case XiKind::kRademacher: return "rademacher";
    case XiKind::kUniformCentered: return "uniform";
    case XiKind::kGaussian: return "gaussian";
    case XiKind::kZero: return "zero";
  }
  return "unknown";
}

XiKind parse_xi_kind(std::string_view name) {
  if (name == "rademacher") return XiKind::kRademacher;
  if (name == "uniform" || name == "uniform-centered") return XiKind::kUniformCentered;
  if (name == "gaussian") return XiKind::kGaussian;
  if (name == "zero") return XiKind::kZero;
  throw std::invalid_argument("unknown xi law: " + std::string(name));
}

double sample_xi(RngStream& rng, const XiLaw& law) {
  switch (law.kind) {
    case XiKind::kRademacher:
      return (rng() >> 63) ? law.v : -law.v;
    case XiKind::kUniformCentered:
      // U(-sqrt(3) v, sqrt(3) v) has variance v^2.
      return std::numbers::sqrt3 * law.v * (2.0 * rng.uniform_open() - 1.0);
    case XiKind::kGaussian:
      return law.v * rng.normal();
    case XiKind::kZero:
      return 0.0;
  }
  return 0.0;
}

double eta_from_uniform(double u, const TailLaw& tail) {
  if (tail.a == 2.0) return std::sqrt(tail.c / u);
  return std::pow(tail.c / u, 1.0 / tail.a);
}

double sample_eta(RngStream& rng, const TailLaw& tail) {
  return eta_from_uniform(rng.uniform(), tail);
}

double frechet_from_exponential(double e, const TailLaw& tail) {
  return eta_from_uniform(e, tail);
}

double sample_frechet(RngStream& rng, const TailLaw& tail) {
  return frechet_from_exponential(rng.exponential(), tail);
}

double bridge_max_from_uniform(double u, double left, double right, double dt,
                               double v) {
  if (!(dt > 0.0)) throw std::domain_error("bridge_max_sample: dt must be positive");
  if (!(v > 0.0)) throw std::domain_error("bridge_max_sample: v must be positive");
  // (m - left)(m - right) = h, larger root.
  const double h = -0.5 * v * v * dt * std::log(u);
  const double d = left - right;
  return 0.5 * (left + right + std::sqrt(d * d + 4.0 * h));
}

double bridge_max_sample(RngStream& rng, double left, double right, double dt,
                         double v) {
  return bridge_max_from_uniform(rng.uniform(), left, right, dt, v);
}

double log_factorial(std::uint64_t k) {
  static const std::array<double, 32> table = [] {
    std::array<double, 32> t{};
    for (std::size_t i = 1; i < t.size(); ++i) {
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    }
    return t;
  }();
  if (k < table.size()) return table[k];
  const double x = static_cast<double>(k);
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Stirling series for log Gamma(x + 1).
  return x * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi * x) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

std::uint64_t sample_poisson(RngStream& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::domain_error("sample_poisson: mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = rng.uniform();
    while (prod > limit) {
      ++k;
      prod *= rng.uniform();
    }
    return k;
  }
  // Hormann (1993), transformed rejection with squeeze.
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform_open() - 0.5;
    const double v = rng.uniform_open();
    const double us = 0.5 - std::abs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::uint64_t>(kd);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + kd * loglam - log_factorial(k)) {
      return k;
    }
  }
}

}  // namespace prwmax
