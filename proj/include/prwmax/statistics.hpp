#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "prwmax/core_types.hpp"

namespace prwmax {

struct KsReport {
  double statistic = 0.0;
  std::size_t n1 = 0;
  /// 0 for a one-sample test.
  std::size_t n2 = 0;
  /// Asymptotic p-value from the Kolmogorov distribution.
  double p_value = 1.0;
};

/// P{K > x} for the Kolmogorov distribution K = sup |Brownian bridge|.
double kolmogorov_survival(double x);

/// Two-sample statistic sup |F_x - F_y| by a single merge pass; p-value with
/// effective size n1 n2 / (n1 + n2). Throws std::domain_error on empty input.
KsReport ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// D_n = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
KsReport ks_one_sample(std::span<const double> xs,
                       const std::function<double(double)>& cdf);

/// 1.63 / sqrt(n): asymptotic 1% critical value of the one-sample statistic.
double ks_critical_1pct(std::size_t n);

double normal_cdf(double x);

/// exp(-c x^{-a}) for x > 0, else 0.
double frechet_cdf(double x, const TailLaw& tail);

/// P{theta + v Z < 0} for theta Frechet(c, a) independent of Z ~ N(0, 1).
///
/// Writes the integral of Phi(-x/v) dF_theta(x) in u = x^{-a} and then
/// w = exp(-c u), which maps it onto [0, 1] with a bounded integrand, and
/// integrates by adaptive Simpson to an absolute tolerance of 1e-6.
double prob_conjecture_negative(const TailLaw& tail, double v);
double prob_conjecture_negative(double c, double v);

/// Adaptive Simpson quadrature by interval halving.
double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth = 50);

/// Type-7 (linear interpolation) sample quantiles. Throws std::domain_error
/// on empty input or q outside [0, 1].
std::vector<double> quantiles(std::span<const double> xs, std::span<const double> qs);

double mean(std::span<const double> xs);
/// Unbiased sample variance.
double variance(std::span<const double> xs);
double correlation(std::span<const double> xs, std::span<const double> ys);

}  // namespace prwmax
