#include "prwmax/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace prwmax {

double kolmogorov_survival(double x) {
  if (!(x > 0.0)) return 1.0;
  if (x < 1.18) {
    // Jacobi-theta form of the CDF converges fast for small x.
    const double w = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double cdf = 0.0;
    for (int k = 1; k <= 7; k += 2) cdf += std::exp(-static_cast<double>(k * k) * w);
    cdf *= std::sqrt(2.0 * std::numbers::pi) / x;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    q += sign * term;
    if (term < 1e-18) break;
    sign = -sign;
  }
  return std::clamp(2.0 * q, 0.0, 1.0);
}

KsReport ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.empty() || ys.empty()) throw std::domain_error("ks_two_sample: empty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto n1 = static_cast<double>(a.size());
  const auto n2 = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  const double ne = n1 * n2 / (n1 + n2);
  return {d, a.size(), b.size(), kolmogorov_survival(std::sqrt(ne) * d)};
}

KsReport ks_one_sample(std::span<const double> xs,
                       const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::domain_error("ks_one_sample: empty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::sort(a.begin(), a.end());
  const auto n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, a.size(), 0, kolmogorov_survival(std::sqrt(n) * d)};
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double frechet_cdf(double x, const TailLaw& tail) {
  if (!(x > 0.0)) return 0.0;
  return std::exp(-tail.tail_mass(x));
}

namespace {

struct SimpsonPanel {
  double fa, fm, fb, whole;
};

double simpson_step(const std::function<double(double)>& f, double a, double b,
                    const SimpsonPanel& p, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const double right = (b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, {p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, {p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                        double abs_tol, int max_depth) {
  // A uniform pre-split keeps a deceptively smooth first panel from being
  // accepted outright.
  constexpr int kPanels = 64;
  const double width = (hi - lo) / kPanels;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double a = lo + k * width;
    const double b = (k + 1 == kPanels) ? hi : lo + (k + 1) * width;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, a, b, {fa, fm, fb, whole}, abs_tol / kPanels, max_depth);
  }
  return total;
}

double prob_conjecture_negative(const TailLaw& tail, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::domain_error("prob_conjecture_negative: v must be positive");
  }
  auto integrand = [&](double w) {
    const double u = -std::log(w) / tail.c;
    const double x = std::pow(u, -1.0 / tail.a);
    return normal_cdf(-x / v);
  };
  return adaptive_simpson(integrand, 0.0, 1.0, 1e-6);
}

double prob_conjecture_negative(double c, double v) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("prob_conjecture_negative: c must be positive");
  }
  return prob_conjecture_negative(TailLaw(c, 2.0), v);
}

std::vector<double> quantiles(std::span<const double> xs, std::span<const double> qs) {
  if (xs.empty()) throw std::domain_error("quantiles: empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  std::vector<double> out;
  out.reserve(qs.size());
  for (double q : qs) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantiles: q outside [0, 1]");
    const double h = (n - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    out.push_back(sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]));
  }
  return out;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::domain_error("mean: empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::domain_error("variance: need two observations");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::domain_error("correlation: need paired samples");
  }
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace prwmax
