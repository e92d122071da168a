#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prwmax/core_types.hpp"

namespace prwmax {

/// sup_{k: tau_k <= t} (f(tau_k) + y_k), or f(0) when no atom precedes t.
///
/// Throws std::domain_error on a horizon mismatch or t outside [0, T] and
/// std::invalid_argument when the measure fails validation.
double eval_sup_functional(const StepFunction& f, const PointMeasure& nu, double t);

/// The whole path t -> eval_sup_functional(f, nu, t). Jumps only at atom
/// times; non-decreasing from the first atom on.
StepFunction sup_functional_path(const StepFunction& f, const PointMeasure& nu);

struct Knot {
  double s;
  double value;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Strictly increasing piecewise-linear bijection of [0, T] with lambda(0) = 0
/// and lambda(T) = T.
class TimeChange {
 public:
  explicit TimeChange(std::vector<Knot> knots);
  static TimeChange identity(double horizon);

  double operator()(double s) const;
  /// Exact at knot values.
  double inverse(double t) const;
  double horizon() const { return knots_.back().s; }
  std::span<const Knot> knots() const { return knots_; }
  /// sup_s |lambda(s) - s|, attained at a knot.
  double sup_deviation() const;

 private:
  std::vector<Knot> knots_;
};

/// Thrown when the two measures disagree on the number of atoms above the
/// matching level, i.e. n is not yet large enough for the matching to exist.
class NotYetMatched : public std::runtime_error {
 public:
  NotYetMatched(std::size_t count_n, std::size_t count_0);
  std::size_t count_n() const { return count_n_; }
  std::size_t count_0() const { return count_0_; }

 private:
  std::size_t count_n_;
  std::size_t count_0_;
};

/// Matches the atoms of nu_n and nu_0 with marks above gamma in time order
/// and interpolates linearly: lambda(tau_i^(n)) = tau_i. The identity when
/// nothing is matched. Throws NotYetMatched on a count mismatch and
/// std::invalid_argument when the matched times are not strictly monotone.
TimeChange build_time_change(const PointMeasure& nu_n, const PointMeasure& nu_0,
                             double gamma, double horizon);

/// g composed with lambda, as a step function in s.
StepFunction compose(const StepFunction& g, const TimeChange& lambda);

/// max(sup_s |lambda(s) - s|, sup_s |g1(s) - g2(lambda(s))|), an upper bound
/// on the J1 distance between g1 and g2. lambda carries the jump times of g1
/// onto those of g2, which is the orientation build_time_change(nu_n, nu_0)
/// produces.
double skorokhod_upper_bound(const StepFunction& g1, const StepFunction& g2,
                             const TimeChange& lambda);

/// sup_{|u - w| < eps} |f(u) - f(w)| over [0, T], exact for the step
/// representation. Throws std::domain_error for eps <= 0.
double modulus_of_continuity(const StepFunction& f, double eps);

/// 0 = s_0 < s_1 < ... < s_m = T.
struct Partition {
  std::vector<double> knots;

  /// max_k (s_{k+1} - s_k).
  double mesh() const;
};

/// Knots (k + offset) * cell for k >= 1, dropped once the following cell
/// would not fit before T. An irrational offset keeps the knots off dyadic
/// atom times.
Partition offset_grid_partition(double horizon, double cell, double offset);

/// Checks that no interior knot carries an atom with positive mark and that
/// every open cell (s_k, s_{k+1}) holds an atom with mark above gamma.
std::optional<std::string> check_partition(const Partition& alpha,
                                           const PointMeasure& nu, double gamma);

/// Deterministic family exercising the continuity of the functional.
///
/// f_0 is a polygon sampled on `resolution_steps` cells; nu_0 holds one atom
/// at every odd multiple of 2^{-l} T for l = 1..levels with mark in
/// [1, 1.5] * 2^{-l}. f_n adds an alternating staircase of height 0.5/n, and
/// nu_n moves each atom by at most perturbation/n * 2^{-levels} T in time and
/// a relative perturbation/n in mark.
struct DemoParameters {
  int levels = 5;
  double horizon = 1.0;
  std::int64_t resolution_steps = std::int64_t{1} << 16;
  double perturbation = 0.1;
  /// (sqrt(5) - 1) / 4.
  double partition_offset = 0.30901699437494745;
};

struct DemoInstance {
  StepFunction f_n;
  PointMeasure nu_n;
  StepFunction f_0;
  PointMeasure nu_0;
};

/// The continuous polygon behind f_0, exact.
double demo_polygon(double t, double horizon);
/// Largest slope of demo_polygon on [0, T].
double demo_polygon_lipschitz(double horizon);

DemoInstance theorem2_demo_instance(std::int64_t n, const DemoParameters& params);

/// Matching level and partition used at step n: levels 1..l_n are matched
/// with l_n = min(levels, number of decimal digits of n).
struct DemoSchedule {
  int matched_levels;
  double gamma;
  Partition partition;
};

DemoSchedule demo_schedule(std::int64_t n, const DemoParameters& params);

/// Hypotheses on (f_0, nu_0) at a working resolution: no atom with
/// non-positive mark, no atom at time 0, every gap between consecutive atom
/// times (and the ends 0, T) at most `gap_resolution`, and no jump of f_0
/// larger than `max_jump`. Empty when all hold.
std::vector<std::string> check_demo_hypotheses(const StepFunction& f_0,
                                               const PointMeasure& nu_0,
                                               double gap_resolution,
                                               double max_jump);

/// One row of the convergence trace.
struct ConvergenceBound {
  std::int64_t n = 0;
  double gamma = 0.0;
  double mesh = 0.0;
  std::size_t matched = 0;
  /// sup |f_n - f_0|.
  double uniform_error = 0.0;
  /// sup |lambda_n(t) - t|.
  double lambda_deviation = 0.0;
  /// sum_i |f_0(tau_i^(n)) - f_0(tau_i)| + |y_i^(n) - y_i| over matched atoms.
  double matched_error = 0.0;
  /// omega_{f_0}(3 |alpha|) + gamma.
  double modulus_term = 0.0;
  double bound = 0.0;
  /// max(lambda_deviation, uniform_error + matched_error + 2 * modulus_term).
  double majorant = 0.0;
};

ConvergenceBound convergence_bound(const StepFunction& f_n, const PointMeasure& nu_n,
                                   const StepFunction& f_0, const PointMeasure& nu_0,
                                   double gamma, const Partition& alpha);

/// Builds the instance and schedule for step n and evaluates the bound.
/// Throws std::logic_error if the schedule violates the partition condition.
ConvergenceBound theorem2_demo_bound(std::int64_t n, const DemoParameters& params);

}  // namespace prwmax
