#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prwmax {

/// Mark value standing for +infinity. Extended-real max/plus conventions are
/// the IEEE ones, so no special casing is needed in arithmetic.
inline constexpr double kTopMark = std::numeric_limits<double>::infinity();

/// Truncation sentinel meaning "every atom retained, whatever its sign".
inline constexpr double kRetainAll = -std::numeric_limits<double>::infinity();

struct Jump {
  double time;
  double value;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Right-continuous piecewise-constant function on [0, T].
///
/// The value at t is the value of the last jump with time <= t, or the
/// initial value when no jump has occurred yet. Jump times are strictly
/// increasing and lie in (0, T]; all values are finite.
class StepFunction {
 public:
  StepFunction(double initial_value, std::vector<Jump> jumps, double horizon);

  static StepFunction constant(double value, double horizon);

  double initial_value() const { return initial_value_; }
  std::span<const Jump> jumps() const { return jumps_; }
  double horizon() const { return horizon_; }
  double final_value() const {
    return jumps_.empty() ? initial_value_ : jumps_.back().value;
  }

  /// Throws std::domain_error when t is outside [0, T].
  double operator()(double t) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  double initial_value_;
  std::vector<Jump> jumps_;
  double horizon_;
};

double step_eval(const StepFunction& f, double t);

/// Evaluates a step function at a non-decreasing sequence of times in
/// amortized O(1) per query.
class StepCursor {
 public:
  explicit StepCursor(const StepFunction& f) : f_(&f) {}
  double operator()(double t);

 private:
  const StepFunction* f_;
  std::size_t next_ = 0;
};

/// Pointwise sum. Both functions must share the horizon.
StepFunction operator+(const StepFunction& f, const StepFunction& g);

/// sup_{t in [0,T]} |f(t) - g(t)|, exact over the merged jump set.
double sup_distance(const StepFunction& f, const StepFunction& g);

struct MarkedPoint {
  double time;
  double mark;

  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

/// Finite marked point measure on [0, T] x [-inf, +inf].
///
/// Atoms with |mark| below `truncation` may have been discarded; truncation 0
/// means the list is exhaustive over positive marks and kRetainAll means the
/// list is exhaustive. A measure may be built from arbitrary input, in which
/// case validate_measure() reports the first violation and the functional
/// refuses to operate on it.
class PointMeasure {
 public:
  PointMeasure(std::vector<MarkedPoint> points, double horizon,
               double truncation = 0.0);

  /// Stable-sorts the points by time before construction.
  static PointMeasure from_unsorted(std::vector<MarkedPoint> points,
                                    double horizon, double truncation = 0.0);

  std::span<const MarkedPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double horizon() const { return horizon_; }
  double truncation() const { return truncation_; }
  bool valid() const { return !violation_.has_value(); }
  const std::optional<std::string>& violation() const { return violation_; }

  /// Number of atoms in [0, s] x (x, +inf].
  std::size_t count_in_box(double s, double x) const;

  /// Atoms with mark strictly above `level`, in time order.
  PointMeasure restrict_above(double level) const;

  friend bool operator==(const PointMeasure& a, const PointMeasure& b) {
    return a.points_ == b.points_ && a.horizon_ == b.horizon_ &&
           a.truncation_ == b.truncation_;
  }

 private:
  std::vector<MarkedPoint> points_;
  double horizon_;
  double truncation_;
  std::optional<std::string> violation_;
};

/// std::nullopt when the measure is well formed, otherwise a description
/// such as "unsorted" or "out of horizon".
std::optional<std::string> validate_measure(const PointMeasure& nu);

/// Parameters of the tail measure mu((x, inf]) = c * x^{-a}.
struct TailLaw {
  double c = 1.0;
  double a = 2.0;

  TailLaw() = default;
  TailLaw(double c_, double a_);

  /// c * x^{-a} for x > 0; +inf at x <= 0.
  double tail_mass(double x) const;

  friend bool operator==(const TailLaw&, const TailLaw&) = default;
};

}  // namespace prwmax
