#include "prwmax/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prwmax {

StepFunction::StepFunction(double initial_value, std::vector<Jump> jumps,
                           double horizon)
    : initial_value_(initial_value), jumps_(std::move(jumps)), horizon_(horizon) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw std::invalid_argument("StepFunction: horizon must be positive and finite");
  }
  if (!std::isfinite(initial_value_)) {
    throw std::invalid_argument("StepFunction: initial value must be finite");
  }
  double prev = 0.0;
  for (const Jump& j : jumps_) {
    if (!(j.time > prev) || j.time > horizon_) {
      throw std::invalid_argument(
          "StepFunction: jump times must be strictly increasing in (0, T]");
    }
    if (!std::isfinite(j.value)) {
      throw std::invalid_argument("StepFunction: jump values must be finite");
    }
    prev = j.time;
  }
}

StepFunction StepFunction::constant(double value, double horizon) {
  return StepFunction(value, {}, horizon);
}

double StepFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= horizon_)) {
    throw std::domain_error("StepFunction: evaluation time outside [0, T]");
  }
  auto it = std::upper_bound(jumps_.begin(), jumps_.end(), t,
                             [](double x, const Jump& j) { return x < j.time; });
  return it == jumps_.begin() ? initial_value_ : std::prev(it)->value;
}

double step_eval(const StepFunction& f, double t) { return f(t); }

double StepCursor::operator()(double t) {
  auto jumps = f_->jumps();
  while (next_ < jumps.size() && jumps[next_].time <= t) ++next_;
  return next_ == 0 ? f_->initial_value() : jumps[next_ - 1].value;
}

namespace {

void require_same_horizon(const StepFunction& f, const StepFunction& g) {
  if (f.horizon() != g.horizon()) {
    throw std::domain_error("step functions have different horizons");
  }
}

// Calls visit(f_value, g_value) on every constancy interval of the pair.
template <class Visit>
void merge_walk(const StepFunction& f, const StepFunction& g, Visit&& visit) {
  auto fj = f.jumps();
  auto gj = g.jumps();
  double fv = f.initial_value();
  double gv = g.initial_value();
  std::size_t i = 0, k = 0;
  visit(0.0, fv, gv);
  while (i < fj.size() || k < gj.size()) {
    double t;
    if (k == gj.size() || (i < fj.size() && fj[i].time < gj[k].time)) {
      t = fj[i].time;
      fv = fj[i++].value;
    } else if (i == fj.size() || gj[k].time < fj[i].time) {
      t = gj[k].time;
      gv = gj[k++].value;
    } else {
      t = fj[i].time;
      fv = fj[i++].value;
      gv = gj[k++].value;
    }
    visit(t, fv, gv);
  }
}

}  // namespace

StepFunction operator+(const StepFunction& f, const StepFunction& g) {
  require_same_horizon(f, g);
  double initial = 0.0;
  std::vector<Jump> jumps;
  jumps.reserve(f.jumps().size() + g.jumps().size());
  merge_walk(f, g, [&](double t, double fv, double gv) {
    if (t == 0.0) {
      initial = fv + gv;
    } else {
      jumps.push_back({t, fv + gv});
    }
  });
  return StepFunction(initial, std::move(jumps), f.horizon());
}

double sup_distance(const StepFunction& f, const StepFunction& g) {
  require_same_horizon(f, g);
  double best = 0.0;
  merge_walk(f, g, [&](double, double fv, double gv) {
    best = std::max(best, std::abs(fv - gv));
  });
  return best;
}

std::optional<std::string> validate_measure(const PointMeasure& nu) {
  return nu.violation();
}

namespace {

std::optional<std::string> check_points(std::span<const MarkedPoint> points,
                                        double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) return "invalid horizon";
  double prev = 0.0;
  for (const MarkedPoint& p : points) {
    if (std::isnan(p.time)) return "non-finite time";
    if (std::isnan(p.mark)) return "NaN mark";
    if (p.time < 0.0 || p.time > horizon) return "out of horizon";
    if (p.time < prev) return "unsorted";
    prev = p.time;
  }
  return std::nullopt;
}

}  // namespace

PointMeasure::PointMeasure(std::vector<MarkedPoint> points, double horizon,
                           double truncation)
    : points_(std::move(points)), horizon_(horizon), truncation_(truncation) {
  violation_ = check_points(points_, horizon_);
  if (!violation_ && (std::isnan(truncation_) || truncation_ == kTopMark ||
                      (truncation_ < 0.0 && truncation_ != kRetainAll))) {
    violation_ = "invalid truncation";
  }
}

PointMeasure PointMeasure::from_unsorted(std::vector<MarkedPoint> points,
                                         double horizon, double truncation) {
  std::stable_sort(points.begin(), points.end(),
                   [](const MarkedPoint& x, const MarkedPoint& y) {
                     return x.time < y.time;
                   });
  return PointMeasure(std::move(points), horizon, truncation);
}

std::size_t PointMeasure::count_in_box(double s, double x) const {
  return static_cast<std::size_t>(
      std::count_if(points_.begin(), points_.end(), [&](const MarkedPoint& p) {
        return p.time <= s && p.mark > x;
      }));
}

PointMeasure PointMeasure::restrict_above(double level) const {
  std::vector<MarkedPoint> kept;
  for (const MarkedPoint& p : points_) {
    if (p.mark > level) kept.push_back(p);
  }
  double trunc = truncation_;
  if (level >= 0.0) trunc = std::max(trunc, level);
  return PointMeasure(std::move(kept), horizon_, trunc);
}

TailLaw::TailLaw(double c_, double a_) : c(c_), a(a_) {
  if (!(c > 0.0) || !std::isfinite(c) || !(a > 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument("TailLaw: c and a must be positive and finite");
  }
}

double TailLaw::tail_mass(double x) const {
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  return c * std::pow(x, -a);
}

}  // namespace prwmax
