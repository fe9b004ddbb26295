#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "smalldiff/circle.hpp"

namespace smalldiff {

struct Knot {
  double x;
  double value;
};

/// Continuous piecewise-linear function on the circle, determined by its
/// values at sorted breakpoints in [0, L) and linear in between (cyclically).
class PiecewiseLinear {
 public:
  PiecewiseLinear(Circle circle, std::vector<Knot> knots)
      : circle_(circle), knots_(std::move(knots)) {
    std::sort(knots_.begin(), knots_.end(),
              [](const Knot& a, const Knot& b) { return a.x < b.x; });
  }

  const Circle& circle() const noexcept { return circle_; }
  std::span<const Knot> knots() const noexcept { return knots_; }

  double operator()(double x) const noexcept {
    if (knots_.empty()) return 0.0;
    if (knots_.size() == 1) return knots_.front().value;
    const double L = circle_.perimeter();
    const double r = circle_.reduce(x);
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), r,
                               [](double v, const Knot& k) { return v < k.x; });
    Knot left, right;
    double pos = r;
    if (hi == knots_.begin() || hi == knots_.end()) {
      left = knots_.back();
      right = knots_.front();
      right.x += L;
      if (hi == knots_.begin()) pos += L;
    } else {
      left = *(hi - 1);
      right = *hi;
    }
    if (pos == left.x) return left.value;
    const double t = (pos - left.x) / (right.x - left.x);
    return left.value + t * (right.value - left.value);
  }

  /// Exact integral over the linear interval [lo, hi] with 0 <= lo <= hi <= L.
  double integrate(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    double total = 0.0;
    double x0 = lo;
    double y0 = (*this)(lo);
    auto it = std::upper_bound(knots_.begin(), knots_.end(), lo,
                               [](double v, const Knot& k) { return v < k.x; });
    for (; it != knots_.end() && it->x < hi; ++it) {
      total += 0.5 * (y0 + it->value) * (it->x - x0);
      x0 = it->x;
      y0 = it->value;
    }
    // `hi` may equal L, which reduces to 0; evaluate by continuity from below.
    const double y1 = hi >= circle_.perimeter() ? (*this)(0.0) : (*this)(hi);
    total += 0.5 * (y0 + y1) * (hi - x0);
    return total;
  }

  /// Exact integral over an arc set on the same circle.
  double integrate(const ArcSet& a) const {
    double total = 0.0;
    for (const auto& p : a.pieces()) total += integrate(p.lo, p.hi);
    return total;
  }

  double integrate() const { return integrate(0.0, circle_.perimeter()); }

 private:
  Circle circle_;
  std::vector<Knot> knots_;
};

/// Piecewise-linear function on a closed interval [knots.front().x, knots.back().x].
class Polyline {
 public:
  Polyline() = default;
  explicit Polyline(std::vector<Knot> knots) : knots_(std::move(knots)) {}

  std::span<const Knot> knots() const noexcept { return knots_; }
  double lo() const noexcept { return knots_.front().x; }
  double hi() const noexcept { return knots_.back().x; }

  double operator()(double x) const noexcept {
    if (knots_.empty()) return 0.0;
    if (x <= knots_.front().x) return knots_.front().value;
    if (x >= knots_.back().x) return knots_.back().value;
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                               [](double v, const Knot& k) { return v < k.x; });
    const Knot& a = *(it - 1);
    const Knot& b = *it;
    if (b.x == a.x) return b.value;
    return a.value + (x - a.x) / (b.x - a.x) * (b.value - a.value);
  }

  double integral() const noexcept {
    double total = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      total += 0.5 * (knots_[i - 1].value + knots_[i].value) * (knots_[i].x - knots_[i - 1].x);
    }
    return total;
  }

  /// Largest |slope| over all segments.
  double max_slope() const noexcept {
    double s = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i) {
      const double dx = knots_[i].x - knots_[i - 1].x;
      if (dx > 0.0) s = std::max(s, std::abs(knots_[i].value - knots_[i - 1].value) / dx);
    }
    return s;
  }

  double min_value() const noexcept {
    double m = knots_.empty() ? 0.0 : knots_.front().value;
    for (const auto& k : knots_) m = std::min(m, k.value);
    return m;
  }

  /// Pointwise max(this, floor), with crossing points inserted so the result
  /// stays exactly piecewise linear.
  Polyline clipped_below(double floor) const {
    std::vector<Knot> out;
    for (std::size_t i = 0; i < knots_.size(); ++i) {
      if (i > 0) {
        const Knot& a = knots_[i - 1];
        const Knot& b = knots_[i];
        if ((a.value - floor) * (b.value - floor) < 0.0) {
          const double t = (floor - a.value) / (b.value - a.value);
          out.push_back({a.x + t * (b.x - a.x), floor});
        }
      }
      out.push_back({knots_[i].x, std::max(knots_[i].value, floor)});
    }
    return Polyline(std::move(out));
  }

 private:
  std::vector<Knot> knots_;
};

}  // namespace smalldiff
