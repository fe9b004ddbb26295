#pragma once

// Finite unions of half-open arcs on the circle R/LZ.
//
// Arcs are stored by their two endpoints on the circle rather than by
// (start, length) so that set operations which only move endpoints around
// (complement, intersection, union) are exact.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "smalldiff/errors.hpp"

namespace smalldiff {

/// The circle R/LZ, L >= 1.
class Circle {
 public:
  explicit Circle(double perimeter) : perimeter_(perimeter) {
    if (!std::isfinite(perimeter) || perimeter < 1.0) {
      throw invalid_input("circle perimeter must be a finite real >= 1, got " +
                          std::to_string(perimeter));
    }
  }

  double perimeter() const noexcept { return perimeter_; }

  /// Representative of x in [0, L).
  double reduce(double x) const noexcept {
    double r = std::fmod(x, perimeter_);
    if (r < 0.0) r += perimeter_;
    if (r >= perimeter_) r = 0.0;
    return r;
  }

  /// Representative of x in (0, L]; used for right endpoints.
  double reduce_stop(double x) const noexcept {
    const double r = reduce(x);
    return r == 0.0 ? perimeter_ : r;
  }

  /// Length of the shorter way round between x and y.
  double distance(double x, double y) const noexcept {
    const double d = reduce(y - x);
    return std::min(d, perimeter_ - d);
  }

  friend bool operator==(const Circle&, const Circle&) = default;

 private:
  double perimeter_;
};

/// Half-open linear interval [lo, hi) inside [0, L].
struct Interval {
  double lo;
  double hi;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Half-open arc [start, stop) on the circle. start lies in [0, L) and stop in
/// (0, L]; stop < start means the arc wraps through 0. The full circle is
/// {0, L}.
struct Arc {
  double start;
  double stop;

  bool wraps() const noexcept { return stop < start; }
  double length(double perimeter) const noexcept {
    return wraps() ? stop + (perimeter - start) : stop - start;
  }
  friend bool operator==(const Arc&, const Arc&) = default;
};

namespace detail {

/// Appends the linear pieces of the arc from `start` to `stop` (both already
/// reduced); equal endpoints denote an empty arc.
inline void append_pieces(std::vector<Interval>& out, double start, double stop,
                          double perimeter) {
  if (stop > start) {
    out.push_back({start, stop});
  } else if (stop < start) {
    out.push_back({start, perimeter});
    if (stop > 0.0) out.push_back({0.0, stop});
  }
}

}  // namespace detail

/// Canonical finite union of arcs: sorted by start, pairwise disjoint, no two
/// touching arcs left unmerged, no empty arcs, at most one arc wrapping through 0
/// (and if present it is the last one).
class ArcSet {
 public:
  explicit ArcSet(Circle circle) : circle_(circle) {}

  /// Builds the canonical set from linear pieces inside [0, L]. Pieces may
  /// overlap, touch, or be empty; merging uses exact endpoint equality.
  static ArcSet from_pieces(Circle circle, std::vector<Interval> pieces) {
    const double L = circle.perimeter();
    for (const auto& p : pieces) {
      if (!(p.lo >= 0.0 && p.hi <= L && p.lo <= p.hi)) {
        throw invalid_input("piece [" + std::to_string(p.lo) + ", " + std::to_string(p.hi) +
                            ") does not lie inside [0, L]");
      }
    }
    std::erase_if(pieces, [](const Interval& p) { return p.hi <= p.lo; });
    std::sort(pieces.begin(), pieces.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

    std::vector<Interval> merged;
    for (const auto& p : pieces) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, p.hi);
      } else {
        merged.push_back(p);
      }
    }

    ArcSet out(circle);
    if (merged.size() == 1 && merged.front().lo == 0.0 && merged.front().hi == L) {
      out.arcs_.push_back({0.0, L});
    } else if (merged.size() >= 2 && merged.front().lo == 0.0 && merged.back().hi == L) {
      for (std::size_t i = 1; i + 1 < merged.size(); ++i) {
        out.arcs_.push_back({merged[i].lo, merged[i].hi});
      }
      out.arcs_.push_back({merged.back().lo, merged.front().hi});
    } else {
      for (const auto& p : merged) out.arcs_.push_back({p.lo, p.hi});
    }
    out.pieces_ = std::move(merged);
    return out;
  }

  static ArcSet full(Circle circle) {
    return from_pieces(circle, {{0.0, circle.perimeter()}});
  }

  const Circle& circle() const noexcept { return circle_; }
  double perimeter() const noexcept { return circle_.perimeter(); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  bool empty() const noexcept { return arcs_.empty(); }
  bool is_full() const noexcept {
    return arcs_.size() == 1 && arcs_.front().start == 0.0 && arcs_.front().stop == perimeter();
  }

  /// The set cut at 0 into sorted, disjoint linear pieces of [0, L).
  std::span<const Interval> pieces() const noexcept { return pieces_; }

  double measure() const noexcept {
    double total = 0.0;
    for (const auto& a : arcs_) total += a.length(perimeter());
    return total;
  }

  /// measure / L, clamped into [0, 1] against rounding.
  double density() const noexcept { return std::clamp(measure() / perimeter(), 0.0, 1.0); }

  bool contains(double x) const noexcept {
    const double r = circle_.reduce(x);
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), r,
                               [](double v, const Interval& p) { return v < p.lo; });
    if (it == pieces_.begin()) return false;
    --it;
    return r < it->hi;
  }

  /// Every arc endpoint (starts and stops), reduced into [0, L).
  std::vector<double> endpoints() const {
    std::vector<double> out;
    if (is_full()) return out;
    out.reserve(2 * arcs_.size());
    for (const auto& a : arcs_) {
      out.push_back(a.start);
      out.push_back(circle_.reduce(a.stop));
    }
    return out;
  }

  friend bool operator==(const ArcSet& a, const ArcSet& b) {
    return a.circle_ == b.circle_ && a.arcs_ == b.arcs_;
  }

 private:
  Circle circle_;
  std::vector<Arc> arcs_;
  std::vector<Interval> pieces_;
};

/// Canonicalises raw (start, length) arcs on the circle of perimeter L.
/// Zero-length arcs are dropped; overlapping or touching arcs are merged,
/// including across 0.
inline ArcSet normalize(std::span<const std::pair<double, double>> raw, double L) {
  const Circle circle(L);
  std::vector<Interval> pieces;
  for (const auto& [start, length] : raw) {
    if (!std::isfinite(start) || !std::isfinite(length)) {
      throw invalid_input("arc coordinates must be finite");
    }
    if (length < 0.0) throw invalid_input("arc length must be >= 0");
    if (length > L) {
      throw invalid_input("arc length " + std::to_string(length) + " exceeds perimeter " +
                          std::to_string(L));
    }
    if (length == 0.0) continue;
    if (length == L) return ArcSet::full(circle);
    const double s = circle.reduce(start);
    const double e = s + length;
    if (e <= L) {
      pieces.push_back({s, e});
    } else {
      pieces.push_back({s, L});
      pieces.push_back({0.0, std::min(e - L, L)});
    }
  }
  return ArcSet::from_pieces(circle, std::move(pieces));
}

inline ArcSet normalize(std::initializer_list<std::pair<double, double>> raw, double L) {
  return normalize(std::span<const std::pair<double, double>>(raw.begin(), raw.size()), L);
}

inline double measure(const ArcSet& a) { return a.measure(); }

inline ArcSet complement(const ArcSet& a) {
  const double L = a.perimeter();
  std::vector<Interval> gaps;
  double cursor = 0.0;
  for (const auto& p : a.pieces()) {
    if (p.lo > cursor) gaps.push_back({cursor, p.lo});
    cursor = p.hi;
  }
  if (cursor < L) gaps.push_back({cursor, L});
  return ArcSet::from_pieces(a.circle(), std::move(gaps));
}

/// Shifts every arc by c modulo L.
inline ArcSet rotate(const ArcSet& a, double c) {
  const Circle& circle = a.circle();
  c = circle.reduce(c);
  if (c == 0.0 || a.is_full() || a.empty()) return a;
  std::vector<Interval> pieces;
  for (const auto& arc : a.arcs()) {
    detail::append_pieces(pieces, circle.reduce(arc.start + c), circle.reduce_stop(arc.stop + c),
                          circle.perimeter());
  }
  return ArcSet::from_pieces(circle, std::move(pieces));
}

/// Image under x -> -x mod L.
inline ArcSet reflect(const ArcSet& a) {
  if (a.is_full() || a.empty()) return a;
  const Circle& circle = a.circle();
  std::vector<Interval> pieces;
  for (const auto& arc : a.arcs()) {
    detail::append_pieces(pieces, circle.reduce(-arc.stop), circle.reduce_stop(-arc.start),
                          circle.perimeter());
  }
  return ArcSet::from_pieces(circle, std::move(pieces));
}

inline ArcSet intersect(const ArcSet& a, const ArcSet& b) {
  if (!(a.circle() == b.circle())) throw invalid_input("arc sets live on different circles");
  std::vector<Interval> out;
  auto pa = a.pieces();
  auto pb = b.pieces();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    const double lo = std::max(pa[i].lo, pb[j].lo);
    const double hi = std::min(pa[i].hi, pb[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (pa[i].hi < pb[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return ArcSet::from_pieces(a.circle(), std::move(out));
}

inline ArcSet unite(const ArcSet& a, const ArcSet& b) {
  if (!(a.circle() == b.circle())) throw invalid_input("arc sets live on different circles");
  std::vector<Interval> all(a.pieces().begin(), a.pieces().end());
  all.insert(all.end(), b.pieces().begin(), b.pieces().end());
  return ArcSet::from_pieces(a.circle(), std::move(all));
}

/// Whether the parts tile the circle of perimeter L: pairwise intersections
/// null and total measure L, both within 1e-12 * L.
inline bool is_partition(std::span<const ArcSet> parts, double L) {
  const double tol = 1e-12 * L;
  double total = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].perimeter() != L) return false;
    total += parts[i].measure();
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (intersect(parts[i], parts[j]).measure() > tol) return false;
    }
  }
  return std::abs(total - L) <= tol;
}

/// A colouring A_1 ⊍ ... ⊍ A_{k+1} of the circle.
class Partition {
 public:
  Partition(Circle circle, std::vector<ArcSet> parts)
      : circle_(circle), parts_(std::move(parts)) {
    if (parts_.empty()) throw invalid_input("a partition needs at least one part");
    if (!is_partition(parts_, circle_.perimeter())) {
      throw invalid_input("parts do not partition the circle");
    }
  }

  const Circle& circle() const noexcept { return circle_; }
  double perimeter() const noexcept { return circle_.perimeter(); }
  std::span<const ArcSet> parts() const noexcept { return parts_; }
  /// Number of colours minus one.
  int k() const noexcept { return static_cast<int>(parts_.size()) - 1; }

 private:
  Circle circle_;
  std::vector<ArcSet> parts_;
};

}  // namespace smalldiff
