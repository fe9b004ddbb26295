#pragma once

#include <algorithm>
#include <vector>

#include "smalldiff/circle.hpp"
#include "smalldiff/discrete.hpp"
#include "smalldiff/random.hpp"

namespace smalldiff {

/// Random union of 1..max_arcs disjoint arcs on a circle with L uniform in
/// [L_lo, L_hi]: 2n uniform points are sorted and paired up, then the whole
/// set is rotated uniformly, so wrapping arcs occur.
inline ArcSet random_arcset(Rng& rng, int max_arcs = 8, double L_lo = 1.0, double L_hi = 20.0) {
  const double L = rng.uniform(L_lo, L_hi);
  const int n = rng.integer(1, max_arcs);
  std::vector<double> points(static_cast<std::size_t>(2 * n));
  for (double& p : points) p = rng.uniform(0.0, L);
  std::sort(points.begin(), points.end());
  const Circle circle(L);
  const double shift = rng.uniform(0.0, L);
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < points.size(); i += 2) {
    detail::append_pieces(pieces, circle.reduce(points[i] + shift),
                          circle.reduce_stop(points[i + 1] + shift), L);
  }
  return ArcSet::from_pieces(circle, std::move(pieces));
}

inline DiscreteColouring random_colouring(Rng& rng, int k, int n) {
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (int& c : colors) c = rng.integer(1, k + 1);
  return DiscreteColouring(k, std::move(colors));
}

}  // namespace smalldiff
