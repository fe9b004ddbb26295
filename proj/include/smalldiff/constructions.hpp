#pragma once

// Extremal configurations for the density and colouring bounds, block
// colourings of [n], and the blow-up of a discrete colouring to the circle.

#include <cmath>
#include <vector>

#include "smalldiff/circle.hpp"
#include "smalldiff/discrete.hpp"
#include "smalldiff/errors.hpp"

namespace smalldiff {

/// n arcs of length ξL/n starting at jL/n. Equality in the density bound
/// holds when n = W(ξ) L.
inline ArcSet equispaced_density(double xi, double L, int n) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw domain_error("xi must lie in [0, 1]");
  if (n < 1) throw invalid_input("n must be >= 1");
  const Circle circle(L);
  if (xi == 1.0) return ArcSet::full(circle);
  std::vector<Interval> pieces;
  pieces.reserve(static_cast<std::size_t>(n));
  const double length = xi * L / n;
  for (int j = 0; j < n; ++j) {
    const double start = L * j / n;
    pieces.push_back({start, std::min(start + length, L)});
  }
  return ArcSet::from_pieces(circle, std::move(pieces));
}

/// (k+1)n arcs of length 1/sqrt(k²+1) coloured round-robin on the circle of
/// perimeter L = n(k+1)/sqrt(k²+1); the equality case of the colouring bound.
inline Partition alternating_partition(int k, int n) {
  if (k < 0) throw invalid_input("k must be >= 0");
  if (n < 1) throw invalid_input("n must be >= 1");
  const double root = std::sqrt(static_cast<double>(k) * k + 1.0);
  const int cells = (k + 1) * n;
  const double L = cells / root;
  const Circle circle(L);
  // Cut points are computed once so that neighbouring arcs share endpoints exactly.
  std::vector<double> cuts(static_cast<std::size_t>(cells) + 1);
  for (int j = 0; j <= cells; ++j) cuts[static_cast<std::size_t>(j)] = L * j / cells;
  cuts.back() = L;
  std::vector<std::vector<Interval>> pieces(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j < cells; ++j) {
    pieces[static_cast<std::size_t>(j % (k + 1))].push_back(
        {cuts[static_cast<std::size_t>(j)], cuts[static_cast<std::size_t>(j) + 1]});
  }
  std::vector<ArcSet> parts;
  for (auto& p : pieces) parts.push_back(ArcSet::from_pieces(circle, std::move(p)));
  return Partition(circle, std::move(parts));
}

/// Vertex x in [n] gets colour ((x-1) / t mod (k+1)) + 1; the last block may
/// be partial.
inline DiscreteColouring block_colouring(int k, int n, int t_blocks) {
  if (k < 0 || n < 1 || t_blocks < 1) throw invalid_input("need k >= 0, n >= 1, t >= 1");
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (int x = 1; x <= n; ++x) {
    colors[static_cast<std::size_t>(x - 1)] = ((x - 1) / t_blocks) % (k + 1) + 1;
  }
  return DiscreteColouring(k, std::move(colors));
}

/// Circle of perimeter n/m cut into cells [(j-1)/m, j/m); part i collects the
/// cells whose vertex has colour i. Always k+1 parts, some possibly empty.
inline Partition blowup(const DiscreteColouring& c, int m) {
  const int n = c.n();
  if (m < 1 || n < m) throw domain_error("blow-up needs n >= m >= 1");
  const double L = static_cast<double>(n) / m;
  const Circle circle(L);
  std::vector<std::vector<Interval>> pieces(static_cast<std::size_t>(c.k()) + 1);
  for (int j = 1; j <= n; ++j) {
    const double lo = static_cast<double>(j - 1) / m;
    const double hi = j == n ? L : static_cast<double>(j) / m;
    pieces[static_cast<std::size_t>(c[j] - 1)].push_back({lo, hi});
  }
  std::vector<ArcSet> parts;
  for (auto& p : pieces) parts.push_back(ArcSet::from_pieces(circle, std::move(p)));
  return Partition(circle, std::move(parts));
}

}  // namespace smalldiff
