#pragma once

// Monochromatic edges of path powers.
//
// P_n^m has vertex set [n] and an edge {x, y} whenever 0 < |x - y| <= m.
// f(k, m, n) is the least number of monochromatic edges over all colourings of
// [n] with k+1 colours, i.e. min Σ_i Ψ_m(A_i) over partitions [n] = ⊍ A_i.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "smalldiff/bounds.hpp"
#include "smalldiff/errors.hpp"

namespace smalldiff {

/// Colouring of [n] with colours 1..k+1.
class DiscreteColouring {
 public:
  DiscreteColouring(int k, std::vector<int> colors) : k_(k), colors_(std::move(colors)) {
    if (k_ < 0) throw invalid_input("k must be >= 0");
    if (colors_.empty()) throw invalid_input("a colouring needs n >= 1 vertices");
    for (const int c : colors_) {
      if (c < 1 || c > k_ + 1) {
        throw invalid_input("colour " + std::to_string(c) + " outside [1, " +
                            std::to_string(k_ + 1) + "]");
      }
    }
  }

  int k() const noexcept { return k_; }
  int n() const noexcept { return static_cast<int>(colors_.size()); }
  std::span<const int> colors() const noexcept { return colors_; }
  /// Colour of vertex x, 1-based.
  int operator[](int x) const { return colors_.at(static_cast<std::size_t>(x - 1)); }

  /// Vertices (1-based) carrying colour c.
  std::vector<int> colour_class(int c) const {
    std::vector<int> out;
    for (int x = 1; x <= n(); ++x) {
      if (colors_[static_cast<std::size_t>(x - 1)] == c) out.push_back(x);
    }
    return out;
  }

  /// Colours as a digit string, e.g. "12211221"; colours above 9 are
  /// bracketed.
  std::string to_string() const {
    std::string s;
    for (const int c : colors_) s += c <= 9 ? std::to_string(c) : "[" + std::to_string(c) + "]";
    return s;
  }

  friend bool operator==(const DiscreteColouring&, const DiscreteColouring&) = default;

 private:
  int k_;
  std::vector<int> colors_;
};

struct DiscreteInstance {
  int k = 0;
  int m = 1;
  int n = 1;

  void validate() const {
    if (k < 0) throw invalid_input("k must be >= 0");
    if (m < 1) throw invalid_input("m must be >= 1");
    if (n < 1) throw invalid_input("n must be >= 1");
  }
};

struct DiscreteSolution {
  long long value = 0;
  DiscreteColouring witness;
};

/// Number of pairs x < y <= x + m inside A.
inline long long psi_m(std::vector<int> a, int m) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  long long count = 0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < a.size(); ++lo) {
    hi = std::max(hi, lo + 1);
    while (hi < a.size() && static_cast<long long>(a[hi]) - a[lo] <= m) ++hi;
    count += static_cast<long long>(hi - lo - 1);
  }
  return count;
}

inline long long mono_edges(const DiscreteColouring& c, int m) {
  if (m < 1) throw invalid_input("m must be >= 1");
  long long count = 0;
  const auto col = c.colors();
  for (std::size_t y = 1; y < col.size(); ++y) {
    const std::size_t first = y > static_cast<std::size_t>(m) ? y - m : 0;
    for (std::size_t x = first; x < y; ++x) count += col[x] == col[y];
  }
  return count;
}

namespace detail {

inline std::uint64_t checked_power(int base, int exponent, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (int i = 0; i < exponent; ++i) {
    v *= static_cast<std::uint64_t>(base);
    if (v > cap) return cap + 1;
  }
  return v;
}

}  // namespace detail

/// Exhaustive search with vertex 1 fixed to colour 1, depth-first in
/// lexicographic order; returns the lexicographically smallest optimum.
/// Guard: (k+1)^n <= 1e8.
inline DiscreteSolution f_brute(const DiscreteInstance& inst) {
  inst.validate();
  constexpr std::uint64_t cap = 100'000'000;
  if (detail::checked_power(inst.k + 1, inst.n, cap) > cap) {
    throw capacity_error("brute force needs (k+1)^n <= 1e8");
  }
  const int n = inst.n, m = inst.m, colours = inst.k + 1;
  if (n == 1) return {0, DiscreteColouring(inst.k, {1})};
  std::vector<int> current(static_cast<std::size_t>(n), 1);
  std::vector<int> best;
  long long best_value = std::numeric_limits<long long>::max();

  // Iterative DFS; cost[i] is the cost of the prefix of length i.
  std::vector<long long> cost(static_cast<std::size_t>(n) + 1, 0);
  int depth = 1;  // current[0] is fixed to colour 1
  current[1] = 0;
  while (depth >= 1) {
    auto& slot = current[static_cast<std::size_t>(depth)];
    ++slot;
    if (slot > colours) {
      --depth;
      continue;
    }
    long long added = 0;
    for (int x = std::max(0, depth - m); x < depth; ++x) {
      added += current[static_cast<std::size_t>(x)] == slot;
    }
    const long long c = cost[static_cast<std::size_t>(depth)] + added;
    if (c >= best_value) continue;  // ties found later are lexicographically larger
    if (depth == n - 1) {
      best_value = c;
      best = current;
      continue;
    }
    cost[static_cast<std::size_t>(depth) + 1] = c;
    ++depth;
    current[static_cast<std::size_t>(depth)] = 0;
  }
  return {best_value, DiscreteColouring(inst.k, std::move(best))};
}

namespace detail {

/// Window state: the colours (0-based) of the last w vertices as a base-(k+1)
/// integer with the most recent vertex in the lowest digit.
struct WindowDp {
  int colours;
  int m;
  std::vector<std::uint64_t> layer_size;  // layer_size[w] = colours^w

  WindowDp(int k, int m_) : colours(k + 1), m(m_) {
    layer_size.resize(static_cast<std::size_t>(m) + 1);
    layer_size[0] = 1;
    for (int w = 1; w <= m; ++w) layer_size[w] = layer_size[w - 1] * colours;
  }

  std::uint64_t states(int processed) const {
    return layer_size[static_cast<std::size_t>(std::min(processed, m))];
  }

  /// Monochromatic back-edges created by appending colour c to state s of width w.
  int added(std::uint64_t s, int w, int c) const {
    int count = 0;
    for (int i = 0; i < w; ++i) {
      count += static_cast<int>(s % colours) == c;
      s /= colours;
    }
    return count;
  }

  std::uint64_t next(std::uint64_t s, int processed, int c) const {
    const std::uint64_t width_after = states(processed + 1);
    return (s * colours + static_cast<std::uint64_t>(c)) % width_after;
  }
};

constexpr std::uint64_t kDpStateCap = 10'000'000;
constexpr std::uint64_t kDpTableCap = 50'000'000;

}  // namespace detail

/// f(k, m, n') for every n' in 1..n_max with a single forward pass; O((k+1)^m)
/// memory. Index 0 of the result is f(k, m, 0) = 0.
inline std::vector<long long> f_values_dp(int k, int m, int n_max) {
  DiscreteInstance{k, m, std::max(n_max, 1)}.validate();
  if (detail::checked_power(k + 1, m, detail::kDpStateCap) > detail::kDpStateCap) {
    throw capacity_error("DP needs (k+1)^m <= 1e7");
  }
  const detail::WindowDp dp(k, m);
  constexpr long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> cur(1, 0), nxt;
  std::vector<long long> out{0};
  for (int t = 0; t < n_max; ++t) {
    const int w = std::min(t, m);
    nxt.assign(dp.states(t + 1), inf);
    for (std::uint64_t s = 0; s < cur.size(); ++s) {
      if (cur[s] >= inf) continue;
      for (int c = 0; c < dp.colours; ++c) {
        const std::uint64_t s2 = dp.next(s, t, c);
        nxt[s2] = std::min(nxt[s2], cur[s] + dp.added(s, w, c));
      }
    }
    cur.swap(nxt);
    out.push_back(*std::min_element(cur.begin(), cur.end()));
  }
  return out;
}

/// Exact f(k, m, n) by dynamic programming over colour windows, with the
/// lexicographically smallest optimal colouring as witness.
/// Guards: (k+1)^m <= 1e7 states, n * states <= 5e7 table entries.
inline DiscreteSolution f_exact_dp(const DiscreteInstance& inst) {
  inst.validate();
  const int k = inst.k, m = inst.m, n = inst.n;
  if (detail::checked_power(k + 1, m, detail::kDpStateCap) > detail::kDpStateCap) {
    throw capacity_error("DP needs (k+1)^m <= 1e7");
  }
  const detail::WindowDp dp(k, m);
  if (static_cast<std::uint64_t>(n) * dp.states(n) > detail::kDpTableCap) {
    throw capacity_error("DP witness table needs n * (k+1)^min(m,n) <= 5e7");
  }
  constexpr long long inf = std::numeric_limits<long long>::max() / 4;

  // to_go[t][s]: least cost of colouring vertices t+1..n given state s after t vertices.
  std::vector<std::vector<long long>> to_go(static_cast<std::size_t>(n) + 1);
  to_go[n].assign(dp.states(n), 0);
  for (int t = n - 1; t >= 0; --t) {
    const int w = std::min(t, m);
    auto& row = to_go[static_cast<std::size_t>(t)];
    const auto& after = to_go[static_cast<std::size_t>(t) + 1];
    row.assign(dp.states(t), inf);
    for (std::uint64_t s = 0; s < row.size(); ++s) {
      for (int c = 0; c < dp.colours; ++c) {
        row[s] = std::min(row[s], dp.added(s, w, c) + after[dp.next(s, t, c)]);
      }
    }
  }

  std::vector<int> colors;
  colors.reserve(static_cast<std::size_t>(n));
  std::uint64_t s = 0;
  for (int t = 0; t < n; ++t) {
    const int w = std::min(t, m);
    const long long target = to_go[static_cast<std::size_t>(t)][s];
    for (int c = 0; c < dp.colours; ++c) {
      const std::uint64_t s2 = dp.next(s, t, c);
      if (dp.added(s, w, c) + to_go[static_cast<std::size_t>(t) + 1][s2] == target) {
        colors.push_back(c + 1);
        s = s2;
        break;
      }
    }
  }
  return {to_go[0][0], DiscreteColouring(k, std::move(colors))};
}

/// f(k, m, n) - discrete_bound(k, m, n); passes iff slack >= -1e-9.
inline BoundReport check_thm3(const DiscreteInstance& inst) {
  inst.validate();
  if (inst.n < inst.m) throw domain_error("theorem needs n >= m >= 1");
  const double bound = discrete_bound(inst.k, inst.m, inst.n);
  const auto sol = f_exact_dp(inst);
  return make_report(bound, static_cast<double>(sol.value),
                     "thm3 k=" + std::to_string(inst.k) + " m=" + std::to_string(inst.m) +
                         " n=" + std::to_string(inst.n),
                     1e-9);
}

struct AlphaBracket {
  double lower = 0.0;  // (sqrt(k²+1)-k) m - 1/2
  double upper = 0.0;  // min_n (f(k,m,n) + C(m+1,2)) / n
  int argmin_n = 0;
};

/// Brackets lim f(k,m,n)/n: the upper end uses subadditivity of
/// n -> f(k,m,n) + C(m+1,2) (Fekete), the lower end the discrete bound.
inline AlphaBracket alpha_estimate(int k, int m, int n_max) {
  if (n_max < 1) throw invalid_input("n_max must be >= 1");
  const auto f = f_values_dp(k, m, n_max);
  const double overlap = m * (m + 1) / 2.0;
  AlphaBracket out;
  const double kk = k;
  out.lower = (std::sqrt(kk * kk + 1.0) - kk) * m - 0.5;
  out.upper = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const double v = (static_cast<double>(f[static_cast<std::size_t>(n)]) + overlap) / n;
    if (v < out.upper) {
      out.upper = v;
      out.argmin_n = n;
    }
  }
  return out;
}

/// f(k,m,n1+n2) <= f(k,m,n1) + f(k,m,n2) + C(m+1,2), checked exactly.
inline BoundReport subadditivity_check(int k, int m, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw invalid_input("n1, n2 must be >= 1");
  const auto f = f_values_dp(k, m, n1 + n2);
  const long long lhs = f[static_cast<std::size_t>(n1 + n2)];
  const long long rhs = f[static_cast<std::size_t>(n1)] + f[static_cast<std::size_t>(n2)] +
                        static_cast<long long>(m) * (m + 1) / 2;
  BoundReport r;
  // Reads as "rhs is an upper bound on lhs": slack = rhs - lhs.
  r.bound_value = static_cast<double>(lhs);
  r.achieved_value = static_cast<double>(rhs);
  r.slack = static_cast<double>(rhs - lhs);
  r.passes = lhs <= rhs;
  r.context = "subadditivity k=" + std::to_string(k) + " m=" + std::to_string(m) +
              " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2);
  return r;
}

}  // namespace smalldiff
