#pragma once

// Local search for small η over endpoint configurations
//
//   0 <= a_1 <= a_2 <= ... <= a_{2n} <= L,   A = ⊍ [a_{2j-1}, a_{2j}),
//
// and for small Σ Φ(A_i) over cyclic interval partitions.
//
// Moving a right endpoint a_i up by δ adds [a_i, a_i + δ) to A and changes Φ
// by δ g_A(a_i) + O(δ²), while the bound term moves by δ φ(ξ). Hence
//
//   ∂η/∂a_i = s_i (g_A(a_i) - φ(ξ)),   s_i = -1 for left, +1 for right endpoints.
//
// In fixed-measure mode the gradient is projected onto the tangent space of
// {λ(A) = ξL}, which replaces φ by the mean of g over the endpoints. After a
// step the arc and gap lengths are clamped at zero and rescaled back onto the
// constraint; arcs or gaps that reach zero length collapse and the arc count
// drops for the rest of that restart.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "smalldiff/bounds.hpp"
#include "smalldiff/circle.hpp"
#include "smalldiff/errors.hpp"
#include "smalldiff/phi.hpp"
#include "smalldiff/random.hpp"

namespace smalldiff {

/// Point (a_1, ..., a_{2n}, L) of the configuration space.
struct ConfigPoint {
  std::vector<double> endpoints;
  double L = 1.0;

  int arc_count() const noexcept { return static_cast<int>(endpoints.size() / 2); }
};

inline void validate(const ConfigPoint& p) {
  if (p.endpoints.size() % 2 != 0) throw invalid_input("a configuration has 2n endpoints");
  Circle circle(p.L);
  double prev = 0.0;
  for (const double a : p.endpoints) {
    if (!(a >= prev && a <= p.L)) {
      throw invalid_input("configuration endpoints must satisfy 0 <= a_1 <= ... <= a_2n <= L");
    }
    prev = a;
  }
}

inline ArcSet arcset_of(const ConfigPoint& p) {
  validate(p);
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < p.endpoints.size(); i += 2) {
    pieces.push_back({p.endpoints[i], p.endpoints[i + 1]});
  }
  return ArcSet::from_pieces(Circle(p.L), std::move(pieces));
}

/// Canonical configuration of an arc set, rotated so that the first arc
/// starts at 0. Empty and full sets have no endpoints.
inline ConfigPoint config_of(const ArcSet& a) {
  ConfigPoint p;
  p.L = a.perimeter();
  if (a.empty() || a.is_full()) return p;
  const double origin = a.arcs().front().start;
  const double L = a.perimeter();
  for (const auto& arc : a.arcs()) {
    const double lo = arc.start - origin;
    p.endpoints.push_back(lo);
    p.endpoints.push_back(std::min(lo + arc.length(L), L));
  }
  return p;
}

namespace detail {

inline int endpoint_sign(std::size_t i) { return i % 2 == 0 ? -1 : +1; }

inline void require_strict(const ConfigPoint& p) {
  validate(p);
  const auto& a = p.endpoints;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!(a[i] > a[i - 1])) {
      throw degenerate_configuration("endpoints a_" + std::to_string(i) + " and a_" +
                                     std::to_string(i + 1) + " coincide");
    }
  }
  if (!a.empty() && !(a.back() - a.front() < p.L)) {
    throw degenerate_configuration("first and last endpoints coincide on the circle");
  }
}

}  // namespace detail

/// ∂η/∂a_i = s_i (g_A(a_i) - φ(ξ)) with ξ from the current configuration.
inline std::vector<double> eta_gradient(const ConfigPoint& p) {
  detail::require_strict(p);
  const ArcSet a = arcset_of(p);
  const double level = boundary_level(a.density());
  std::vector<double> grad(p.endpoints.size());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    grad[i] = detail::endpoint_sign(i) * (eval_g(a, p.endpoints[i]) - level);
  }
  return grad;
}

struct OptOptions {
  int restarts = 16;
  int max_iters = 10'000;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  /// Keep λ(A) = ξL throughout (default); otherwise descend on η freely.
  bool fix_measure = true;
  /// Called with every accepted configuration and its η.
  std::function<void(const ConfigPoint&, double)> on_accept;
  /// Called with every evaluated configuration and its η.
  std::function<void(const ConfigPoint&, double)> on_evaluate;
};

struct OptResult {
  ConfigPoint best;
  double eta_value = 0.0;
  double stationarity_residual = 0.0;  // max-norm of the search direction at `best`
  int trajectory_length = 0;           // accepted steps of the winning restart
  int restarts_used = 0;
  std::uint64_t seed = 0;
  double xi = 0.0;
  bool fix_measure = true;
};

namespace detail {

/// Arc lengths and gaps; arc j is followed by gap j, the first arc starts at 0.
struct Layout {
  std::vector<double> lengths;
  std::vector<double> gaps;
  double L;

  ConfigPoint config() const {
    ConfigPoint p;
    p.L = L;
    double pos = 0.0;
    for (std::size_t j = 0; j < lengths.size(); ++j) {
      const double lo = std::min(pos, L);
      pos += lengths[j];
      p.endpoints.push_back(lo);
      p.endpoints.push_back(std::min(pos, L));
      pos += gaps[j];
    }
    return p;
  }

  bool degenerate() const {
    for (const double v : lengths) {
      if (!(v > 0.0)) return true;
    }
    for (const double v : gaps) {
      if (!(v > 0.0)) return true;
    }
    return false;
  }

  static Layout from_config(const ConfigPoint& p) {
    Layout out{{}, {}, p.L};
    const auto& a = p.endpoints;
    const std::size_t n = a.size() / 2;
    for (std::size_t j = 0; j < n; ++j) {
      out.lengths.push_back(a[2 * j + 1] - a[2 * j]);
      const double next = j + 1 < n ? a[2 * j + 2] : a[0] + p.L;
      out.gaps.push_back(next - a[2 * j + 1]);
    }
    return out;
  }
};

inline void rescale(std::vector<double>& v, double target) {
  for (double& x : v) x = std::max(x, 0.0);
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (sum > 0.0) {
    for (double& x : v) x *= target / sum;
  } else if (!v.empty()) {
    for (double& x : v) x = target / static_cast<double>(v.size());
  }
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct RestartOutcome {
  ConfigPoint best;
  double eta = 0.0;
  double residual = 0.0;
  int accepted = 0;
};

/// Search direction at a strict configuration: tangent-projected in fixed
/// mode, the raw gradient otherwise.
inline std::vector<double> direction(const ArcSet& a, const ConfigPoint& p, bool fix_measure) {
  std::vector<double> g(p.endpoints.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = eval_g(a, p.endpoints[i]);
  double level = 0.0;
  if (fix_measure) {
    level = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
  } else {
    level = boundary_level(a.density());
  }
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = endpoint_sign(i) * (g[i] - level);
  return g;
}

inline RestartOutcome descend(Layout layout, double xi, const OptOptions& opts) {
  const double L = layout.L;
  auto evaluate = [&](const Layout& lay, ConfigPoint& cfg) {
    cfg = lay.config();
    const double value = eta(arcset_of(cfg));
    if (opts.on_evaluate) opts.on_evaluate(cfg, value);
    return value;
  };

  RestartOutcome out;
  double current = evaluate(layout, out.best);
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (layout.degenerate()) {
      const ArcSet a = arcset_of(layout.config());
      layout = Layout::from_config(config_of(a));
    }
    if (layout.lengths.empty()) break;  // collapsed to the empty or full set

    const ConfigPoint cfg = layout.config();
    const ArcSet a = arcset_of(cfg);
    const std::vector<double> d = direction(a, cfg, opts.fix_measure);
    out.residual = max_abs(d);
    if (out.residual < opts.tol) break;

    bool accepted = false;
    for (double step = 0.1 * L; step > 1e-15 * L; step *= 0.5) {
      std::vector<double> moved = cfg.endpoints;
      for (std::size_t i = 0; i < moved.size(); ++i) moved[i] -= step * d[i];
      const std::size_t n = layout.lengths.size();
      Layout trial{std::vector<double>(n), std::vector<double>(n), L};
      for (std::size_t j = 0; j < n; ++j) {
        trial.lengths[j] = moved[2 * j + 1] - moved[2 * j];
        const double next = j + 1 < n ? moved[2 * j + 2] : moved[0] + L;
        trial.gaps[j] = next - moved[2 * j + 1];
      }
      if (opts.fix_measure) {
        rescale(trial.lengths, xi * L);
        rescale(trial.gaps, (1.0 - xi) * L);
      } else {
        for (double& v : trial.lengths) v = std::max(v, 0.0);
        for (double& v : trial.gaps) v = std::max(v, 0.0);
        const double total = std::accumulate(trial.lengths.begin(), trial.lengths.end(), 0.0) +
                             std::accumulate(trial.gaps.begin(), trial.gaps.end(), 0.0);
        for (double& v : trial.lengths) v *= L / total;
        for (double& v : trial.gaps) v *= L / total;
      }
      ConfigPoint trial_cfg;
      const double value = evaluate(trial, trial_cfg);
      if (value < current) {
        layout = std::move(trial);
        current = value;
        out.best = std::move(trial_cfg);
        ++out.accepted;
        if (opts.on_accept) opts.on_accept(out.best, current);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  // Final residual at the returned point.
  const ArcSet final_set = arcset_of(out.best);
  const ConfigPoint final_cfg = config_of(final_set);
  out.best = final_cfg;
  out.eta = eta(final_set);
  if (final_cfg.endpoints.empty()) {
    out.residual = 0.0;
  } else {
    try {
      out.residual = max_abs(direction(final_set, final_cfg, opts.fix_measure));
    } catch (const degenerate_configuration&) {
      out.residual = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

inline Layout random_layout(Rng& rng, double xi, double L, int n) {
  Layout lay{std::vector<double>(static_cast<std::size_t>(n)),
             std::vector<double>(static_cast<std::size_t>(n)), L};
  for (auto& v : lay.lengths) v = rng.exponential();
  for (auto& v : lay.gaps) v = rng.exponential();
  rescale(lay.lengths, xi * L);
  rescale(lay.gaps, (1.0 - xi) * L);
  return lay;
}

}  // namespace detail

/// Multistart descent on η over n-arc configurations of density ξ on the
/// circle of perimeter L. Deterministic given opts.seed; the best restart wins,
/// ties going to the lowest restart index.
inline OptResult minimize_eta(double xi, double L, int n, const OptOptions& opts = {}) {
  if (!(xi > 0.0 && xi < 1.0)) throw domain_error("xi must lie in (0, 1)");
  if (n < 1) throw invalid_input("n must be >= 1");
  if (opts.restarts < 1) throw invalid_input("restarts must be >= 1");
  Circle circle(L);
  if (xi * L > L) throw domain_error("measure xi*L exceeds the perimeter");

  OptResult result;
  result.seed = opts.seed;
  result.xi = xi;
  result.fix_measure = opts.fix_measure;
  result.restarts_used = opts.restarts;
  result.eta_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(r)));
    auto outcome = detail::descend(detail::random_layout(rng, xi, L, n), xi, opts);
    if (outcome.eta < result.eta_value) {
      result.eta_value = outcome.eta;
      result.best = std::move(outcome.best);
      result.stationarity_residual = outcome.residual;
      result.trajectory_length = outcome.accepted;
    }
  }
  return result;
}

/// minimize_eta for n = 1..n_max.
inline std::vector<OptResult> minimize_eta_sweep(double xi, double L, int n_max,
                                                 const OptOptions& opts = {}) {
  std::vector<OptResult> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(minimize_eta(xi, L, n, opts));
  return out;
}

// ---------------------------------------------------------------------------
// First-order conditions at a minimiser.

struct StationarityReport {
  double xi = 0.0;          // density of the set checked (after complement reduction)
  bool complemented = false;
  double level = 0.0;       // 1 + (2ξ-1)/W
  double floor = 0.0;       // ξ/W
  std::vector<double> boundary_residuals;  // |g_A(a_i) - level|
  double interior_min = 0.0;               // min over x ∈ A of g_A(x) - floor
  double tolerance = 0.0;
  bool passes = false;
};

/// Checks g_A = 1 + (2ξ-1)/W at every endpoint and g_A >= ξ/W on A. Sets of
/// density above 1/2 are replaced by their complement (η is unchanged). The
/// interior minimum is taken over a uniform grid of >= 1000 points of A plus
/// every breakpoint of g_A inside A, which is exact for piecewise-linear g.
inline StationarityReport stationarity_report(const ArcSet& input, double tol) {
  StationarityReport r;
  r.tolerance = tol;
  ArcSet a = input;
  if (a.density() > 0.5) {
    a = complement(a);
    r.complemented = true;
  }
  r.xi = a.density();
  if (a.empty() || r.xi == 0.0) {
    r.passes = true;
    return r;
  }
  r.level = phi_coeff(r.xi);
  r.floor = r.xi / density_kernel(r.xi);
  for (const double e : a.endpoints()) {
    r.boundary_residuals.push_back(std::abs(eval_g(a, e) - r.level));
  }

  const PiecewiseLinear g = g_profile(a);
  std::vector<double> samples;
  const double total = a.measure();
  constexpr int grid = 1000;
  for (const auto& p : a.pieces()) {
    const int count = std::max(2, static_cast<int>(std::ceil(grid * p.length() / total)) + 1);
    for (int i = 0; i < count; ++i) {
      samples.push_back(p.lo + p.length() * i / (count - 1));
    }
  }
  for (const auto& k : g.knots()) {
    if (a.contains(k.x)) samples.push_back(k.x);
  }
  r.interior_min = std::numeric_limits<double>::infinity();
  for (const double x : samples) {
    const double v = x >= a.perimeter() ? g(0.0) : g(x);
    r.interior_min = std::min(r.interior_min, v - r.floor);
  }
  const double worst_boundary =
      r.boundary_residuals.empty()
          ? 0.0
          : *std::max_element(r.boundary_residuals.begin(), r.boundary_residuals.end());
  r.passes = worst_boundary <= tol && r.interior_min >= -tol;
  return r;
}

// ---------------------------------------------------------------------------
// Colouring objective Σ Φ(A_i) over cyclic interval partitions.
//
// Cut points c_0 = 0 < c_1 < ... < c_{N-1} split the circle into N = (k+1)
// n_per_part segments; segment j = [c_j, c_{j+1}) gets colour j mod (k+1).
// Moving c_j right by δ hands [c_j, c_j + δ) from the colour on its right
// (i') to the colour on its left (i), so ∂/∂c_j Σ Φ = g_{A_i}(c_j) - g_{A_i'}(c_j).

struct PartitionOptResult {
  Partition best;
  std::vector<double> cuts;
  double objective = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  double stationarity_residual = 0.0;
  int trajectory_length = 0;
  int restarts_used = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline Partition partition_of(std::span<const double> segments, int colours, double L) {
  const Circle circle(L);
  std::vector<std::vector<Interval>> pieces(static_cast<std::size_t>(colours));
  double pos = 0.0;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const double lo = std::min(pos, L);
    pos += segments[j];
    const double hi = j + 1 == segments.size() ? L : std::min(pos, L);
    pieces[j % static_cast<std::size_t>(colours)].push_back({lo, hi});
  }
  std::vector<ArcSet> parts;
  for (auto& p : pieces) parts.push_back(ArcSet::from_pieces(circle, std::move(p)));
  return Partition(circle, std::move(parts));
}

inline std::vector<double> cuts_of(std::span<const double> segments) {
  std::vector<double> cuts{0.0};
  double pos = 0.0;
  for (std::size_t j = 0; j + 1 < segments.size(); ++j) {
    pos += segments[j];
    cuts.push_back(pos);
  }
  return cuts;
}

}  // namespace detail

inline PartitionOptResult minimize_partition(int k, double L, int n_per_part,
                                             const OptOptions& opts = {}) {
  if (k < 0) throw invalid_input("k must be >= 0");
  if (n_per_part < 1) throw invalid_input("n_per_part must be >= 1");
  if (opts.restarts < 1) throw invalid_input("restarts must be >= 1");
  Circle circle(L);
  const int colours = k + 1;
  const std::size_t segments = static_cast<std::size_t>(colours * n_per_part);

  auto objective = [&](std::span<const double> seg) {
    return phi_partition(detail::partition_of(seg, colours, L));
  };

  struct Best {
    std::vector<double> seg;
    double value = std::numeric_limits<double>::infinity();
    double residual = 0.0;
    int accepted = 0;
  } best;

  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(mix_seed(opts.seed, static_cast<std::uint64_t>(r)));
    std::vector<double> seg(segments);
    for (double& v : seg) v = rng.exponential();
    detail::rescale(seg, L);
    double current = objective(seg);
    double residual = 0.0;
    int accepted = 0;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
      const Partition part = detail::partition_of(seg, colours, L);
      const std::vector<double> cuts = detail::cuts_of(seg);
      std::vector<double> grad(segments, 0.0);
      for (std::size_t j = 0; j < segments; ++j) {
        const std::size_t left = (j + segments - 1) % segments % static_cast<std::size_t>(colours);
        const std::size_t right = j % static_cast<std::size_t>(colours);
        if (left == right) continue;
        grad[j] = eval_g(part.parts()[left], cuts[j]) - eval_g(part.parts()[right], cuts[j]);
      }
      residual = detail::max_abs(grad);
      if (residual < opts.tol) break;

      bool moved = false;
      for (double step = 0.1 * L; step > 1e-15 * L; step *= 0.5) {
        std::vector<double> c = cuts;
        for (std::size_t j = 0; j < segments; ++j) c[j] -= step * grad[j];
        std::vector<double> trial(segments);
        for (std::size_t j = 0; j < segments; ++j) {
          const double next = j + 1 < segments ? c[j + 1] : c[0] + L;
          trial[j] = next - c[j];
        }
        detail::rescale(trial, L);
        const double value = objective(trial);
        if (value < current) {
          seg = std::move(trial);
          current = value;
          ++accepted;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (current < best.value) {
      best = {seg, current, residual, accepted};
    }
  }

  PartitionOptResult out{detail::partition_of(best.seg, colours, L), detail::cuts_of(best.seg)};
  out.objective = best.value;
  out.bound = colouring_bound(k, L);
  out.slack = out.objective - out.bound;
  out.stationarity_residual = best.residual;
  out.trajectory_length = best.accepted;
  out.restarts_used = opts.restarts;
  out.seed = opts.seed;
  return out;
}

}  // namespace smalldiff
