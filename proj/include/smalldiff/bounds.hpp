#pragma once

// Closed-form lower bounds and their numerical certifiers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "smalldiff/errors.hpp"
#include "smalldiff/piecewise.hpp"
#include "smalldiff/random.hpp"

namespace smalldiff {

struct BoundReport {
  double bound_value = 0.0;
  double achieved_value = 0.0;
  double slack = 0.0;  // achieved_value - bound_value
  std::string context;
  bool passes = false;
};

inline BoundReport make_report(double bound, double achieved, std::string context,
                               double tolerance) {
  BoundReport r;
  r.bound_value = bound;
  r.achieved_value = achieved;
  r.slack = achieved - bound;
  r.context = std::move(context);
  r.passes = r.slack >= -tolerance;
  return r;
}

/// sqrt(ξ² + (1-ξ)²), the kernel of the density bound. Symmetric about 1/2.
inline double density_kernel(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw domain_error("density must lie in [0, 1], got " + std::to_string(xi));
  }
  return std::hypot(xi, 1.0 - xi);
}

/// 1 + (2ξ-1)/W(ξ): the value g_A takes at the boundary of a minimiser.
inline double phi_coeff(double xi) {
  if (!(xi > 0.0 && xi <= 0.5)) {
    throw domain_error("phi_coeff needs density in (0, 1/2], got " + std::to_string(xi));
  }
  return 1.0 + (2.0 * xi - 1.0) / density_kernel(xi);
}

/// Same quantity without the (0, 1/2] restriction; used where the density of
/// the set itself may exceed 1/2 (derivatives of η).
inline double boundary_level(double xi) {
  return 1.0 + (2.0 * xi - 1.0) / density_kernel(xi);
}

/// (ξ + W(ξ) - 1) L.
inline double density_bound(double xi, double L) {
  return (xi + density_kernel(xi) - 1.0) * L;
}

/// (sqrt(k²+1) - k) L.
inline double colouring_bound(int k, double L) {
  if (k < 0) throw domain_error("k must be >= 0");
  const double kk = static_cast<double>(k);
  return (std::sqrt(kk * kk + 1.0) - kk) * L;
}

/// ((sqrt(k²+1) - k) m - 1/2) n - m²/2; not clamped at zero.
inline double discrete_bound(int k, int m, int n) {
  if (k < 0) throw domain_error("k must be >= 0");
  if (m < 1 || n < m) throw domain_error("discrete bound needs n >= m >= 1");
  const double kk = k, mm = m, nn = n;
  return ((std::sqrt(kk * kk + 1.0) - kk) * mm - 0.5) * nn - mm * mm / 2.0;
}

/// min over a uniform grid on [0, 1/2] of (2 - ξ) - 2W(ξ).
inline BoundReport fact21_check(int grid_size) {
  if (grid_size < 2) throw domain_error("grid_size must be >= 2");
  double worst = std::numeric_limits<double>::infinity();
  double worst_xi = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double xi = 0.5 * i / (grid_size - 1);
    const double margin = (2.0 - xi) - 2.0 * density_kernel(xi);
    if (margin < worst) {
      worst = margin;
      worst_xi = xi;
    }
  }
  return make_report(0.0, worst,
                     "fact21 grid=" + std::to_string(grid_size) +
                         " worst_xi=" + std::to_string(worst_xi),
                     1e-12);
}

// ---------------------------------------------------------------------------
// Integral lower bound for 1-Lipschitz profiles pinned at both ends.

enum class EnvelopeCase { triangle, plateau_xi_w, plateau_alpha };

inline const char* to_string(EnvelopeCase c) {
  switch (c) {
    case EnvelopeCase::triangle: return "triangle";
    case EnvelopeCase::plateau_xi_w: return "plateau_xiW";
    case EnvelopeCase::plateau_alpha: return "plateau_alpha";
  }
  return "?";
}

struct Lemma3Case {
  double xi = 0.0;
  double alpha = 0.0;
  double phi = 0.0;  // pinned end value
  EnvelopeCase case_id = EnvelopeCase::triangle;
  Polyline envelope;
  double integral = 0.0;
  double required = 0.0;  // 2α(W+ξ-1)/ξ
};

inline double lemma3_required(double xi, double alpha) {
  return 2.0 * alpha * (density_kernel(xi) + xi - 1.0) / xi;
}

/// The pointwise lower envelope of every admissible h on [0, α]: 1-Lipschitz,
/// h(0) = h(α) = φ(ξ) and h >= max(ξ/W, α). At a case boundary the lower
/// case is chosen; the adjacent formulas coincide there.
inline Lemma3Case lemma3_envelope(double xi, double alpha) {
  if (!(xi > 0.0 && xi <= 0.5)) throw domain_error("xi must lie in (0, 1/2]");
  if (!(alpha >= 0.0)) throw domain_error("alpha must be >= 0");
  const double w = density_kernel(xi);
  const double p = phi_coeff(xi);
  if (alpha > p) {
    throw domain_error("alpha=" + std::to_string(alpha) + " exceeds phi=" + std::to_string(p) +
                       "; no admissible profile exists");
  }
  const double ratio = xi / w;
  const double descent = 1.0 - (1.0 - xi) / w;  // equals φ - ξ/W

  Lemma3Case out;
  out.xi = xi;
  out.alpha = alpha;
  out.phi = p;
  if (alpha <= 2.0 * descent) {
    out.case_id = EnvelopeCase::triangle;
    out.envelope = Polyline({{0.0, p}, {alpha / 2.0, p - alpha / 2.0}, {alpha, p}});
  } else if (alpha <= ratio) {
    out.case_id = EnvelopeCase::plateau_xi_w;
    out.envelope =
        Polyline({{0.0, p}, {descent, ratio}, {alpha - descent, ratio}, {alpha, p}});
  } else {
    out.case_id = EnvelopeCase::plateau_alpha;
    out.envelope =
        Polyline({{0.0, p}, {p - alpha, alpha}, {2.0 * alpha - p, alpha}, {alpha, p}});
  }
  out.integral = out.envelope.integral();
  out.required = lemma3_required(xi, alpha);
  return out;
}

/// Whether h satisfies the hypotheses on [0, α] (within `tol`).
inline bool lemma3_admissible(const Polyline& h, double xi, double alpha, double tol = 1e-12) {
  if (h.knots().empty()) return false;
  const double p = phi_coeff(xi);
  const double floor = std::max(xi / density_kernel(xi), alpha);
  return std::abs(h.lo()) <= tol && std::abs(h.hi() - alpha) <= tol &&
         std::abs(h(0.0) - p) <= tol && std::abs(h(alpha) - p) <= tol &&
         h.max_slope() <= 1.0 + tol && h.min_value() >= floor - tol;
}

/// Random admissible profile: midpoint displacement inside the Lipschitz cone
/// between fixed ends, then clipped below at max(ξ/W, α). `skew` > 1 pushes
/// displacements towards the bottom of the cone.
inline Polyline random_admissible_profile(Rng& rng, double xi, double alpha, int depth,
                                          double skew = 1.0) {
  const double p = phi_coeff(xi);
  const double floor = std::max(xi / density_kernel(xi), alpha);
  const std::size_t segments = std::size_t{1} << depth;
  std::vector<Knot> knots(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    knots[i].x = alpha * static_cast<double>(i) / static_cast<double>(segments);
  }
  knots.front().value = p;
  knots.back().value = p;
  for (std::size_t step = segments; step > 1; step /= 2) {
    for (std::size_t left = 0; left + step <= segments; left += step) {
      const Knot& a = knots[left];
      const Knot& b = knots[left + step];
      const double half = 0.5 * (b.x - a.x);
      const double lo = std::max(a.value, b.value) - half;
      const double hi = std::min(a.value, b.value) + half;
      const double u = std::pow(rng.uniform(), skew);
      knots[left + step / 2].value = lo + u * (hi - lo);
    }
  }
  return Polyline(std::move(knots)).clipped_below(floor);
}

/// ∫h - 2α(W+ξ-1)/ξ.
inline double lemma3_slack(const Polyline& h, double xi, double alpha) {
  return h.integral() - lemma3_required(xi, alpha);
}

/// Minimum slack over `trials` random admissible profiles; the envelope itself
/// is always included as trial 0.
inline BoundReport lemma3_random_check(double xi, double alpha, int trials, std::uint64_t seed) {
  const Lemma3Case env = lemma3_envelope(xi, alpha);  // validates (ξ, α)
  Rng rng(seed);
  double worst_slack = lemma3_slack(env.envelope, xi, alpha);
  double worst_integral = env.integral;
  for (int t = 0; t < trials; ++t) {
    const Polyline h = random_admissible_profile(rng, xi, alpha, 7, t % 2 == 0 ? 1.0 : 4.0);
    if (!lemma3_admissible(h, xi, alpha, 1e-9)) {
      throw std::logic_error("random profile generator produced an inadmissible profile");
    }
    const double s = lemma3_slack(h, xi, alpha);
    if (s < worst_slack) {
      worst_slack = s;
      worst_integral = h.integral();
    }
  }
  return make_report(env.required, worst_integral,
                     "lemma3 xi=" + std::to_string(xi) + " alpha=" + std::to_string(alpha) +
                         " trials=" + std::to_string(trials) + " seed=" + std::to_string(seed),
                     1e-9);
}

}  // namespace smalldiff
