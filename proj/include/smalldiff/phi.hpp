#pragma once

// Window functions and the small-differences functional on arc unions.
//
//   f_A(x) = λ([x, x+1] ∩ A)          forward unit window
//   g_A(x) = f_A(x) + f_A(x-1)        two-sided window
//   Φ(A)   = ∫_A f_A                   measure of {(x,y) ∈ A²: x ≤ y ≤ x+1}
//   η(A)   = Φ(A) - (ξ + W(ξ) - 1) L   slack against the density bound
//
// Windows are intersected with the periodic lift of A, so for L in [1, 2) the
// two halves of g may see the same part of A twice.

#include <algorithm>
#include <cmath>
#include <vector>

#include "smalldiff/bounds.hpp"
#include "smalldiff/circle.hpp"
#include "smalldiff/piecewise.hpp"

namespace smalldiff {

/// λ([x, x+1] ∩ π⁻¹[A]) for the canonical projection π: R -> R/LZ.
inline double eval_f(const ArcSet& a, double x) {
  const double L = a.perimeter();
  const double lo = a.circle().reduce(x);
  const double hi = lo + 1.0;  // hi <= L + 1 <= 2L, so shifts {0, L} suffice
  double total = 0.0;
  for (const auto& p : a.pieces()) {
    for (const double shift : {0.0, L}) {
      const double overlap = std::min(hi, p.hi + shift) - std::max(lo, p.lo + shift);
      if (overlap > 0.0) total += overlap;
    }
  }
  return total;
}

inline double eval_g(const ArcSet& a, double x) { return eval_f(a, x) + eval_f(a, x - 1.0); }

namespace detail {

inline PiecewiseLinear window_profile(const ArcSet& a, std::initializer_list<double> offsets,
                                      double (*eval)(const ArcSet&, double)) {
  const Circle& circle = a.circle();
  std::vector<double> xs{0.0};
  for (const double e : a.endpoints()) {
    for (const double d : offsets) xs.push_back(circle.reduce(e + d));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Knot> knots;
  knots.reserve(xs.size());
  for (const double x : xs) knots.push_back({x, eval(a, x)});
  return PiecewiseLinear(circle, std::move(knots));
}

}  // namespace detail

/// f_A as an exact piecewise-linear function; breaks at a_i and a_i - 1.
inline PiecewiseLinear f_profile(const ArcSet& a) {
  return detail::window_profile(a, {0.0, -1.0}, &eval_f);
}

/// g_A as an exact piecewise-linear function; breaks at a_i and a_i ± 1.
inline PiecewiseLinear g_profile(const ArcSet& a) {
  return detail::window_profile(a, {0.0, -1.0, 1.0}, &eval_g);
}

/// Φ(A) = ∫_A f_A, integrated exactly piece by piece.
inline double phi(const ArcSet& a) { return f_profile(a).integrate(a); }

/// ∫_S f_A over the whole circle; equals λ(A).
inline double integral_f(const ArcSet& a) { return f_profile(a).integrate(); }

/// ∫_A g_A; equals 2Φ(A).
inline double integral_g(const ArcSet& a) { return g_profile(a).integrate(a); }

inline double eta(const ArcSet& a) {
  return phi(a) - density_bound(a.density(), a.perimeter());
}

inline double phi_partition(const Partition& p) {
  double total = 0.0;
  for (const auto& part : p.parts()) total += phi(part);
  return total;
}

/// Checks the parts first; throws invalid_input if they do not tile the circle.
inline double phi_partition(std::span<const ArcSet> parts, double L) {
  return phi_partition(Partition(Circle(L), std::vector<ArcSet>(parts.begin(), parts.end())));
}

}  // namespace smalldiff
