#pragma once

// Named randomized/grid invariant suites. Each returns whether every checked
// instance satisfied the invariant, the worst observed value of the checked
// quantity, and the first failing instance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "smalldiff/bounds.hpp"
#include "smalldiff/circle.hpp"
#include "smalldiff/constructions.hpp"
#include "smalldiff/discrete.hpp"
#include "smalldiff/io.hpp"
#include "smalldiff/phi.hpp"
#include "smalldiff/random.hpp"
#include "smalldiff/sampling.hpp"

namespace smalldiff {

struct SuiteOutcome {
  std::string suite;
  std::string metric;  // what `worst` measures
  bool passed = true;
  long long checked = 0;
  double worst = 0.0;
  json counterexample;  // null when passed
};

namespace detail {

/// Tracks the worst value; `higher_is_worse` selects the direction.
struct Tracker {
  SuiteOutcome out;
  bool higher_is_worse;

  Tracker(std::string suite, std::string metric, bool higher)
      : higher_is_worse(higher) {
    out.suite = std::move(suite);
    out.metric = std::move(metric);
    out.worst = higher ? 0.0 : std::numeric_limits<double>::infinity();
  }

  void record(double value, bool ok, const std::function<json()>& dump) {
    ++out.checked;
    if (higher_is_worse ? value > out.worst : value < out.worst) out.worst = value;
    if (!ok && out.passed) {
      out.passed = false;
      out.counterexample = dump();
    }
  }
};

}  // namespace detail

/// |∫_S f_A - λ(A)| <= 1e-9 over random arc sets.
inline SuiteOutcome verify_fubini(int samples, std::uint64_t seed) {
  detail::Tracker t("fubini", "max |integral_S f_A - measure(A)|", true);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ArcSet a = random_arcset(rng);
    const double err = std::abs(integral_f(a) - a.measure());
    t.record(err, err <= 1e-9, [&] { return json{{"set", to_json(a)}, {"error", err}}; });
  }
  return t.out;
}

/// |∫_A g_A - 2Φ(A)| <= 1e-9 over random arc sets.
inline SuiteOutcome verify_g_integral(int samples, std::uint64_t seed) {
  detail::Tracker t("g-integral", "max |integral_A g_A - 2 phi(A)|", true);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ArcSet a = random_arcset(rng);
    const double err = std::abs(integral_g(a) - 2.0 * phi(a));
    t.record(err, err <= 1e-9, [&] { return json{{"set", to_json(a)}, {"error", err}}; });
  }
  return t.out;
}

/// |η(A) - η(S \ A)| <= 1e-9 over random arc sets.
inline SuiteOutcome verify_complement(int samples, std::uint64_t seed) {
  detail::Tracker t("complement", "max |eta(A) - eta(complement A)|", true);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ArcSet a = random_arcset(rng);
    const double err = std::abs(eta(a) - eta(complement(a)));
    t.record(err, err <= 1e-9, [&] { return json{{"set", to_json(a)}, {"error", err}}; });
  }
  return t.out;
}

/// |g_A(x) - g_A(y)| <= |x - y|_circle + 1e-12 for random sets and pairs.
inline SuiteOutcome verify_lipschitz(int samples, std::uint64_t seed) {
  detail::Tracker t("lipschitz", "max |g(x)-g(y)| - dist(x,y)", true);
  t.out.worst = -std::numeric_limits<double>::infinity();
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ArcSet a = random_arcset(rng);
    const double L = a.perimeter();
    for (int j = 0; j < 8; ++j) {
      const double x = rng.uniform(0.0, L);
      const double y = j % 2 == 0 ? rng.uniform(0.0, L) : x + rng.uniform(-0.01, 0.01) * L;
      const double excess =
          std::abs(eval_g(a, x) - eval_g(a, y)) - a.circle().distance(x, y);
      t.record(excess, excess <= 1e-12, [&] {
        return json{{"set", to_json(a)}, {"x", x}, {"y", y}, {"excess", excess}};
      });
    }
  }
  return t.out;
}

inline SuiteOutcome verify_fact21(int grid, std::uint64_t /*seed*/) {
  const BoundReport r = fact21_check(std::max(grid, 2));
  SuiteOutcome out;
  out.suite = "fact21";
  out.metric = "min over grid of (2 - xi) - 2W(xi)";
  out.checked = std::max(grid, 2);
  out.worst = r.achieved_value;
  out.passed = r.passes;
  if (!r.passes) out.counterexample = json{{"context", r.context}, {"margin", r.achieved_value}};
  return out;
}

/// Envelope integral >= required on a 200x200 feasible (ξ, α) grid, plus
/// `trials` random admissible profiles at each of 10 grid points.
inline SuiteOutcome verify_lemma3(int trials, std::uint64_t seed) {
  detail::Tracker t("lemma3", "min integral - required", false);
  constexpr int grid = 200;
  std::vector<std::pair<double, double>> probes;
  for (int i = 1; i <= grid; ++i) {
    const double xi = 0.5 * i / grid;
    const double p = phi_coeff(xi);
    for (int j = 0; j < grid; ++j) {
      const double alpha = j == grid - 1 ? p : p * j / (grid - 1);
      const Lemma3Case c = lemma3_envelope(xi, alpha);
      const double slack = c.integral - c.required;
      t.record(slack, slack >= -1e-9, [&] {
        return json{{"xi", xi}, {"alpha", alpha}, {"case", to_string(c.case_id)},
                    {"integral", c.integral}, {"required", c.required}};
      });
      if (i % (grid / 10) == 0 && j == (7 * i + 3) % grid) probes.emplace_back(xi, alpha);
    }
  }
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto [xi, alpha] = probes[i];
    const BoundReport r = lemma3_random_check(xi, alpha, trials, mix_seed(seed, i));
    t.out.checked += trials - 1;  // record() counts one more
    t.record(r.slack, r.passes, [&] {
      return json{{"xi", xi}, {"alpha", alpha}, {"context", r.context}, {"slack", r.slack}};
    });
  }
  return t.out;
}

/// Σ W(ξ_i) >= sqrt(k²+1) - 1e-9 for random points of the simplex, k in 0..9.
inline SuiteOutcome verify_minkowski(int samples, std::uint64_t seed) {
  detail::Tracker t("minkowski", "min sum W(xi_i) - sqrt(k^2+1)", false);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const int k = rng.integer(0, 9);
    std::vector<double> xi(static_cast<std::size_t>(k) + 1);
    double total = 0.0;
    for (double& x : xi) total += (x = rng.exponential());
    double sum_w = 0.0;
    for (double& x : xi) sum_w += density_kernel(std::min(1.0, x / total));
    const double margin = sum_w - std::sqrt(static_cast<double>(k) * k + 1.0);
    t.record(margin, margin >= -1e-9, [&] { return json{{"k", k}, {"xi", xi}, {"margin", margin}}; });
  }
  return t.out;
}

/// η(A) >= -1e-9 for random arc sets (n <= 8 arcs, L in [1, 20]).
inline SuiteOutcome verify_thm2_random(int samples, std::uint64_t seed) {
  detail::Tracker t("thm2-random", "min eta(A)", false);
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const ArcSet a = random_arcset(rng);
    const double e = eta(a);
    t.record(e, e >= -1e-9, [&] { return json{{"set", to_json(a)}, {"eta", e}}; });
  }
  return t.out;
}

/// Σ Φ(B_i) <= Σ Ψ_m(A_i)/m² + n/(2m²) + 1/2 for blow-ups of random colourings.
inline SuiteOutcome verify_blowup_bridge(int samples, std::uint64_t seed) {
  detail::Tracker t("blowup-bridge", "min rhs - sum phi(B_i)", false);
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const int k = rng.integer(0, 3);
    const int n = rng.integer(1, 24);
    const int m = rng.integer(1, n);
    const DiscreteColouring c = random_colouring(rng, k, n);
    const double lhs = phi_partition(blowup(c, m));
    const double mm = static_cast<double>(m) * m;
    const double rhs = static_cast<double>(mono_edges(c, m)) / mm + n / (2.0 * mm) + 0.5;
    const double margin = rhs - lhs;
    t.record(margin, margin >= -1e-9, [&] {
      return json{{"colouring", to_json(c)}, {"m", m}, {"sum_phi", lhs}, {"rhs", rhs}};
    });
  }
  return t.out;
}

using SuiteFn = SuiteOutcome (*)(int, std::uint64_t);

struct SuiteInfo {
  SuiteFn run;
  int default_samples;
};

inline const std::map<std::string, SuiteInfo>& suites() {
  static const std::map<std::string, SuiteInfo> table{
      {"fubini", {&verify_fubini, 1000}},
      {"g-integral", {&verify_g_integral, 1000}},
      {"complement", {&verify_complement, 1000}},
      {"lipschitz", {&verify_lipschitz, 1000}},
      {"fact21", {&verify_fact21, 10000}},
      {"lemma3", {&verify_lemma3, 1000}},
      {"minkowski", {&verify_minkowski, 10000}},
      {"thm2-random", {&verify_thm2_random, 10000}},
      {"blowup-bridge", {&verify_blowup_bridge, 1000}},
  };
  return table;
}

}  // namespace smalldiff
