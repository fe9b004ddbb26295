#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "smalldiff/constructions.hpp"
#include "smalldiff/phi.hpp"

using namespace smalldiff;

namespace {

ArcSet make(const oracle::RawSet& r) {
  std::vector<std::pair<double, double>> raw;
  for (const auto& a : r.arcs) raw.emplace_back(a.start, a.length);
  return normalize(raw, r.L);
}

const double kRoot2 = std::sqrt(2.0);

}  // namespace

TEST(EvalF, Examples) {
  EXPECT_DOUBLE_EQ(eval_f(ArcSet::full(Circle(3)), 1.7), 1.0);
  const ArcSet a = normalize({{0, 0.5}}, 3);
  EXPECT_DOUBLE_EQ(eval_f(a, 0.0), 0.5);
  // [2.8, 3.8] contains the lifted copy [3, 3.5) entirely.
  EXPECT_NEAR(eval_f(a, 2.8), 0.5, 1e-15);
  EXPECT_NEAR(eval_f(a, -0.2), 0.5, 1e-15);
  EXPECT_NEAR(eval_f(a, 2.3), 0.3, 1e-15);
  EXPECT_NEAR(eval_f(a, 0.2), 0.3, 1e-15);
  for (double x : {2.8, 2.3, 0.2, 1.0}) {
    EXPECT_NEAR(eval_f(a, x), oracle::window_mass({{0, 0.5}}, 3, x), 1e-15);
  }
}

TEST(EvalF, ShortCircleUsesBothCopies) {
  // L = 1.05, A = [0, 0.1): the window [0.08, 1.08] meets [0.08, 0.1) and the
  // lifted copy [1.05, 1.08).
  const ArcSet a = normalize({{0, 0.1}}, 1.05);
  EXPECT_NEAR(eval_f(a, 0.08), 0.05, 1e-15);
  EXPECT_NEAR(eval_f(ArcSet::full(Circle(1.0)), 0.25), 1.0, 1e-15);
}

TEST(EvalG, Examples) {
  const ArcSet a = normalize({{0, 0.7}}, 2.5);
  for (double x : {0.0, 0.2, 0.69}) EXPECT_NEAR(eval_g(a, x), 0.7, 1e-15);
  EXPECT_DOUBLE_EQ(eval_g(ArcSet::full(Circle(4)), 3.3), 2.0);
  const ArcSet eq = equispaced_density(0.5, 2 * kRoot2, 2);
  for (double e : eq.endpoints()) EXPECT_NEAR(eval_g(eq, e), 1.0, 1e-12);
}

TEST(GProfile, SingleUnitArc) {
  const ArcSet a = normalize({{0, 1}}, 4);
  const PiecewiseLinear g = g_profile(a);
  const std::vector<std::pair<double, double>> expected{{0, 1}, {1, 1}, {2, 0}, {3, 0}};
  for (const auto& [x, v] : expected) EXPECT_NEAR(g(x), v, 1e-15) << x;
  EXPECT_NEAR(g(2.5), 0.0, 1e-15);
  EXPECT_NEAR(g(3.5), 0.5, 1e-15);
  EXPECT_NEAR(g(1.5), 0.5, 1e-15);
  for (const auto& k : g.knots()) EXPECT_NEAR(eval_g(a, k.x), k.value, 1e-15);
}

TEST(GProfile, FullCircleConstant) {
  const PiecewiseLinear g = g_profile(ArcSet::full(Circle(3)));
  for (double x : {0.0, 0.4, 1.9, 2.99}) EXPECT_DOUBLE_EQ(g(x), 2.0);
}

TEST(GProfile, AgreesWithPointwiseAndSlopes) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const ArcSet a = make(oracle::random_raw(gen));
    const PiecewiseLinear g = g_profile(a);
    for (int s = 0; s < 20; ++s) {
      const double x = a.perimeter() * u(gen);
      worst = std::max(worst, std::abs(g(x) - eval_g(a, x)));
    }
    const auto k = g.knots();
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      const double dx = k[i + 1].x - k[i].x;
      if (dx < 1e-9) continue;
      const double slope = (k[i + 1].value - k[i].value) / dx;
      EXPECT_NEAR(slope, std::round(slope), 1e-6);
      EXPECT_LE(std::abs(slope), 2.0 + 1e-6);
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Phi, Examples) {
  EXPECT_DOUBLE_EQ(phi(ArcSet::full(Circle(3))), 3.0);
  EXPECT_NEAR(phi(normalize({{0, 0.5}}, 3)), 0.125, 1e-15);
  EXPECT_NEAR(phi(normalize({{0, 1.5}}, 3)), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(phi(ArcSet(Circle(3))), 0.0);
}

TEST(Eta, Examples) {
  EXPECT_DOUBLE_EQ(eta(ArcSet(Circle(3))), 0.0);
  EXPECT_NEAR(eta(ArcSet::full(Circle(3))), 0.0, 1e-15);
  EXPECT_NEAR(eta(normalize({{0, 0.5}}, 3)), 0.07549024320360731, 1e-12);
}

TEST(PhiPartition, Examples) {
  const Circle c(3);
  EXPECT_DOUBLE_EQ(phi_partition(Partition(c, {ArcSet::full(c)})), 3.0);
  EXPECT_NEAR(phi_partition(Partition(c, {normalize({{0, 1.5}}, 3), normalize({{1.5, 1.5}}, 3)})),
              2.0, 1e-14);
  const double L = 9 / std::sqrt(5.0);
  EXPECT_NEAR(phi_partition(alternating_partition(2, 3)), (std::sqrt(5.0) - 2) * L, 1e-12);
  const std::vector<ArcSet> bad{normalize({{0, 2}}, 3), normalize({{1, 2}}, 3)};
  EXPECT_THROW(phi_partition(bad, 3.0), invalid_input);
}

TEST(PhiOracle, ExactReferenceAgreement) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 300; ++t) {
    const auto raw = t % 3 == 0 ? oracle::random_raw(gen, 6, 1.0, 2.0) : oracle::random_raw(gen);
    const ArcSet a = make(raw);
    EXPECT_NEAR(phi(a), oracle::phi_exact(raw.arcs, raw.L), 1e-9) << "trial " << t;
  }
}

TEST(PhiOracle, MonteCarloSpotCheck) {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 5; ++t) {
    const auto raw = oracle::random_raw(gen, 5, 1.0, 4.0);
    const auto mc = oracle::phi_monte_carlo(raw.arcs, raw.L, 200'000, 100 + t);
    EXPECT_LE(std::abs(phi(make(raw)) - mc.value), 4 * mc.standard_error + 1e-12);
  }
}

class PhiProperties : public ::testing::TestWithParam<int> {};

TEST_P(PhiProperties, Identities) {
  std::mt19937_64 gen(static_cast<std::uint64_t>(GetParam()) * 7919);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto raw = oracle::random_raw(gen);
    const ArcSet a = make(raw);
    const double L = raw.L;
    const double p = phi(a);

    EXPECT_NEAR(integral_f(a), a.measure(), 1e-9);
    EXPECT_NEAR(integral_g(a), 2 * p, 1e-9);
    EXPECT_NEAR(eta(a), eta(complement(a)), 1e-9);
    EXPECT_GE(eta(a), -1e-9);
    EXPECT_GE(p, -1e-15);
    EXPECT_LE(p, a.measure() + 1e-12);
    EXPECT_NEAR(phi(rotate(a, L * u(gen))), p, 1e-12 * std::max(1.0, L));
    EXPECT_NEAR(phi(reflect(a)), p, 1e-12 * std::max(1.0, L));

    // Adding an arc in a gap cannot decrease Φ.
    const ArcSet gaps = complement(a);
    if (!gaps.empty()) {
      const auto piece = gaps.pieces()[0];
      const ArcSet bigger = unite(a, ArcSet::from_pieces(a.circle(), {{piece.lo, piece.lo + 0.5 * piece.length()}}));
      EXPECT_GE(phi(bigger), p - 1e-12);
    }

    for (int s = 0; s < 10; ++s) {
      const double x = L * u(gen);
      const double y = s % 2 ? L * u(gen) : x + 0.01 * (u(gen) - 0.5);
      EXPECT_LE(std::abs(eval_g(a, x) - eval_g(a, y)), a.circle().distance(x, y) + 1e-12);
      EXPECT_NEAR(eval_f(a, x), oracle::window_mass(raw.arcs, L, x), 1e-12);
    }

    // Single-arc floor: g_I(x) >= min(λ(I), 1) on I.
    const auto& arc = a.arcs()[0];
    const ArcSet single = normalize({{arc.start, arc.length(L)}}, L);
    for (int s = 0; s < 5; ++s) {
      const double x = arc.start + arc.length(L) * u(gen);
      EXPECT_GE(eval_g(single, x), std::min(single.measure(), 1.0) - 1e-12);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PhiProperties, ::testing::Values(1, 2, 3, 4));
