#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "smalldiff/constructions.hpp"
#include "smalldiff/phi.hpp"
#include "smalldiff/random.hpp"
#include "smalldiff/sampling.hpp"

using namespace smalldiff;

TEST(Equispaced, Layout) {
  const ArcSet a = equispaced_density(0.3, 5, 3);
  ASSERT_EQ(a.size(), 3u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(a.arcs()[j].start, 5.0 * j / 3, 1e-15);
    EXPECT_NEAR(a.arcs()[j].length(5), 0.5, 1e-15);
  }
}

TEST(Equispaced, EqualityCase) {
  const double L = 2 * std::sqrt(2.0);
  const ArcSet a = equispaced_density(0.5, L, 2);
  EXPECT_NEAR(phi(a), 2 - std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(eta(a), 0.0, 1e-9);
  for (double e : a.endpoints()) EXPECT_NEAR(eval_g(a, e), phi_coeff(0.5), 1e-9);
}

TEST(Equispaced, FullAndSuboptimal) {
  EXPECT_TRUE(equispaced_density(1.0, 4, 3).is_full());
  EXPECT_NEAR(eta(equispaced_density(1.0, 4, 3)), 0.0, 1e-12);
  const double L = 2 * std::sqrt(2.0);
  EXPECT_NEAR(eta(equispaced_density(0.5, L, 1)), 2 * std::sqrt(2.0) - 2.5, 1e-12);
  EXPECT_GT(eta(equispaced_density(0.5, L, 1)), 0.0);
}

TEST(Equispaced, DensityEqualityAndStationarity) {
  for (double xi : {0.2, 0.5, 0.8}) {
    for (int n = 1; n <= 3; ++n) {
      const double L = n / oracle::kernel(xi);
      const ArcSet a = equispaced_density(xi, L, n);
      EXPECT_LE(std::abs(eta(a)), 1e-9) << xi << " " << n;
      if (xi <= 0.5) {
        for (double e : a.endpoints()) EXPECT_NEAR(eval_g(a, e), phi_coeff(xi), 1e-9);
      }
    }
  }
}

TEST(Equispaced, Errors) {
  EXPECT_THROW(equispaced_density(1.2, 3, 1), domain_error);
  EXPECT_THROW(equispaced_density(0.5, 0.5, 1), invalid_input);
  EXPECT_THROW(equispaced_density(0.5, 3, 0), invalid_input);
}

TEST(Alternating, Fig2Configuration) {
  const Partition p = alternating_partition(2, 3);
  const double L = 9 / std::sqrt(5.0);
  EXPECT_NEAR(p.perimeter(), L, 1e-15);
  EXPECT_EQ(p.k(), 2);
  for (const auto& part : p.parts()) {
    ASSERT_EQ(part.size(), 3u);
    for (const auto& arc : part.arcs()) EXPECT_NEAR(arc.length(L), 1 / std::sqrt(5.0), 1e-12);
  }
  EXPECT_NEAR(phi_partition(p), 0.9501552810007575, 1e-9);
}

TEST(Alternating, SmallCases) {
  const Partition one = alternating_partition(0, 1);
  EXPECT_DOUBLE_EQ(one.perimeter(), 1.0);
  EXPECT_TRUE(one.parts()[0].is_full());
  EXPECT_NEAR(phi_partition(one), 1.0, 1e-15);
  const Partition two = alternating_partition(1, 2);
  EXPECT_NEAR(phi_partition(two), (std::sqrt(2.0) - 1) * 2 * std::sqrt(2.0), 1e-9);
}

TEST(Alternating, EqualityGrid) {
  for (int k = 0; k <= 3; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const Partition p = alternating_partition(k, n);
      const double bound = (std::sqrt(k * k + 1.0) - k) * p.perimeter();
      EXPECT_LE(std::abs(phi_partition(p) - bound), 1e-9) << k << " " << n;
    }
  }
}

TEST(Blocks, Patterns) {
  EXPECT_EQ(block_colouring(1, 8, 2).to_string(), "11221122");
  EXPECT_EQ(block_colouring(0, 5, 3).to_string(), "11111");
  EXPECT_EQ(block_colouring(2, 7, 2).to_string(), "1122331");
  EXPECT_EQ(mono_edges(block_colouring(1, 8, 2), 2), 4);
  EXPECT_THROW(block_colouring(1, 8, 0), invalid_input);
}

TEST(Blowup, Examples) {
  const Partition single = blowup(DiscreteColouring(0, {1, 1, 1, 1}), 2);
  EXPECT_DOUBLE_EQ(single.perimeter(), 2.0);
  EXPECT_TRUE(single.parts()[0].is_full());
  EXPECT_NEAR(phi_partition(single), 2.0, 1e-15);

  const Partition alt = blowup(DiscreteColouring(1, {1, 2, 1, 2}), 1);
  EXPECT_DOUBLE_EQ(alt.perimeter(), 4.0);
  for (const auto& part : alt.parts()) {
    EXPECT_EQ(part.size(), 2u);
    EXPECT_DOUBLE_EQ(part.measure(), 2.0);
  }
  EXPECT_TRUE(alt.parts()[0].contains(0.5));
  EXPECT_TRUE(alt.parts()[1].contains(1.5));

  const DiscreteColouring c(1, {1, 1, 2, 2, 1, 1, 2, 2});
  const Partition b = blowup(c, 2);
  EXPECT_DOUBLE_EQ(b.perimeter(), 4.0);
  const double rhs = mono_edges(c, 2) / 4.0 + 8 / 8.0 + 0.5;
  EXPECT_LE(phi_partition(b), rhs + 1e-9);

  EXPECT_THROW(blowup(DiscreteColouring(0, {1, 1}), 3), domain_error);
}

TEST(Blowup, KeepsEmptyColours) {
  const Partition p = blowup(DiscreteColouring(2, {1, 1, 1}), 1);
  EXPECT_EQ(p.parts().size(), 3u);
  EXPECT_TRUE(p.parts()[1].empty());
}

TEST(Blowup, BridgeInequalityRandom) {
  Rng rng(21);
  for (int s = 0; s < 500; ++s) {
    const int k = rng.integer(0, 3);
    const int n = rng.integer(1, 20);
    const int m = rng.integer(1, n);
    const DiscreteColouring c = random_colouring(rng, k, n);
    const double mm = double(m) * m;
    const double rhs = oracle::mono(c.colors(), m) / mm + n / (2 * mm) + 0.5;
    ASSERT_LE(phi_partition(blowup(c, m)), rhs + 1e-9) << c.to_string() << " m=" << m;
  }
}
