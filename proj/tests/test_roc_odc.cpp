#include <gtest/gtest.h>

#include <random>

#include "stochord/fixtures.hpp"
#include "stochord/roc_odc.hpp"
#include "stochord/univariate_orders.hpp"
#include "support.hpp"

using namespace stochord;
namespace ts = testing_support;

namespace {

using Points = std::vector<std::pair<double, double>>;

// Concavity over every triple of points, not only consecutive ones.
bool concave_all_triples(const std::vector<std::pair<std::int64_t, std::int64_t>>& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      for (std::size_t k = j + 1; k < p.size(); ++k) {
        const ts::Wide lhs = static_cast<ts::Wide>(p[k].second - p[j].second) * (p[j].first - p[i].first);
        const ts::Wide rhs = static_cast<ts::Wide>(p[j].second - p[i].second) * (p[k].first - p[j].first);
        if (lhs > rhs) return false;
      }
    }
  }
  return true;
}

void expect_monotone(const RocCurve& c) {
  ASSERT_GE(c.points.size(), 2u);
  EXPECT_EQ(c.points.front(), (std::pair<double, double>{0.0, 0.0}));
  EXPECT_EQ(c.points.back(), (std::pair<double, double>{1.0, 1.0}));
  for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
    EXPECT_LE(c.points[i].first, c.points[i + 1].first);
    EXPECT_LE(c.points[i].second, c.points[i + 1].second);
    EXPECT_NE(c.points[i], c.points[i + 1]);
  }
}

}  // namespace

TEST(RocCurve, Examples) {
  const auto d0 = UnivariateDist::point_mass(0);
  EXPECT_EQ(roc_curve(d0, d0).points, (Points{{0, 0}, {1, 1}}));
  const auto half = UnivariateDist::from_probs({0, 1}, {0.5, 0.5});
  const auto c = roc_curve(half, UnivariateDist::point_mass(0.5));
  EXPECT_EQ(c.points, (Points{{0, 0}, {0.5, 0}, {0.5, 1}, {1, 1}}));
  expect_monotone(c);
}

TEST(RocConcave, Examples) {
  RocCurve two;
  two.points = {{0, 0}, {1, 1}};
  EXPECT_TRUE(roc_is_concave(two).holds);
  RocCurve jump;
  jump.points = {{0, 0}, {0.5, 0}, {0.5, 1}, {1, 1}};
  const auto v = roc_is_concave(jump);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.method, "roc-concave");
  EXPECT_EQ(v.witness->coord("a1"), 0.0);
  EXPECT_EQ(v.witness->coord("b1"), 0.5);
  EXPECT_EQ(v.witness->coord("c2"), 1.0);
}

TEST(RocConcave, GammaAndGaussFixtures) {
  const auto gamma = fixtures::gamma_pair();
  EXPECT_TRUE(roc_is_concave(roc_curve(gamma.q1, gamma.q2)).holds);
  const auto gauss = fixtures::gauss_pair();
  EXPECT_FALSE(roc_is_concave(roc_curve(gauss.q1, gauss.q2)).holds);
}

TEST(RocConcave, ExactNeedsWeights) {
  const auto half = UnivariateDist::from_probs({0, 1}, {0.5, 0.5});
  EXPECT_THROW(roc_is_concave(roc_curve(half, half), Comparison::exact()), std::invalid_argument);
}

TEST(Odc, IdentityIsConvex) {
  const auto q = UnivariateDist::from_probs({1, 2, 4}, {0.2, 0.5, 0.3});
  const auto c = odc_curve(q, q);
  ASSERT_EQ(c.alphas.size(), 4u);
  for (std::size_t i = 0; i < c.alphas.size(); ++i) EXPECT_DOUBLE_EQ(c.values[i], c.alphas[i]);
  EXPECT_TRUE(c.absolutely_continuous);
  EXPECT_TRUE(odc_is_convex(c).holds);
}

TEST(Odc, CounterexampleExactValues) {
  const auto f = fixtures::odc_counterexample();
  const auto c = odc_curve(f.q1, f.q2);
  EXPECT_EQ(c.alphas, (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(c.values, (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_FALSE(c.absolutely_continuous);
  EXPECT_TRUE(odc_is_convex(c, Comparison::exact()).holds);
  EXPECT_FALSE(roc_is_concave(roc_curve(f.q1, f.q2), Comparison::exact()).holds);
  EXPECT_FALSE(check_lr(f.q1, f.q2, LrMethod::ratio, Comparison::exact()).holds);
}

TEST(Odc, ConvexityWitness) {
  const auto q1 = UnivariateDist::from_weights({1, 2, 3}, {1, 1, 1});
  const auto q2 = UnivariateDist::from_weights({1, 2, 3}, {2, 0, 1});
  const auto v = odc_is_convex(odc_curve(q1, q2), Comparison::exact());
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.method, "odc-convex");
  EXPECT_DOUBLE_EQ(v.witness->coord("r"), 0.0);
  EXPECT_DOUBLE_EQ(v.witness->coord("s"), 1.0 / 3.0);
}

TEST(Properties, RocAndOdcMatchLrExhaustively) {
  const auto vecs = ts::all_weight_vectors(3, 3);
  for (const auto& w1 : vecs) {
    for (const auto& w2 : vecs) {
      const auto q1 = UnivariateDist::from_weights({1, 2, 3}, w1);
      const auto q2 = UnivariateDist::from_weights({1, 2, 3}, w2);
      const bool lr = ts::oracle::lr(w1, w2);
      const auto roc = roc_curve(q1, q2);
      expect_monotone(roc);
      ASSERT_EQ(roc_is_concave(roc, Comparison::exact()).holds, lr);
      ASSERT_EQ(roc_is_concave(roc).holds, lr);
      ASSERT_EQ(concave_all_triples(*roc.exact), lr);
      const auto odc = odc_curve(q1, q2);
      if (odc.absolutely_continuous) {
        ASSERT_EQ(odc_is_convex(odc, Comparison::exact()).holds, lr);
        ASSERT_EQ(odc_is_convex(odc).holds, lr);
      }
    }
  }
}

TEST(Properties, RocMatchesLrOnRandomPairs) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3000; ++trial) {
    const auto [q1, q2] = ts::random_float_pair(rng, 6, trial % 2 == 0);
    const bool lr = check_lr(q1, q2).holds;
    const auto roc = roc_curve(q1, q2);
    expect_monotone(roc);
    EXPECT_EQ(roc_is_concave(roc).holds, lr);
    const auto odc = odc_curve(q1, q2);
    if (odc.absolutely_continuous) { EXPECT_EQ(odc_is_convex(odc).holds, lr); }
  }
}
