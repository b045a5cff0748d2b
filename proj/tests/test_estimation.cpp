#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stochord/bivariate_tp2.hpp"
#include "stochord/estimation.hpp"
#include "stochord/fixtures.hpp"
#include "stochord/rng.hpp"
#include "support.hpp"

using namespace stochord;
namespace ts = testing_support;

namespace {

std::vector<double> ys_of(const QuantileCurve& c) {
  std::vector<double> out;
  for (const auto& p : c.points) out.push_back(p.second);
  return out;
}

BivariateDist product_3x3() {
  return BivariateDist::from_pmf({1, 2, 3}, {1, 2, 3},
                                 {{0.06, 0.12, 0.12}, {0.08, 0.16, 0.16}, {0.06, 0.12, 0.12}});
}

}  // namespace

TEST(SplitMix64, ReferenceStream) {
  // First outputs for seed 1234567 of the published reference implementation.
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 6457827717110365317ULL);
  EXPECT_EQ(g.next(), 3203168211198807973ULL);
  EXPECT_EQ(g.next(), 9817491932198370423ULL);
  SplitMix64 h(0);
  for (int i = 0; i < 1000; ++i) {
    const double u = h.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Sample, PointMass) {
  const auto r = BivariateDist::from_pmf({0}, {0}, {{1.0}});
  const auto s = sample(r, 1, 5);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (std::pair<double, double>{0.0, 0.0}));
  const auto e = empirical(s);
  EXPECT_EQ(e.rows(), 1u);
  EXPECT_EQ(e.total_weight(), 1);
  EXPECT_THROW(sample(r, 0, 5), std::invalid_argument);
}

TEST(Sample, UniformFrequencies) {
  std::vector<std::vector<double>> uni(3, std::vector<double>(3, 1.0 / 9));
  const auto r = BivariateDist::from_pmf({1, 2, 3}, {1, 2, 3}, uni);
  const auto e = empirical(sample(r, 100000, 42));
  ASSERT_EQ(e.rows(), 3u);
  ASSERT_EQ(e.cols(), 3u);
  EXPECT_EQ(e.total_weight(), 100000);
  for (double p : e.pmf()) EXPECT_NEAR(p, 1.0 / 9, 0.01);
}

TEST(Sample, DeterministicPerSeed) {
  const auto r = fixtures::tp2_5x5();
  EXPECT_EQ(sample(r, 500, 9), sample(r, 500, 9));
  EXPECT_NE(sample(r, 500, 9), sample(r, 500, 10));
}

TEST(Empirical, ExactTotals) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    const auto r = ts::random_tp2(rng, 3, 4);
    const std::size_t n = 1 + trial * 37;
    const auto e = empirical(sample(r, n, trial));
    std::int64_t total = 0;
    for (auto w : e.weights()) total += w;
    EXPECT_EQ(total, static_cast<std::int64_t>(n));
  }
}

TEST(QuantileCurve, Examples) {
  const auto diag = fixtures::diag_uniform(3);
  for (auto f : {QuantileFlavor::west_min, QuantileFlavor::east_max}) {
    EXPECT_EQ(ys_of(quantile_curve(diag, 0.5, f, {1, 2, 3})), (std::vector<double>{1, 2, 3}));
  }
  const auto prod = product_3x3();
  const double q = quantile(marginals(prod).second, 0.5);
  for (auto f : {QuantileFlavor::west_min, QuantileFlavor::east_max}) {
    for (double v : ys_of(quantile_curve(prod, 0.5, f, {1, 1.5, 2, 2.5, 3}))) {
      if (f == QuantileFlavor::west_min) { EXPECT_EQ(v, q); }
      EXPECT_GE(v, q);
    }
  }
  const auto r = BivariateDist::from_pmf({1, 2}, {1, 2}, {{0.3, 0.1}, {0.2, 0.4}});
  EXPECT_EQ(ys_of(quantile_curve(r, 0.5, QuantileFlavor::west_min, {1, 2})),
            (std::vector<double>{1, 2}));
}

TEST(QuantileCurve, Errors) {
  const auto diag = fixtures::diag_uniform(3);
  EXPECT_THROW(quantile_curve(diag, 0.0, QuantileFlavor::west_min, {1}), std::domain_error);
  EXPECT_THROW(quantile_curve(diag, 1.0, QuantileFlavor::west_min, {1}), std::domain_error);
  EXPECT_THROW(quantile_curve(diag, 0.5, QuantileFlavor::west_min, {0.5}), std::domain_error);
}

TEST(QuantileCurve, FlavorParse) {
  EXPECT_EQ(parse_quantile_flavor("w"), QuantileFlavor::west_min);
  EXPECT_EQ(parse_quantile_flavor("e"), QuantileFlavor::east_max);
  EXPECT_EQ(parse_quantile_flavor("emp"), QuantileFlavor::empirical);
  EXPECT_EQ(parse_quantile_flavor("east-max"), QuantileFlavor::east_max);
  EXPECT_THROW(parse_quantile_flavor("north"), std::invalid_argument);
}

TEST(QuantileCurve, BetweenAtomsWestAndEastDiffer) {
  const auto diag = fixtures::diag_uniform(3);
  const auto w = quantile_curve(diag, 0.5, QuantileFlavor::west_min, {1.5});
  const auto e = quantile_curve(diag, 0.5, QuantileFlavor::east_max, {1.5});
  EXPECT_EQ(w.points[0].second, 1.0);
  EXPECT_EQ(e.points[0].second, 2.0);
}

TEST(MaxQuantileChoice, FlatStretch) {
  // Row at 1 is (1/2, 1/2): every y in [1, 2] solves the quantile equation
  // for beta = 1/2; the atoms 1 and 2 are the two extreme choices.
  const auto r = BivariateDist::from_pmf({1}, {1, 2}, {{0.5, 0.5}});
  EXPECT_EQ(quantile_curve(r, 0.5, QuantileFlavor::west_min, {1}).points[0].second, 1.0);
  EXPECT_EQ(max_quantile_choice(r, 0.5, 1.0), 2.0);
  EXPECT_EQ(max_quantile_choice(r, 0.25, 1.0), 1.0);
}

TEST(Properties, QuantileCurvesMonotoneAndOrdered) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = ts::random_tp2(rng, 4, 5);
    ASSERT_TRUE(check_st_condition(r).holds);
    const auto grid = default_eval_grid(r);
    for (double beta : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const auto w = ys_of(quantile_curve(r, beta, QuantileFlavor::west_min, grid));
      const auto e = ys_of(quantile_curve(r, beta, QuantileFlavor::east_max, grid));
      for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_LE(w[i], e[i]);
        if (i > 0) {
          EXPECT_LE(w[i - 1], w[i]);
          EXPECT_LE(e[i - 1], e[i]);
        }
      }
    }
  }
}

TEST(Properties, EmpiricalQuantileWithinYRange) {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = ts::random_tp2(rng, 3, 4);
    const auto e = empirical(sample(r, 1 + trial, trial));
    const auto c = quantile_curve(e, 0.5, QuantileFlavor::empirical, default_eval_grid(e));
    for (const auto& p : c.points) {
      EXPECT_GE(p.second, e.y_support().front());
      EXPECT_LE(p.second, e.y_support().back());
    }
  }
}

TEST(Bracket, DiagonalUniform) {
  const auto rep = bracket_check(fixtures::diag_uniform(3), {10000}, {1, 2, 3}, 0.5, 1.5, 2.5);
  EXPECT_EQ(rep.qw_x1, 1.0);
  EXPECT_EQ(rep.qe_x2, 3.0);
  ASSERT_EQ(rep.pass_rate.size(), 1u);
  EXPECT_EQ(rep.pass_rate[0].second, 1.0);
}

TEST(Bracket, ProductAlwaysPasses) {
  const auto rep = bracket_check(product_3x3(), {10, 100, 1000}, {1, 2, 3, 4}, 0.5, 1.5, 2.5);
  for (const auto& row : rep.rows) {
    if (row.n >= 100) {
      EXPECT_TRUE(row.lower_ok);
      EXPECT_TRUE(row.upper_ok);
    }
  }
}

TEST(Bracket, Preconditions) {
  EXPECT_THROW(bracket_check(fixtures::antidiag(), {10}, {1}, 0.5, 1.2, 1.8), PreconditionError);
  const auto diag = fixtures::diag_uniform(3);
  EXPECT_THROW(bracket_check(diag, {10}, {1}, 0.5, 1.0, 2.0), std::domain_error);
  EXPECT_THROW(bracket_check(diag, {10}, {1}, 0.5, 2.5, 1.5), std::domain_error);
}

TEST(Bracket, ReportIsDeterministicAndOrdered) {
  const auto r = fixtures::tp2_5x5();
  const auto a = bracket_check(r, {1000, 100}, {3, 1, 2}, 0.5, 2.0, 4.0);
  const auto b = bracket_check(r, {100, 1000}, {1, 2, 3}, 0.5, 2.0, 4.0);
  ASSERT_EQ(a.rows.size(), 6u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].n, b.rows[i].n);
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
    EXPECT_EQ(a.rows[i].qn_x1_min, b.rows[i].qn_x1_min);
    EXPECT_EQ(a.rows[i].qn_x2_max, b.rows[i].qn_x2_max);
  }
  EXPECT_EQ(a.rows.front().n, 100u);
  EXPECT_EQ(a.rows.front().seed, 1u);
}

TEST(Uniform, DiagonalReachesZero) {
  const auto rep =
      uniform_convergence_check(fixtures::diag_uniform(5), 0.5, 2, 4, {1, 10000}, {1, 2, 3});
  EXPECT_EQ(rep.grid, (std::vector<double>{2, 3, 4}));
  ASSERT_EQ(rep.max_per_n.size(), 2u);
  EXPECT_EQ(rep.max_per_n[1].second, 0.0);
  EXPECT_TRUE(rep.nonincreasing);
}

TEST(Uniform, ProductMatchesMarginalQuantile) {
  const auto prod = product_3x3();
  const double truth = quantile(marginals(prod).second, 0.5);
  const auto rep = uniform_convergence_check(prod, 0.5, 1, 3, {50, 5000}, {1, 2});
  for (const auto& row : rep.rows) {
    const auto e = empirical(sample(prod, row.n, row.seed));
    double sup = 0.0;
    for (double x : rep.grid) {
      sup = std::max(sup, std::abs(quantile(conditional_row(e, x), 0.5) - truth));
    }
    EXPECT_EQ(row.sup_distance, sup);
  }
}

TEST(Uniform, MidpointsViolatePrecondition) {
  try {
    uniform_convergence_check(fixtures::diag_uniform(5), 0.5, 2, 4, {10}, {1}, {2.0, 2.5});
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.witness().coord("x"), 2.5);
  }
}
