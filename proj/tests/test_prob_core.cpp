#include <gtest/gtest.h>

#include <cmath>

#include "scx/entropy.hpp"
#include "scx/logmath.hpp"
#include "scx/optimize.hpp"
#include "scx/oracles.hpp"

using namespace scx;

namespace {

JointDist corr_bit() { return JointDist::from_rows({{0.5, 0.0}, {0.0, 0.5}}); }
JointDist uniform22() { return JointDist::from_rows({{0.25, 0.25}, {0.25, 0.25}}); }
JointDist j0() { return JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}}); }

}  // namespace

TEST(Dist, RejectsBadWeights) {
  EXPECT_THROW(Dist({0.5, 0.6}), InvalidInput);
  EXPECT_THROW(Dist({-0.1, 1.1}), InvalidInput);
  EXPECT_NO_THROW(Dist({0.2, 0.3}, true));
  EXPECT_THROW(Dist({"a"}, {0.5, 0.5}), InvalidInput);
}

TEST(Dist, Marginals) {
  JointDist j = j0();
  EXPECT_NEAR(j.marginal_rows()[0], 0.5, 1e-15);
  EXPECT_NEAR(j.marginal_cols()[1], 0.4, 1e-15);
  EXPECT_NEAR(j.conditional(1)[1], 0.6, 1e-15);
  JointDist t = j.tensor_power(2);
  EXPECT_EQ(t.rows(), 4u);
  EXPECT_NEAR(t(1, 2), j(0, 1) * j(1, 0), 1e-15);  // rows (0,1), cols (1,0)
}

TEST(Entropy, Shannon) {
  EXPECT_DOUBLE_EQ(shannon_entropy(Dist::uniform(4)), 2.0);
  EXPECT_DOUBLE_EQ(shannon_entropy(Dist::point(3, 1)), 0.0);
  EXPECT_NEAR(shannon_entropy(Dist({0.75, 0.25})), 0.8112781244591328, 1e-14);
}

TEST(Entropy, Renyi) {
  for (double a : {0.0, 0.3, 1.0, 2.0, 7.0, kInf})
    EXPECT_NEAR(renyi_entropy(Dist::uniform(5), a), std::log2(5.0), 1e-12) << a;
  EXPECT_DOUBLE_EQ(renyi_entropy(Dist({1.0, 0.0}), 0.5), 0.0);
  EXPECT_NEAR(renyi_entropy(Dist({0.75, 0.25}), 2.0), 0.6780719051126377, 1e-14);
  // inside the guard band the Shannon value is used
  EXPECT_DOUBLE_EQ(renyi_entropy(Dist({0.75, 0.25}), 1.0 + 1e-7),
                   shannon_entropy(Dist({0.75, 0.25})));
}

TEST(Entropy, RenyiMonotoneInAlpha) {
  CounterRng rng(11);
  for (int i = 0; i < 50; ++i) {
    Dist p = random_dist(rng, 4);
    double prev = renyi_entropy(p, 0.0);
    for (double a : {0.2, 0.5, 0.9, 1.0, 1.5, 3.0, 10.0, kInf}) {
      double h = renyi_entropy(p, a);
      EXPECT_LE(h, prev + 1e-12);
      prev = h;
    }
  }
}

TEST(Entropy, RelativeEntropy) {
  Dist p({0.75, 0.25});
  EXPECT_DOUBLE_EQ(relative_entropy(p, p), 0.0);
  EXPECT_DOUBLE_EQ(relative_entropy(Dist({1.0, 0.0}), Dist::uniform(2)), 1.0);
  EXPECT_NEAR(relative_entropy(p, Dist::uniform(2)), 0.18872187554086717, 1e-14);
  EXPECT_EQ(relative_entropy(Dist::uniform(2), Dist({1.0, 0.0})), kInf);
}

TEST(Entropy, PetzClassical) {
  Dist p({0.6, 0.4});
  for (double a : {0.3, 0.5, 2.0}) EXPECT_NEAR(petz_divergence_classical(p, p, a), 0.0, 1e-14);
  EXPECT_NEAR(petz_divergence_classical(Dist({1.0, 0.0}), Dist::uniform(2), 2.0), 1.0, 1e-14);
  EXPECT_EQ(petz_divergence_classical(Dist({1.0, 0.0}), Dist({0.0, 1.0}), 0.5), kInf);
}

TEST(Entropy, CondEntropyBar) {
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(petz_cond_entropy_bar(uniform22(), a), 1.0, 1e-12);
    EXPECT_NEAR(petz_cond_entropy_bar(corr_bit(), a), 0.0, 1e-12);
  }
  // direct summation in extended precision
  EXPECT_NEAR(petz_cond_entropy_bar(j0(), 2.0), 0.736965594166206, 1e-13);
  EXPECT_NEAR(petz_cond_entropy_bar(j0(), 0.5), 0.9174915512429906, 1e-13);
}

TEST(Entropy, PetzMutualInfo) {
  JointDist prod = JointDist::product(Dist({0.3, 0.7}), Dist({0.6, 0.4}));
  MutualInfo m = petz_mutual_info(prod, 0.7);
  EXPECT_NEAR(m.value, 0.0, 1e-12);
  EXPECT_NEAR(m.sigma[0], 0.6, 1e-12);
  MutualInfo c = petz_mutual_info(corr_bit(), 0.5);
  EXPECT_NEAR(c.value, 1.0, 1e-12);
  EXPECT_NEAR(c.sigma[0], 0.5, 1e-12);
  JointDist j3 = JointDist::from_rows({{0.10, 0.05, 0.15}, {0.02, 0.20, 0.08}, {0.12, 0.03, 0.25}});
  // Nelder-Mead over sigma in an independent implementation
  EXPECT_NEAR(petz_mutual_info(j3, 0.7).value, 0.175759468751903, 1e-10);
  GridMin g = simplex_grid_min(
      [&](std::span<const double> x) {
        return mutual_info_objective(j3, Dist(std::vector<double>(x.begin(), x.end())), 0.7);
      },
      3, 400);
  EXPECT_NEAR(g.value, petz_mutual_info(j3, 0.7).value, 1e-4);
  EXPECT_GE(g.value, petz_mutual_info(j3, 0.7).value - 1e-12);
}

TEST(Entropy, ExpectedCondRenyi) {
  JointDist j = j0();
  EXPECT_NEAR(expected_cond_renyi(j, Dist::point(2, 1), 2.0), renyi_entropy(j.conditional(1), 2.0),
              1e-14);
  EXPECT_NEAR(expected_cond_renyi(uniform22(), Dist({0.3, 0.7}), 0.4), 1.0, 1e-14);
  Dist t({0.3, 0.7});
  EXPECT_NEAR(expected_cond_renyi(j, t, 0.6),
              0.3 * renyi_entropy(j.conditional(0), 0.6) + 0.7 * renyi_entropy(j.conditional(1), 0.6),
              1e-14);
}

TEST(LogMath, SumExp) {
  std::vector<double> xs = {-1100, -1100, -1101};
  EXPECT_NEAR(log2_sum_exp(xs), -1100 + std::log2(2.5), 1e-12);
  EXPECT_EQ(log2_sum_exp(std::vector<double>{}), -kInf);
  EXPECT_NEAR(log2_one_minus_exp2(-60), -std::exp2(-60) / std::log(2.0), 1e-30);
  Log2Accumulator acc;
  for (int i = 0; i < 1000; ++i) acc.add(-2000.0);
  EXPECT_NEAR(acc.value(), -2000.0 + std::log2(1000.0), 1e-11);
}

TEST(Optimize, SimplexProjection) {
  auto x = project_to_simplex(std::vector<double>{0.5, 2.0, -1.0});
  EXPECT_NEAR(x[1], 1.0, 1e-15);
  EXPECT_NEAR(x[0] + x[1] + x[2], 1.0, 1e-15);
}

TEST(Optimize, GridLinearVertex) {
  GridMin g = simplex_grid_min([](std::span<const double> x) { return 3 * x[0] + x[1] + 2 * x[2]; },
                               3, 50);
  EXPECT_DOUBLE_EQ(g.value, 1.0);
  EXPECT_DOUBLE_EQ(g.argmin[1], 1.0);
}

TEST(Optimize, GridRelativeEntropyNearP) {
  Dist p({0.2, 0.3, 0.5});
  GridMin g = simplex_grid_min(
      [&](std::span<const double> x) { return relative_entropy(x, p.weights()); }, 3, 10);
  EXPECT_NEAR(g.value, 0.0, 1e-12);
  EXPECT_THROW(simplex_grid_min([](std::span<const double>) { return 0.0; }, 4, 100000),
               BudgetExceeded);
}

TEST(Optimize, Lp) {
  LinearProgram lp;
  lp.c = {-1, -1};
  lp.a_ub = {{1, 2}, {3, 1}};
  lp.b_ub = {4, 6};
  LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::optimal);
  EXPECT_NEAR(s.value, -2.8, 1e-12);
}

TEST(Optimize, Interval) {
  Argmax1D m = maximize_on_interval([](double x) { return -(x - 0.3) * (x - 0.3); }, 0, 1);
  EXPECT_NEAR(m.arg, 0.3, 1e-8);
}

TEST(Gibbs, ClosedFormBeatsGrid) {
  CounterRng rng(5);
  for (int i = 0; i < 20; ++i) {
    Dist p = random_dist(rng, 3);
    std::vector<double> g = {rng.uniform(), -rng.uniform(), 2 * rng.uniform()};
    GibbsTilt t = gibbs_tilt_min(p, g, 1.3);
    EXPECT_NEAR(tilt_objective(t.t, p, g, 1.3), t.value, 1e-12);
    GridMin gm = simplex_grid_min(
        [&](std::span<const double> x) {
          return tilt_objective(Dist(std::vector<double>(x.begin(), x.end())), p, g, 1.3);
        },
        3, 400);
    EXPECT_GE(gm.value, t.value - 1e-12);
    EXPECT_LE(gm.value, t.value + 1e-3);
  }
}
