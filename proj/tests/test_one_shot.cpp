#include <gtest/gtest.h>

#include <cmath>

#include "scx/logmath.hpp"
#include "scx/entropy.hpp"
#include "scx/one_shot.hpp"
#include "scx/oracles.hpp"

using namespace scx;

namespace {

JointDist uniform22() { return JointDist::from_rows({{0.25, 0.25}, {0.25, 0.25}}); }
JointDist corr_bit() { return JointDist::from_rows({{0.5, 0.0}, {0.0, 0.5}}); }
JointDist j0() { return JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}}); }

}  // namespace

TEST(CondClassical, Uniform) {
  EXPECT_NEAR(eps_d_cond_classical(uniform22(), 1).value, 0.0, 1e-15);
  EXPECT_NEAR(eps_d_cond_classical(uniform22(), 2).value, 0.5, 1e-15);
  OneShotResult r = eps_d_cond_classical(uniform22(), 10);
  EXPECT_NEAR(r.value, 1 - std::exp2(-9), 1e-15);
  EXPECT_NEAR(r.log2_one_minus, -9, 1e-12);
  ASSERT_TRUE(r.smoothed);
  for (double q : *r.smoothed) EXPECT_NEAR(q, std::exp2(-11), 1e-18);
}

TEST(CondIid, MatchesSingleCopyAtNOne) {
  CounterRng rng(21);
  for (int i = 0; i < 20; ++i) {
    JointDist j = random_joint(rng, 2, 3);
    double r = 2 * rng.uniform() - 0.5;
    EXPECT_NEAR(eps_d_cond_iid(j, 1, r).value, eps_d_cond_classical(j, r).value, 1e-13);
  }
}

TEST(CondIid, UniformAtThreshold) {
  for (int n : {1, 5, 40}) EXPECT_NEAR(eps_d_cond_iid(uniform22(), n, 1.0).value, 0.0, 1e-13);
}

TEST(CondIid, FrozenValues) {
  // Exact joint-type sums in 60-digit arithmetic.
  JointDist j = j0();
  double r = cond_entropy(j) + 0.5;
  EXPECT_NEAR(eps_d_cond_iid(j, 1, r).log2_one_minus, -0.53555721564286425, 1e-12);
  EXPECT_NEAR(eps_d_cond_iid(j, 3, r).log2_one_minus, -1.2580431878156884, 1e-12);
  EXPECT_NEAR(eps_d_cond_iid(j, 8, r).log2_one_minus, -2.9762133975659462, 1e-11);
  EXPECT_NEAR(eps_d_cond_iid(j, 50, r).log2_one_minus, -17.374392977675711, 1e-9);
  EXPECT_NEAR(eps_d_cond_iid(j, 8, r).value, brute_iid_smoothing(j, 8, r).value, 1e-12);
}

TEST(MutualClassical, Basics) {
  JointDist prod = JointDist::product(Dist({0.3, 0.7}), Dist({0.4, 0.6}));
  OneShotResult p = eps_d_mutual_classical(prod, 0);
  EXPECT_NEAR(p.value, 0, 1e-12);
  ASSERT_TRUE(p.sigma);
  EXPECT_NEAR((*p.sigma)[0], 0.4, 1e-9);
  OneShotResult c = eps_d_mutual_classical(corr_bit(), 0);
  EXPECT_NEAR(c.value, 0.5, 1e-12);
  EXPECT_NEAR(eps_d_mutual_classical(corr_bit(), 1).value, 0.0, 1e-12);
  EXPECT_THROW(eps_d_mutual_classical(corr_bit(), -0.1), InvalidInput);
}

TEST(MutualClassical, FrozenLp) {
  // independent LP solution
  JointDist j3 = JointDist::from_rows({{0.10, 0.05, 0.15}, {0.02, 0.20, 0.08}, {0.12, 0.03, 0.25}});
  OneShotResult r = eps_d_mutual_classical(j3, 0.3);
  EXPECT_NEAR(r.value, 0.11815667599652512, 1e-10);
  EXPECT_NEAR(eps_d_mutual_objective(j3, *r.sigma, 0.3), r.value, 1e-12);
  EXPECT_NEAR(eps_d_mutual_classical(j0(), 0.5).value, 0.0, 1e-12);
}

TEST(MutualFixedSigma, Basics) {
  JointDist j = j0();
  Dist s({0.3, 0.7});
  EXPECT_NEAR(eps_d_mutual_iid_fixed_sigma(j, s, 1, 0.2).value, eps_d_mutual_objective(j, s, 0.2),
              1e-13);
  JointDist prod = JointDist::product(Dist({0.3, 0.7}), Dist({0.4, 0.6}));
  for (double r : {0.0, 0.4, 2.0})
    EXPECT_NEAR(eps_d_mutual_iid_fixed_sigma(prod, Dist({0.4, 0.6}), 12, r).value, 0.0, 1e-12);
  // 1 - eps = 2^{n (r - 1)} on the correlated bit with sigma uniform
  OneShotResult c = eps_d_mutual_iid_fixed_sigma(corr_bit(), Dist::uniform(2), 40, 0.5);
  EXPECT_NEAR(c.log2_one_minus, -20.0, 1e-9);
  for (int n : {2, 5, 8})
    EXPECT_NEAR(eps_d_mutual_iid_fixed_sigma(corr_bit(), Dist::uniform(2), n, 0.5).value,
                brute_iid_mutual_fixed_sigma(corr_bit(), Dist::uniform(2), n, 0.5).value, 1e-12);
}

TEST(PurifiedClassical, Basics) {
  EXPECT_NEAR(eps_P_cond_classical(uniform22(), 1).value, 0.0, 1e-12);
  EXPECT_NEAR(eps_P_cond_classical(uniform22(), 2).value, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(eps_P_cond_classical(j0(), -40).value, 0.0, 1e-12);
  // conic solver on the same program
  EXPECT_NEAR(eps_P_cond_classical(j0(), 1.5).value, 0.5763665114532494, 1e-8);
}

TEST(PurifiedClassical, AboveTrace) {
  CounterRng rng(22);
  for (int i = 0; i < 50; ++i) {
    JointDist j = random_joint(rng, 2 + rng.below(2), 2 + rng.below(2));
    double l = 3 * rng.uniform() - 0.5;
    double d = eps_d_cond_classical(j, l).value, p = eps_P_cond_classical(j, l).value;
    EXPECT_LE(d, p + 1e-12);
    EXPECT_LE(p, std::sqrt(2 * d) + 1e-12);
  }
}

TEST(PureBounds, Basics) {
  PureBounds b1 = eps_P_cond_pure_bounds(SchmidtState(Dist({0.6, 0.4})), 1, 0.0);
  EXPECT_NEAR(b1.lower.value, 0.0, 1e-12);
  PureBounds pm = eps_P_cond_pure_bounds(SchmidtState(Dist::point(2, 0)), 7, 0.4);
  EXPECT_NEAR(pm.log2_b, -7 * 0.4 / 2, 1e-12);
  PureBounds b = eps_P_cond_pure_bounds(SchmidtState(Dist({0.7, 0.3})), 100, 0.5);
  EXPECT_LE(b.lower.value, b.upper.value + 1e-15);
  // The sandwich is on the optimal fidelity, F = sqrt((1 - eps)(1 + eps)).
  auto log2_f = [](const OneShotResult& o) { return 0.5 * (o.log2_one_minus + std::log2(1 + o.value)); };
  double gap = log2_f(b.lower) - log2_f(b.upper);
  EXPECT_GE(gap, -1e-12);
  EXPECT_LE(gap, std::log2(101.0) + 1e-9);
}

TEST(Conversions, Ordering) {
  for (double e : {0.0, 0.01, 0.3, 0.9}) {
    auto [lo, hi] = purified_bounds_from_trace(e);
    EXPECT_DOUBLE_EQ(lo, e);
    EXPECT_NEAR(hi, std::sqrt(e), 1e-15);
  }
}
