#include <gtest/gtest.h>

#include <cmath>

#include "scx/logmath.hpp"
#include "scx/entropy.hpp"
#include "scx/exponents.hpp"
#include "scx/oracles.hpp"

using namespace scx;

namespace {

JointDist uniform22() { return JointDist::from_rows({{0.25, 0.25}, {0.25, 0.25}}); }
JointDist corr_bit() { return JointDist::from_rows({{0.5, 0.0}, {0.0, 0.5}}); }
JointDist j0() { return JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}}); }
double pos(double x) { return x > 0 ? x : 0; }

}  // namespace

TEST(CondTrace, ClosedCases) {
  for (double r : {-0.5, 0.5, 1.0, 1.7, 3.0}) {
    EXPECT_NEAR(exp_cond_trace_classical(uniform22(), r).value, pos(r - 1), 1e-9) << r;
    EXPECT_NEAR(exp_cond_trace_classical(corr_bit(), r).value, pos(r), 1e-9) << r;
  }
}

TEST(CondTrace, FrozenGridValue) {
  // 10^5-point alpha grid
  EXPECT_NEAR(exp_cond_trace_classical(j0(), 1.2).value, 0.19999999999999996, 1e-6);
}

TEST(MutualTrace, ClosedCases) {
  JointDist prod = JointDist::product(Dist({0.3, 0.7}), Dist({0.4, 0.6}));
  for (double r : {0.0, 0.5}) EXPECT_NEAR(exp_mutual_trace_classical(prod, r).value, 0.0, 1e-9);
  for (double r : {0.0, 0.3, 0.9, 1.5})
    EXPECT_NEAR(exp_mutual_trace_classical(corr_bit(), r).value, pos(1 - r), 1e-9) << r;
}

TEST(MutualTrace, FrozenGridValue) {
  JointDist j3 = JointDist::from_rows({{0.10, 0.05, 0.15}, {0.02, 0.20, 0.08}, {0.12, 0.03, 0.25}});
  double r = mutual_info(j3) / 2;
  EXPECT_NEAR(mutual_info(j3), 0.24113506086301614, 1e-13);
  EXPECT_NEAR(exp_mutual_trace_classical(j3, r).value, 0.0167624008451886, 1e-5);
  EXPECT_DOUBLE_EQ(exp_state_splitting(j3, r).value, exp_mutual_trace_classical(j3, r).value);
}

TEST(CondPurified, ClosedCases) {
  for (double r : {0.5, 1.0, 1.5, 2.5}) {
    EXPECT_NEAR(exp_cond_purified_classical(uniform22(), r).value, pos(r - 1), 1e-9) << r;
    EXPECT_NEAR(exp_cond_purified_variational(uniform22(), r).value, pos(r - 1), 1e-9) << r;
  }
  EXPECT_NEAR(exp_cond_purified_variational(j0(), -20).value, 0.0, 1e-12);
}

TEST(CondPurified, TrivialRow) {
  JointDist one = JointDist::from_rows({{0.2, 0.3, 0.5}});
  Dist pa({0.2, 0.3, 0.5});
  double r = 1.8;
  double best = 0;
  for (int i = 0; i <= 5000; ++i) {
    double a = 0.5 + 0.5 * i / 5000.0;
    best = std::max(best, (1 - a) / a * (r - renyi_entropy(pa, a)));
  }
  EXPECT_NEAR(exp_cond_purified_classical(one, r).value, best, 1e-7);
}

TEST(CondPurified, FrozenGridValues) {
  // t-grid x alpha-grid
  JointDist j = JointDist::from_rows({{0.25, 0.10, 0.15}, {0.05, 0.30, 0.15}});
  EXPECT_NEAR(exp_cond_purified_classical(j, 1.5).value, 0.026246446325889634, 1e-4);
  EXPECT_NEAR(exp_cond_purified_classical(j, 1.7).value, 0.21979420812943926, 1e-4);
}

TEST(CondPurified, VariationalIdentity) {
  CounterRng rng(31);
  for (int i = 0; i < 100; ++i) {
    JointDist j = random_joint(rng, 2 + rng.below(2), 2 + rng.below(2));
    double r = -0.5 + 3 * rng.uniform();
    EXPECT_NEAR(exp_cond_purified_variational(j, r).value, exp_cond_purified_classical(j, r).value,
                1e-6);
  }
}

TEST(CondPure, Values) {
  EXPECT_NEAR(exp_cond_pure(SchmidtState(Dist::point(2, 0)), 0.5).value, 0.5, 1e-9);
  EXPECT_NEAR(exp_cond_pure(SchmidtState(Dist::uniform(2)), -1).value, 0.0, 1e-9);
  EXPECT_NEAR(exp_cond_pure(SchmidtState(Dist::uniform(2)), -3).value, 0.0, 1e-9);
  EXPECT_NEAR(exp_cond_pure(SchmidtState(Dist::uniform(2)), 0).value, 1.0, 1e-9);
}

TEST(CondPure, TwoFormsAgree) {
  CounterRng rng(32);
  for (int i = 0; i < 100; ++i) {
    Dist p = random_dist(rng, 2 + rng.below(3));
    double r = -2 + 4 * rng.uniform();
    ExponentValue v = exp_cond_pure(SchmidtState(p), r);
    ASSERT_TRUE(v.dual_value);
    EXPECT_NEAR(v.value, *v.dual_value, 1e-6);
  }
}

TEST(MutualPure, Values) {
  EXPECT_NEAR(exp_mutual_pure(SchmidtState(Dist::uniform(2)), 1).value, 1.0, 1e-9);
  CounterRng rng(33);
  Dist p = random_dist(rng, 3);
  EXPECT_NEAR(exp_mutual_pure(SchmidtState(p), 2 * std::log2(3.0)).value, 0.0, 1e-9);
  // u-grid with 4e5 points
  EXPECT_NEAR(exp_mutual_pure(SchmidtState(Dist({0.9, 0.1})), 0.3).value, 0.1405642224429054, 1e-6);
}

TEST(Intrinsic, Values) {
  EXPECT_NEAR(exp_intrinsic_randomness(Dist::uniform(2), 2).value, 1.0, 1e-9);
  Dist p({0.75, 0.25});
  EXPECT_NEAR(exp_intrinsic_randomness(p, shannon_entropy(p)).value, 0.0, 1e-9);
  EXPECT_NEAR(exp_intrinsic_randomness(p, 0.5).value, 0.0, 1e-9);
  EXPECT_NEAR(exp_intrinsic_randomness(p, 1).value, 0.050044472810747934, 1e-6);
  EXPECT_NEAR(exp_intrinsic_variational(Dist::uniform(2), 2).value, 1.0, 1e-9);
  EXPECT_LE(exp_intrinsic_variational(p, 1.3).value, pos(1.3 - shannon_entropy(p)) + 1e-12);
}

TEST(Intrinsic, VariationalIdentity) {
  CounterRng rng(34);
  for (int i = 0; i < 100; ++i) {
    Dist p = random_dist(rng, 2 + rng.below(3));
    double r = 3 * rng.uniform();
    EXPECT_NEAR(exp_intrinsic_variational(p, r).value, exp_intrinsic_randomness(p, r).value, 1e-6);
  }
}

TEST(Compression, Values) {
  EXPECT_NEAR(exp_classical_compression(Dist::uniform(2), 0.5).value, 0.5, 1e-9);
  EXPECT_NEAR(exp_blind_compression(Dist::uniform(2), 0.5).value, 1.0, 1e-9);
  Dist p({0.9, 0.1});
  EXPECT_NEAR(exp_classical_compression(p, shannon_entropy(p)).value, 0.0, 1e-9);
  EXPECT_NEAR(exp_classical_compression(p, 0.2).value, 0.05066529832137476, 1e-6);
  Dist b({0.8, 0.15, 0.05});
  ExponentValue cl = exp_classical_compression(b, 0.4), bl = exp_blind_compression(b, 0.4);
  EXPECT_NEAR(bl.value, 2 * cl.value, 1e-12);
  EXPECT_DOUBLE_EQ(bl.witness.param, cl.witness.param);
  EXPECT_NEAR(bl.value, 0.2047264834149455, 1e-6);
}

TEST(Comparison, PointMass) {
  SchmidtState s(Dist::point(2, 0));
  for (double r : {-1.0, 0.0, 0.7}) {
    EXPECT_NEAR(exp_cond_trace_pure_comparison(s, r).value, pos(r), 1e-9);
    EXPECT_NEAR(exp_mutual_trace_pure_comparison(s, r).value, pos(-r), 1e-9);
  }
}

TEST(MutualLowerBound, ProductState) {
  std::vector<double> d = {0.3, 0.7};
  std::vector<double> e = {0.6, 0.4};
  HermitianOp rho = kron(HermitianOp::diagonal(d), HermitianOp::diagonal(e));
  ExponentValue v = exp_mutual_lower_bound_general(rho, 2, 2, 0.2, 11);
  EXPECT_NEAR(v.value, 0.0, 1e-6);
}

TEST(Thresholds, FirstOrder) {
  CounterRng rng(35);
  for (int i = 0; i < 10; ++i) {
    JointDist j = random_joint(rng, 2, 3);
    double h = cond_entropy(j), mi = mutual_info(j);
    EXPECT_NEAR(exp_cond_trace_classical(j, h - 1e-3).value, 0.0, 1e-9);
    EXPECT_GT(exp_cond_trace_classical(j, h + 1e-2).value, 0.0);
    EXPECT_NEAR(exp_mutual_trace_classical(j, mi + 1e-3).value, 0.0, 1e-9);
    EXPECT_GT(exp_mutual_trace_classical(j, mi - 1e-2).value, 0.0);
    Dist p = random_dist(rng, 3);
    double hp = shannon_entropy(p);
    EXPECT_NEAR(exp_intrinsic_randomness(p, hp - 1e-3).value, 0.0, 1e-9);
    EXPECT_GT(exp_intrinsic_randomness(p, hp + 1e-2).value, 0.0);
    EXPECT_NEAR(exp_cond_pure(SchmidtState(p), -hp - 1e-3).value, 0.0, 1e-9);
    EXPECT_GT(exp_cond_pure(SchmidtState(p), -hp + 1e-2).value, 0.0);
    EXPECT_NEAR(exp_mutual_pure(SchmidtState(p), 2 * hp + 1e-3).value, 0.0, 1e-9);
    EXPECT_GT(exp_mutual_pure(SchmidtState(p), 2 * hp - 1e-2).value, 0.0);
  }
}

TEST(Registry, RoundTrip) {
  for (Family f : all_families()) {
    auto back = parse_family(family_name(f));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, f);
  }
  EXPECT_FALSE(parse_family("nope"));
}

TEST(Registry, CurvesMonotoneAndWitnessesReplay) {
  std::vector<double> grid;
  for (int i = 0; i <= 12; ++i) grid.push_back(-0.5 + 0.25 * i);
  JointDist j = j0();
  Dist p({0.7, 0.2, 0.1});
  for (Family f : all_families()) {
    ExponentInput in = family_needs_joint(f) ? ExponentInput(j) : ExponentInput(p);
    std::vector<double> g = grid;
    if (f == Family::ir || f == Family::split || f == Family::comp_classical ||
        f == Family::comp_blind || f == Family::mutual_trace || f == Family::pa)
      for (double& r : g) r += 0.5;  // these families take r >= 0
    ExponentCurve c = exponent_curve(f, in, g);
    EXPECT_TRUE(c.monotone) << family_name(f);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const ExponentValue& v = c.values[i];
      EXPECT_GE(v.value, -1e-12) << family_name(f);
      EXPECT_NEAR(replay(f, in, g[i], v.witness.param), v.value, 1e-8)
          << family_name(f) << " r=" << g[i];
    }
  }
}
