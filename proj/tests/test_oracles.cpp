#include <gtest/gtest.h>

#include <cmath>

#include "scx/logmath.hpp"
#include "scx/oracles.hpp"

using namespace scx;

namespace {

VerifyOptions quick() {
  VerifyOptions o;
  o.scale = 0.3;
  o.lemmas = false;
  o.duality = false;
  return o;
}

bool passes(const std::vector<OracleReport>& rs, const std::string& target) {
  for (const auto& r : rs)
    if (r.target == target) return r.pass;
  ADD_FAILURE() << "no report for " << target;
  return false;
}

}  // namespace

TEST(Smoothings, UniformTrace) {
  JointDist u = JointDist::from_rows({{0.25, 0.25}, {0.25, 0.25}});
  SmoothingSearch s = enumerate_smoothings(u, 2.0);
  EXPECT_GE(s.trace, 0.5 - 1e-12);
  EXPECT_LE(s.trace, 0.5 + 1e-3);
  SmoothingSearch free = enumerate_smoothings(u, -3.0);
  EXPECT_LE(free.trace, 1e-3);
  EXPECT_LE(free.purified, 1e-3);
}

TEST(Smoothings, BracketKkt) {
  CounterRng rng(51);
  for (int i = 0; i < 20; ++i) {
    JointDist j = random_joint(rng, 2, 2 + rng.below(2));
    double l = 2 * rng.uniform();
    double kkt = eps_P_cond_classical(j, l).value;
    SmoothingSearch s = enumerate_smoothings(j, l, 1000, i + 1);
    EXPECT_GE(s.purified, kkt - 1e-9);
    EXPECT_LE(s.purified, kkt + 1e-3);
  }
}

TEST(Exhaustive, Counts) {
  Dist p({0.75, 0.25});
  EXPECT_EQ(exhaustive_functions_min(p, 1, 2).searched, 4u);
  FunctionOptimum z1 = exhaustive_functions_min(p, 2, 1);
  EXPECT_EQ(z1.searched, 1u);
  EXPECT_NEAR(z1.performance, 0.0, 1e-15);
  EXPECT_THROW(exhaustive_functions_min(p, 5, 4), BudgetExceeded);
}

TEST(Exhaustive, UniformN2BeatsConstructions) {
  Dist u = Dist::uniform(2);
  FunctionOptimum best = exhaustive_functions_min(u, 2, 2);
  for (const TypeVector& t : enumerate_types(2, 2)) {
    int c = ir_case(u, 2, 2, t);
    if (c == 0) continue;
    IrConstruction ir = ir_construct(u, 2, 2, t, c);
    EXPECT_LE(best.performance, ir_performance(u, 2, ir.f) + 1e-15);
  }
}

TEST(Brute, NOneMatchesSingleCopy) {
  CounterRng rng(52);
  for (int i = 0; i < 10; ++i) {
    JointDist j = random_joint(rng, 2, 2);
    EXPECT_NEAR(brute_iid_smoothing(j, 1, 0.4).value, eps_d_cond_classical(j, 0.4).value, 1e-14);
  }
  JointDist u = JointDist::from_rows({{0.25, 0.25}, {0.25, 0.25}});
  EXPECT_NEAR(brute_iid_smoothing(u, 4, 0.9).value, 0.0, 1e-15);
}

TEST(Verify, CleanRunPasses) {
  for (const OracleReport& r : run_verification_suite(quick()))
    EXPECT_TRUE(r.pass) << r.target << " gap " << r.gap << " at " << r.instance;
}

TEST(Verify, DetectsPerturbedClosedForms) {
  VerifyOptions o = quick();
  o.hooks.cond_iid = [](const JointDist& j, int n, double r) {
    OneShotResult v = eps_d_cond_iid(j, n, r);
    v.value += 1e-6;
    return v;
  };
  o.hooks.kkt = [](const JointDist& j, double l) {
    OneShotResult v = eps_P_cond_classical(j, l);
    v.value *= 0.99;
    return v;
  };
  o.hooks.gibbs = [](const Dist& p, std::span<const double> g, double c) {
    GibbsTilt t = gibbs_tilt_min(p, g, c);
    t.value -= 0.01;
    return t;
  };
  auto rs = run_verification_suite(o);
  EXPECT_FALSE(passes(rs, "eps_d_cond_iid~brute_iid_smoothing"));
  EXPECT_FALSE(passes(rs, "eps_P_cond_classical(KKT)~enumerate_smoothings(purified)"));
  EXPECT_FALSE(passes(rs, "gibbs_tilt_min~simplex_grid(m=400)"));
  // untouched pairings still pass
  EXPECT_TRUE(passes(rs, "eps_d_mutual_classical(LP)~subgradient"));
  EXPECT_TRUE(passes(rs, "sibson_mutual_info~simplex_grid(m=400)"));
}

TEST(Verify, DetectsPerturbedLp) {
  VerifyOptions o = quick();
  o.hooks.mutual_lp = [](const JointDist& j, double l) {
    OneShotResult v = eps_d_mutual_classical(j, l);
    v.value += 1e-4;
    return v;
  };
  EXPECT_FALSE(passes(run_oracle_pairings(o), "eps_d_mutual_classical(LP)~subgradient"));
}

TEST(Verify, Deterministic) {
  auto a = run_oracle_pairings(quick()), b = run_oracle_pairings(quick());
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].gap, b[i].gap);
    EXPECT_EQ(a[i].instance, b[i].instance);
  }
}
