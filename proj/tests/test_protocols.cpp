#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "scx/logmath.hpp"
#include "scx/entropy.hpp"
#include "scx/one_shot.hpp"
#include "scx/oracles.hpp"
#include "scx/protocols.hpp"

using namespace scx;

namespace {

JointDist corr_bit() { return JointDist::from_rows({{0.5, 0.0}, {0.0, 0.5}}); }

FiniteFunction identity_fn(std::uint32_t size) {
  std::vector<std::uint32_t> t(size);
  std::iota(t.begin(), t.end(), 0u);
  return FiniteFunction(size, t);
}

}  // namespace

TEST(Sequences, Decode) {
  EXPECT_EQ(sequence_count(3, 4), 81u);
  EXPECT_EQ(decode_sequence(5, 2, 3), (std::vector<int>{1, 0, 1}));
  EXPECT_THROW(sequence_count(4, 20), BudgetExceeded);
}

TEST(Hash, Pushforward) {
  Dist p({0.3, 0.7});
  Dist same = apply_hash(p, identity_fn(4), 2);
  EXPECT_NEAR(same[3], 0.49, 1e-15);
  Dist pt = apply_hash(p, FiniteFunction(3, {2, 2, 2, 2}), 2);
  EXPECT_NEAR(pt[2], 1.0, 1e-15);
  // parity of three fair bits
  std::vector<std::uint32_t> par(8);
  for (std::uint32_t i = 0; i < 8; ++i) par[i] = __builtin_popcount(i) & 1;
  Dist u = apply_hash(Dist::uniform(2), FiniteFunction(2, par), 3);
  EXPECT_NEAR(u[0], 0.5, 1e-15);
}

TEST(Pa, Performance) {
  JointDist j = JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}});
  EXPECT_NEAR(pa_performance(j, FiniteFunction(1, {0, 0}), 1), 0.0, 1e-12);
  EXPECT_NEAR(pa_performance(corr_bit(), identity_fn(2), 1), std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(pa_fidelity(corr_bit(), identity_fn(2), 1), 1 / std::sqrt(2.0), 1e-12);
}

TEST(Pa, NotBelowOneShotSmoothing) {
  CounterRng rng(41);
  for (int i = 0; i < 10; ++i) {
    JointDist j = random_joint(rng, 2, 2);
    for (int n : {1, 2}) {
      FunctionOptimum best = pa_exhaustive_min(j, n, 2);
      double eps = eps_P_cond_classical(j.tensor_power(n), 1.0).value;
      EXPECT_GE(best.performance, eps - 1e-12);
    }
  }
}

TEST(Pa, Exhaustive) {
  FunctionOptimum one = pa_exhaustive_min(JointDist::product(Dist::uniform(2), Dist::uniform(2)), 1, 2);
  EXPECT_EQ(one.searched, 4u);
  EXPECT_NEAR(one.performance, 0.0, 1e-12);
  EXPECT_NE(one.f(0), one.f(1));
  FunctionOptimum z1 = pa_exhaustive_min(corr_bit(), 2, 1);
  EXPECT_NEAR(z1.performance, 0.0, 1e-12);
}

TEST(Pa, ConverseBound) {
  CounterRng rng(42);
  for (int i = 0; i < 5; ++i) {
    JointDist j = random_joint(rng, 2, 2);
    FunctionOptimum best = pa_exhaustive_min(j, 2, 2);
    double f = pa_fidelity(j, best.f, 2);
    for (double a : {0.55, 0.7, 0.9}) EXPECT_LE(f, pa_fidelity_bound(j, 2, 2, a) + 1e-12);
  }
  EXPECT_THROW(pa_fidelity_bound(corr_bit(), 1, 2, 0.4), InvalidInput);
}

TEST(Ir, Case2Arithmetic) {
  Dist u = Dist::uniform(2);
  TypeVector t({2, 2});
  ASSERT_EQ(ir_case(u, 4, 4, t), 2);
  IrConstruction c = ir_construct(u, 4, 4, t, 2);
  EXPECT_EQ(c.m, 4u);
  EXPECT_EQ(c.class_size, 6u);
  EXPECT_GE(1 - ir_performance(u, 4, c.f), ir_case_bound(u, 4, 4, t, 2));
}

TEST(Ir, Case3InjectiveOnClass) {
  Dist p({0.75, 0.25});
  TypeVector t({3, 1});
  ASSERT_EQ(ir_case(p, 4, 16, t), 3);
  IrConstruction c = ir_construct(p, 4, 16, t, 3);
  std::set<std::uint32_t> images;
  for (std::uint64_t s : ir_sequence_order(2, 4, t)) {
    if (images.size() == c.class_size) break;
    images.insert(c.f(s));
  }
  EXPECT_EQ(images.size(), 4u);
  EXPECT_GE(1 - ir_performance(p, 4, c.f), ir_case_bound(p, 4, 16, t, 3));
}

TEST(Ir, Case1Bound) {
  Dist p({0.75, 0.25});
  TypeVector t({1, 5});
  ASSERT_EQ(ir_case(p, 6, 16, t), 1);
  IrConstruction c = ir_construct(p, 6, 16, t, 1);
  EXPECT_TRUE(c.clamped);  // 64 sequences onto 16 symbols: the tail shares the last one
  EXPECT_GE(1 - ir_performance(p, 6, c.f), ir_case_bound(p, 6, 16, t, 1));
}

TEST(Ir, Performance) {
  EXPECT_NEAR(ir_performance(Dist::uniform(2), 3, identity_fn(8)), 0.0, 1e-15);
  EXPECT_NEAR(ir_performance(Dist({0.3, 0.7}), 2, FiniteFunction(2, {0, 0, 0, 0})), 0.5, 1e-15);
}

TEST(Ir, ExhaustiveAtLeastFormulaBound) {
  Dist u = Dist::uniform(2);
  FunctionOptimum best = exhaustive_functions_min(u, 2, 2);
  EXPECT_NEAR(best.performance, 0.0, 1e-15);
  EXPECT_LE(best.performance, 1 - std::exp2(-2 * exp_intrinsic_randomness(u, 0.5).value) + 1e-12);
}

TEST(Split, Params) {
  SplitParams s = split_params_from_bits(2, 4);
  EXPECT_NEAR(s.lambda, std::pow(0.75, 16), 1e-15);
  EXPECT_NEAR(s.lambda, 0.01002259576, 1e-11);
  EXPECT_NEAR(s.bits_communicated(), std::log2(17.0), 1e-15);
  for (int n = 5; n <= 20; ++n) EXPECT_LE(split_params(n, 1.0).lambda, std::exp2(-n)) << n;
  EXPECT_THROW(split_params(3, 0.4), InvalidInput);
}

TEST(Split, ExactOutputEndpoints) {
  JointDist pp = JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}});
  Dist q = pp.marginal_cols();
  SplitParams s = split_params_from_bits(2, 4);
  s.lambda = 0.0;
  EXPECT_LE(total_variation(split_exact_output(pp, q, s), pp), 1e-15);
  s.lambda = 1.0;
  JointDist prod = JointDist::product(pp.marginal_rows(), q);
  EXPECT_LE(total_variation(split_exact_output(pp, q, s), prod), 1e-15);
  SplitParams tight = split_params_from_bits(0, 4);
  EXPECT_THROW(split_exact_output(pp, q, tight), InvalidInput);
}

TEST(Split, FirstDrawGeometric) {
  // deterministic P'(.|x) and uniform q: each draw accepts with probability 2^-K
  JointDist pp = JointDist::from_rows({{0.5, 0, 0, 0}, {0.5, 0, 0, 0}});
  SplitParams s = split_params_from_bits(2, 4);
  SplitSimulation sim = split_simulate(pp, Dist::uniform(4), s, 7, 100000);
  double p1 = static_cast<double>(sim.index_counts[0]) / sim.trials;
  EXPECT_NEAR(p1, 0.25, 4 * std::sqrt(0.25 * 0.75 / 1e5));
  double p2 = static_cast<double>(sim.index_counts[1]) / sim.trials;
  EXPECT_NEAR(p2, 0.1875, 4 * std::sqrt(0.1875 * 0.8125 / 1e5));
}

TEST(Split, FailureRateAndDeterminism) {
  JointDist pp = JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}});
  Dist q = pp.marginal_cols();
  SplitParams s = split_params_from_bits(2, 4);
  SplitSimulation a = split_simulate(pp, q, s, 2024, 100000);
  double sd = std::sqrt(s.lambda * (1 - s.lambda) / 1e5);
  EXPECT_NEAR(a.failure_rate(), s.lambda, 3 * sd);
  SplitSimulation b = split_simulate(pp, q, s, 2024, 100000);
  EXPECT_EQ(a.empirical.data(), b.empirical.data());
  EXPECT_EQ(a.index_counts, b.index_counts);
}
