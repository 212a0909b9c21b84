#include <benchmark/benchmark.h>

#include "scx/entropy.hpp"
#include "scx/exponents.hpp"
#include "scx/one_shot.hpp"
#include "scx/protocols.hpp"
#include "scx/types.hpp"

using namespace scx;

namespace {

JointDist j0() { return JointDist::from_rows({{0.4, 0.1}, {0.2, 0.3}}); }

void BM_TypeStream(benchmark::State& st) {
  const int k = 4, n = static_cast<int>(st.range(0));
  std::vector<int> c;
  for (auto _ : st) {
    TypeStream s(k, n);
    std::uint64_t count = 0;
    while (s.next(c)) ++count;
    benchmark::DoNotOptimize(count);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(type_count(k, n)));
}
BENCHMARK(BM_TypeStream)->Arg(50)->Arg(100)->Arg(200);

void BM_CondIid(benchmark::State& st) {
  JointDist j = j0();
  double r = cond_entropy(j) + 0.5;
  const int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(eps_d_cond_iid(j, n, r));
}
BENCHMARK(BM_CondIid)->Arg(25)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_MutualLp(benchmark::State& st) {
  JointDist j = JointDist::from_rows({{0.10, 0.05, 0.15}, {0.02, 0.20, 0.08}, {0.12, 0.03, 0.25}});
  for (auto _ : st) benchmark::DoNotOptimize(eps_d_mutual_classical(j, 0.3));
}
BENCHMARK(BM_MutualLp);

void BM_Exponent(benchmark::State& st) {
  Family f = static_cast<Family>(st.range(0));
  st.SetLabel(family_name(f));
  ExponentInput in = family_needs_joint(f) ? ExponentInput(j0()) : ExponentInput(Dist({0.7, 0.3}));
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(f, in, 0.6));
}
BENCHMARK(BM_Exponent)->DenseRange(0, static_cast<int>(Family::comparison_mutual))->Unit(benchmark::kMicrosecond);

void BM_IrPerformance(benchmark::State& st) {
  Dist p({0.75, 0.25});
  const int n = static_cast<int>(st.range(0));
  TypeVector t({n / 2, n - n / 2});
  std::uint32_t z = 1u << (n / 2);
  IrConstruction c = ir_construct(p, n, z, t, ir_case(p, n, z, t));
  for (auto _ : st) benchmark::DoNotOptimize(ir_performance(p, n, c.f));
}
BENCHMARK(BM_IrPerformance)->Arg(8)->Arg(12)->Arg(16);

void BM_SplitSimulate(benchmark::State& st) {
  JointDist pp = j0();
  SplitParams s = split_params_from_bits(2, 4);
  for (auto _ : st) benchmark::DoNotOptimize(split_simulate(pp, pp.marginal_cols(), s, 1, 10000));
  st.SetItemsProcessed(st.iterations() * 10000);
}
BENCHMARK(BM_SplitSimulate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
