#pragma once

#include <cstdint>
#include <vector>

#include "scx/dist.hpp"
#include "scx/types.hpp"

namespace scx {

inline constexpr std::uint64_t kSequenceBudget = 10'000'000;
inline constexpr std::uint64_t kFunctionBudget = 100'000'000;

// Number of length-n sequences over k symbols; throws past the budget.
std::uint64_t sequence_count(std::size_t k, int n,
                             std::uint64_t budget = kSequenceBudget);
// Sequence index -> symbols, first symbol most significant.
std::vector<int> decode_sequence(std::uint64_t index, std::size_t k, int n);

// Total map from sequence indices to symbols 0..zsize-1.
class FiniteFunction {
 public:
  FiniteFunction(std::uint32_t zsize, std::vector<std::uint32_t> table);

  std::size_t domain_size() const { return table_.size(); }
  std::uint32_t zsize() const { return zsize_; }
  std::uint32_t operator()(std::uint64_t i) const { return table_[i]; }
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  std::uint32_t zsize_;
  std::vector<std::uint32_t> table_;
};

// Pushforward of p^n through f.
Dist apply_hash(const Dist& p, const FiniteFunction& f, int n);
// Pushforward of j^n through f acting on the column sequences; rows are R^n.
JointDist apply_hash(const JointDist& j, const FiniteFunction& f, int n);

// Purified distance of the hashed state to p_R^n x uniform(Z).
double pa_performance(const JointDist& j, const FiniteFunction& f, int n);
// Fidelity version of the same comparison.
double pa_fidelity(const JointDist& j, const FiniteFunction& f, int n);

struct FunctionOptimum {
  FiniteFunction f;
  double performance;
  std::uint64_t searched;
};

// Minimum of pa_performance over all |Z|^{|A|^n} functions.
FunctionOptimum pa_exhaustive_min(const JointDist& j, int n, std::uint32_t zsize);

// Upper bound on the hashed fidelity at order alpha in (1/2, 1):
// sum over R-types t of P(t) 2^{((1-alpha)/(2 alpha))(n E_t H_alpha(p(.|x)) - log2 |Z|)}.
double pa_fidelity_bound(const JointDist& j, int n, std::uint32_t zsize,
                         double alpha);

// Sequences of the class of t in lexicographic order, then every other
// sequence in lexicographic order.
std::vector<std::uint64_t> ir_sequence_order(std::size_t k, int n,
                                             const TypeVector& t);

// Case 1: |T_t| < |Z| and p^n(x) < 1/|Z| on T_t; case 2: |T_t| >= |Z| and
// p^n(x) < 1/|Z|; case 3: p^n(x) >= 1/|Z|. Returns 0 when none applies.
int ir_case(const Dist& p, int n, std::uint32_t zsize, const TypeVector& t);

struct IrConstruction {
  FiniteFunction f;
  int which;
  std::uint64_t class_size;
  std::uint64_t m;  // case 2 block length
  std::uint64_t k;  // case 2 block count
  bool clamped;     // case 1 indices clamped at the last symbol
};

IrConstruction ir_construct(const Dist& p, int n, std::uint32_t zsize,
                            const TypeVector& t, int which);

// Trace distance of the pushforward of p^n to uniform(Z).
double ir_performance(const Dist& p, int n, const FiniteFunction& f);

// Lower bound on 1 - d promised for the case construction:
// (n+1)^{-|X|} 2^{-n D(t||p)} for cases 1-2, (n+1)^{-|X|} 2^{n H(t)} / |Z| for case 3.
double ir_case_bound(const Dist& p, int n, std::uint32_t zsize, const TypeVector& t,
                     int which);

struct SplitParams {
  double k_bits;  // K_n
  double r_bits;  // R_n
  double rate;    // r (0 when built from raw bits)
  int n;
  double lambda;
  std::uint64_t copies;  // 2^{R_n}

  double bits_communicated() const;
};

// K_n = log2(2^{nr} - 1) - log2 n, R_n = K_n + log2 n. Throws when K_n < 0 or
// 2^{nr} is not an integer.
SplitParams split_params(int n, double r);
SplitParams split_params_from_bits(double k_bits, double r_bits);

// P''(x, y) = P_X(x) ((1 - lambda) P'(y|x) + lambda q(y)); throws if
// P' > 2^K P_X x q anywhere.
JointDist split_exact_output(const JointDist& pprime, const Dist& q,
                             const SplitParams& params);

struct SplitSimulation {
  JointDist empirical;
  // Slot i - 1 counts acceptances at copy i; the last slot counts failures.
  std::vector<std::uint64_t> index_counts;
  std::uint64_t failures;
  std::uint64_t trials;
  std::uint64_t seed;
  double failure_rate() const { return static_cast<double>(failures) / trials; }
};

SplitSimulation split_simulate(const JointDist& pprime, const Dist& q,
                               const SplitParams& params, std::uint64_t seed,
                               std::uint64_t trials);

double total_variation(const JointDist& a, const JointDist& b);
double total_variation(const Dist& a, const Dist& b);

}  // namespace scx
