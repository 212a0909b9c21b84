#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scx/dist.hpp"
#include "scx/entropy.hpp"
#include "scx/exponents.hpp"
#include "scx/matrix.hpp"
#include "scx/one_shot.hpp"
#include "scx/optimize.hpp"
#include "scx/protocols.hpp"
#include "scx/rng.hpp"

namespace scx {

// Random instances. Weights are normalized exponentials, so every entry is
// strictly positive.
Dist random_dist(CounterRng& rng, std::size_t k);
JointDist random_joint(CounterRng& rng, std::size_t rows, std::size_t cols);
// G G^dag / tr for a complex Gaussian G, scaled to the requested trace.
HermitianOp random_state(CounterRng& rng, int d, double trace = 1.0);
CVector random_pure_vector(CounterRng& rng, int d);

struct GridMin {
  double value;
  std::vector<double> argmin;
  std::uint64_t points;
};

// Minimum over {c / m : c a composition of m into k parts}; k <= 4.
GridMin simplex_grid_min(const std::function<double(std::span<const double>)>& objective,
                         int k, int m);

struct SmoothingSearch {
  double trace;     // min generalized trace distance found
  double purified;  // min purified distance found
  std::vector<double> trace_q;
  std::vector<double> purified_q;
};

// Random feasible points of {0 <= q(x,a) <= 2^-lambda p(x), sum_a q(x,a) <= p(x)}
// followed by a pattern-search polish from the best few. Every returned value
// is attained by a feasible point, so it upper-bounds the true optimum.
SmoothingSearch enumerate_smoothings(const JointDist& j, double lambda,
                                     int samples = 2000, std::uint64_t seed = 1);

// Exhaustive minimum of ir_performance over all |Z|^{|X|^n} functions.
FunctionOptimum exhaustive_functions_min(const Dist& p, int n, std::uint32_t zsize);
// The privacy-amplification analogue (pa_performance).
FunctionOptimum exhaustive_functions_min(const JointDist& j, int n, std::uint32_t zsize);

// eps^d of j^n at lambda = n r by enumeration of all (x^n, a^n) pairs.
OneShotResult brute_iid_smoothing(const JointDist& j, int n, double r);
// sum (p^n - 2^{nr} p_R^n sigma^n)_+ by enumeration.
OneShotResult brute_iid_mutual_fixed_sigma(const JointDist& j, const Dist& sigma, int n,
                                           double r);

// min over sigma of the mutual smoothing objective by projected subgradient.
MinimizeResult mutual_smoothing_subgradient(const JointDist& j, double lambda);

struct OracleReport {
  std::string target;
  std::string instance;
  double oracle_value;
  double impl_value;
  double gap;  // oracle - impl, at the worst instance
  double tol_below;
  double tol_above;
  bool pass;  // -tol_below <= gap <= tol_above
};

// Closed forms under test; tests swap in perturbed versions to confirm the
// suite notices.
struct VerifyHooks {
  std::function<OneShotResult(const JointDist&, int, double)> cond_iid = eps_d_cond_iid;
  std::function<OneShotResult(const JointDist&, double)> cond_classical =
      eps_d_cond_classical;
  std::function<OneShotResult(const JointDist&, double)> mutual_lp = eps_d_mutual_classical;
  std::function<OneShotResult(const JointDist&, double)> kkt = eps_P_cond_classical;
  std::function<GibbsTilt(const Dist&, std::span<const double>, double)> gibbs =
      gibbs_tilt_min;
  std::function<double(const JointDist&, double)> sibson = sibson_mutual_info;
};

struct VerifyOptions {
  std::uint64_t seed = 2024;
  // Scales instance counts; 1 gives the documented counts.
  double scale = 1.0;
  bool lemmas = true;
  bool duality = true;
  VerifyHooks hooks;
};

std::vector<OracleReport> run_oracle_pairings(const VerifyOptions& opt);

// Matrix inequalities on random instances; gap is the worst violation
// (positive means violated), tolerance 1e-9.
struct LemmaReport {
  std::string name;
  int instances;
  double worst_violation;
  bool pass;
};

// Each lemma check runs `instances` random cases and returns the worst
// violation (lhs - rhs for lhs <= rhs).
double lemma_discrimination(CounterRng& rng, int instances);
double lemma_hof(CounterRng& rng, int instances);
double lemma_pinched_fidelity(CounterRng& rng, int instances);
double lemma_fidelity_relative_entropy(CounterRng& rng, int instances);
double lemma_purified_vs_trace(CounterRng& rng, int instances);
double lemma_pinching(CounterRng& rng, int instances);
double lemma_operator_bipartite(CounterRng& rng, int instances);

std::vector<LemmaReport> run_lemma_suite(std::uint64_t seed, int instances = 100);

// |H*_alpha(A|B) + H*_beta(A|C)| on a random pure qubit triple, 1/alpha + 1/beta = 2.
double duality_gap(CounterRng& rng, double alpha);

std::vector<OracleReport> run_verification_suite(const VerifyOptions& opt);
std::vector<OracleReport> run_verification_suite();

}  // namespace scx
