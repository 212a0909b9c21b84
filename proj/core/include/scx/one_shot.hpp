#pragma once

#include <optional>
#include <utility>

#include "scx/dist.hpp"

namespace scx {

enum class BoundKind { exact, upper, lower };

const char* to_string(BoundKind k);

struct OneShotResult {
  double value;           // epsilon in [0, 1]
  double log2_one_minus;  // log2(1 - epsilon), computed without cancellation
  BoundKind bound_kind;
  // Certificate: the subnormalized smoothed joint, row-major (conditional
  // problems), or the reference sigma (mutual problems). Absent for n-fold
  // results.
  std::optional<std::vector<double>> smoothed;
  std::optional<Dist> sigma;

  // -(1/n) log2(1 - epsilon).
  double rate(int n) const { return -log2_one_minus / n; }
};

// Trace-distance smoothing with marginal cap: sum (p(x,a) - 2^-lambda p(x))_+.
OneShotResult eps_d_cond_classical(const JointDist& j, double lambda);

// The same program on p^{(x)n} at lambda = n r, aggregated over joint types.
OneShotResult eps_d_cond_iid(const JointDist& j, int n, double r);

// min over sigma of sum (p(x,a) - 2^lambda p(x) sigma(a))_+, lambda >= 0, as an LP.
OneShotResult eps_d_mutual_classical(const JointDist& j, double lambda);

// sum (p - 2^lambda p_R sigma)_+ at a fixed sigma (the LP objective).
double eps_d_mutual_objective(const JointDist& j, const Dist& sigma, double lambda);

// Fixed product reference sigma^{(x)n}; an upper bound on the n-fold epsilon.
OneShotResult eps_d_mutual_iid_fixed_sigma(const JointDist& j, const Dist& sigma,
                                           int n, double r);

// Purified-distance smoothing: per-row KKT clip-and-renormalize.
OneShotResult eps_P_cond_classical(const JointDist& j, double lambda);

struct PureBounds {
  OneShotResult lower;  // lower bound on epsilon^P (from the fidelity upper bound)
  OneShotResult upper;  // upper bound on epsilon^P
  double log2_b;        // log2 B_n
};

PureBounds eps_P_cond_pure_bounds(const SchmidtState& s, int n, double r);

// Two-sided conversions eps_d <= eps_P <= sqrt(eps_d) for pure states.
std::pair<double, double> purified_bounds_from_trace(double eps_d);
std::pair<double, double> trace_bounds_from_purified(double eps_p);

}  // namespace scx
