#pragma once

#include <span>

#include "scx/dist.hpp"

namespace scx {

// All quantities are in bits. Orders with |alpha - 1| < kAlphaOneBand are
// evaluated at their alpha = 1 limits.
inline constexpr double kAlphaOneBand = 1e-6;

inline bool near_one(double alpha) {
  return alpha > 1.0 - kAlphaOneBand && alpha < 1.0 + kAlphaOneBand;
}

double shannon_entropy(const Dist& p);
double shannon_entropy(std::span<const double> p);

// alpha in [0, inf]; alpha = inf gives the min-entropy.
double renyi_entropy(const Dist& p, double alpha);
double renyi_entropy(std::span<const double> p, double alpha);

// +inf when supp t is not inside supp p.
double relative_entropy(const Dist& t, const Dist& p);
double relative_entropy(std::span<const double> t, std::span<const double> p);

// Petz divergence of a (possibly subnormalized) p against an arbitrary
// nonnegative q, including the -log(sum p)/(alpha-1) term. +inf when
// alpha > 1 and supp p is not inside supp q, or alpha < 1 and the supports
// are disjoint.
double petz_divergence_classical(std::span<const double> p,
                                 std::span<const double> q, double alpha);
double petz_divergence_classical(const Dist& p, const Dist& q, double alpha);

// H(A|R) and I(R:A) for rows R, columns A.
double cond_entropy(const JointDist& j);
double mutual_info(const JointDist& j);

// (1/(1-alpha)) log sum_x p(x) sum_a p(a|x)^alpha; alpha in [0, inf).
double petz_cond_entropy_bar(const JointDist& j, double alpha);

struct MutualInfo {
  double value;
  Dist sigma;
};

// min over sigma of D_alpha(p_RA || p_R x sigma), alpha in [0, inf).
MutualInfo petz_mutual_info(const JointDist& j, double alpha);

// Closed-form value alone; used inside exponent searches.
double sibson_mutual_info(const JointDist& j, double alpha);

// D_alpha(p_RA || p_R x sigma) evaluated directly.
double mutual_info_objective(const JointDist& j, const Dist& sigma,
                             double alpha);

// sum_x t(x) H_alpha(p(.|x)).
double expected_cond_renyi(const JointDist& j, const Dist& t, double alpha);

// Entrywise p(x) * sigma(a) as a flat row-major vector.
std::vector<double> product_with(const Dist& r, const Dist& sigma);

}  // namespace scx
