#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "scx/dist.hpp"
#include "scx/matrix.hpp"

namespace scx {

// Which 1-D parameter the witness carries:
//   alpha: Renyi order; s: Lagrange weight of |x|^+ in [0, 1];
//   u: (beta - 1) / beta, so beta = 1 / (1 - u).
enum class Param { alpha, s, u };

const char* to_string(Param p);

struct Witness {
  Param kind;
  double param;
  std::optional<Dist> tilt;  // t* (or q*) where the family has one
};

struct ExponentValue {
  double value;
  Witness witness;
  // The other closed form of the same exponent, where the family has two.
  std::optional<double> dual_value;
};

// min over t of c D(t||p) + sum_x t(x) g(x), attained at t* ~ p 2^{-g/c}.
struct GibbsTilt {
  double value;
  Dist t;
};
GibbsTilt gibbs_tilt_min(const Dist& p, std::span<const double> g, double c);
// The objective above at an arbitrary t.
double tilt_objective(const Dist& t, const Dist& p, std::span<const double> g,
                      double c);

// Conditional / trace distance, classical input.
ExponentValue exp_cond_trace_classical(const JointDist& j, double r);
double cond_trace_objective(const JointDist& j, double r, double alpha);

// Mutual / trace distance, classical input.
ExponentValue exp_mutual_trace_classical(const JointDist& j, double r);
double mutual_trace_objective(const JointDist& j, double r, double alpha);

// Conditional / purified distance (the privacy-amplification exponent).
ExponentValue exp_cond_purified_classical(const JointDist& j, double r);
double cond_purified_objective(const JointDist& j, double r, double alpha);
Dist cond_purified_tilt(const JointDist& j, double r, double alpha);

// The same exponent as an infimum over (t, tau^x), evaluated at the tilted
// saddle point of the s-parameterized dual.
ExponentValue exp_cond_purified_variational(const JointDist& j, double r);
double cond_purified_dual_objective(const JointDist& j, double r, double s);
// Raw variational objective at the (t, tau) tilted by s.
double cond_purified_variational_at(const JointDist& j, double r, double s);

// Pure states, conditional family: sup form in s with dual_value holding the
// infimum form evaluated at the tilt.
ExponentValue exp_cond_pure(const SchmidtState& st, double r);
double cond_pure_objective(const Dist& p, double r, double s);
double cond_pure_inf_form_at(const Dist& p, double r, double s);

// Pure states, mutual family, in u = (beta - 1) / beta.
ExponentValue exp_mutual_pure(const SchmidtState& st, double r);
double mutual_pure_objective(const Dist& p, double r, double u);

// Lower bound on the mutual exponent of an arbitrary bipartite state on
// (dr x da), using the sandwiched conditional entropy H*_alpha(R|A).
ExponentValue exp_mutual_lower_bound_general(const HermitianOp& rho_ra, int dr,
                                             int da, double r,
                                             int grid_points = 41);
double mutual_lower_bound_objective(const HermitianOp& rho_ra, int dr, int da,
                                    double r, double alpha);

// Intrinsic randomness: alpha form and the variational infimum over q.
ExponentValue exp_intrinsic_randomness(const Dist& p, double r);
double intrinsic_objective(const Dist& p, double r, double alpha);
ExponentValue exp_intrinsic_variational(const Dist& p, double r);
double intrinsic_variational_at(const Dist& p, double r, double s);

ExponentValue exp_state_splitting(const JointDist& j, double r);

ExponentValue exp_classical_compression(const Dist& p, double r);
double compression_objective(const Dist& p, double r, double u);
ExponentValue exp_blind_compression(const Dist& p, double r);

// Comparison forms: the classical-state formulas specialized to a pure state.
// Conditional: inf over t of D(t||p) + |r + H(t) + D(t||p)|^+ (value), with
// dual_value = sup over alpha of (1 - alpha)(r + H_{2-alpha}(p)).
ExponentValue exp_cond_trace_pure_comparison(const SchmidtState& st, double r);
double comparison_cond_objective(const Dist& p, double r, double s);
double comparison_cond_inf_form_at(const Dist& p, double r, double s);
double comparison_cond_alpha_objective(const Dist& p, double r, double alpha);
// Mutual: sup over u of u (2 H_{2 beta - 1}(p) - r) (value), with dual_value =
// sup over alpha of (1 - alpha)(I_alpha - r) using the pure-state
// I_alpha = 2 H_{2/alpha - 1}(p).
ExponentValue exp_mutual_trace_pure_comparison(const SchmidtState& st, double r);
double comparison_mutual_objective(const Dist& p, double r, double u);
double comparison_mutual_alpha_objective(const Dist& p, double r, double alpha);

// Family registry shared by curve sweeps and the command line.
enum class Family {
  cond_trace,
  mutual_trace,
  cond_purified,
  cond_pure,
  mutual_pure,
  ir,
  pa,
  split,
  comp_classical,
  comp_blind,
  comparison_cond,
  comparison_mutual,
};

std::optional<Family> parse_family(const std::string& name);
const char* family_name(Family f);
std::vector<Family> all_families();
bool family_needs_joint(Family f);
// +1: nondecreasing in r, -1: nonincreasing in r.
int family_direction(Family f);

using ExponentInput = std::variant<Dist, JointDist>;

ExponentValue evaluate(Family f, const ExponentInput& in, double r);
// Plug a witness parameter back into the family's raw objective.
double replay(Family f, const ExponentInput& in, double r, double param);

struct ExponentCurve {
  Family family;
  std::vector<double> r;
  std::vector<ExponentValue> values;
  bool monotone;
};

ExponentCurve exponent_curve(Family f, const ExponentInput& in,
                             const std::vector<double>& r_grid);

}  // namespace scx
