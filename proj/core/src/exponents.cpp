#include "scx/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "scx/entropy.hpp"
#include "scx/logmath.hpp"
#include "scx/optimize.hpp"

namespace scx {

const char* to_string(Param p) {
  switch (p) {
    case Param::alpha: return "alpha";
    case Param::s: return "s";
    case Param::u: return "u";
  }
  return "?";
}

namespace {

double lg(double x) { return x > 0 ? std::log2(x) : -kInf; }

// Distribution proportional to p^e on supp p (e = 0 gives uniform on support).
Dist power_tilt(const Dist& p, double e) {
  std::vector<double> l(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) l[i] = p[i] > 0 ? e * std::log2(p[i]) : -kInf;
  double z = log2_sum_exp(l);
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = l[i] == -kInf ? 0.0 : std::exp2(l[i] - z);
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return Dist(p.labels(), std::move(w));
}

// log2 sum_x p(x)^e over supp p.
double log2_power_sum(const Dist& p, double e) {
  std::vector<double> l;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) l.push_back(e * std::log2(p[i]));
  return log2_sum_exp(l);
}

// Renyi entropy at beta = 1 / (1 - u), u in [0, 1].
double renyi_at_u(const Dist& p, double u) {
  if (u >= 1.0) return renyi_entropy(p, kInf);
  return renyi_entropy(p, 1.0 / (1.0 - u));
}

std::vector<Dist> conditionals(const JointDist& j, const Dist& pr) {
  std::vector<Dist> c;
  for (std::size_t x = 0; x < j.rows(); ++x)
    c.push_back(pr[x] > 0 ? j.conditional(x) : Dist::uniform(j.cols()));
  return c;
}

ExponentValue sup_alpha(const std::function<double(double)>& f, double lo, double hi,
                        Param kind) {
  Argmax1D m = maximize_on_interval(f, lo, hi);
  return {std::max(m.value, 0.0), {kind, m.arg, std::nullopt}, std::nullopt};
}

}  // namespace

GibbsTilt gibbs_tilt_min(const Dist& p, std::span<const double> g, double c) {
  if (g.size() != p.size()) throw InvalidInput("gibbs_tilt_min: size mismatch");
  if (!(c > 0)) throw InvalidInput("gibbs_tilt_min: c must be > 0");
  std::vector<double> l(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    l[i] = p[i] > 0 ? std::log2(p[i]) - g[i] / c : -kInf;
  double z = log2_sum_exp(l);
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) w[i] = l[i] == -kInf ? 0.0 : std::exp2(l[i] - z);
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return {-c * z, Dist(p.labels(), std::move(w))};
}

double tilt_objective(const Dist& t, const Dist& p, std::span<const double> g,
                      double c) {
  double v = c * relative_entropy(t, p);
  for (std::size_t i = 0; i < t.size(); ++i) v += t[i] * g[i];
  return v;
}

double cond_trace_objective(const JointDist& j, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  return (1 - alpha) * (r - petz_cond_entropy_bar(j, alpha));
}

ExponentValue exp_cond_trace_classical(const JointDist& j, double r) {
  return sup_alpha([&](double a) { return cond_trace_objective(j, r, a); }, 0, 1,
                   Param::alpha);
}

double mutual_trace_objective(const JointDist& j, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  return (1 - alpha) * (sibson_mutual_info(j, alpha) - r);
}

ExponentValue exp_mutual_trace_classical(const JointDist& j, double r) {
  return sup_alpha([&](double a) { return mutual_trace_objective(j, r, a); }, 0, 1,
                   Param::alpha);
}

ExponentValue exp_state_splitting(const JointDist& j, double r) {
  return exp_mutual_trace_classical(j, r);
}

namespace {

GibbsTilt cond_purified_inner(const JointDist& j, double r, double alpha) {
  Dist pr = j.marginal_rows();
  std::vector<Dist> cond = conditionals(j, pr);
  std::vector<double> g(j.rows(), 0.0);
  double k = (1 - alpha) / alpha;
  for (std::size_t x = 0; x < j.rows(); ++x)
    g[x] = k * (r - renyi_entropy(cond[x], alpha));
  return gibbs_tilt_min(pr, g, 2.0);
}

struct DualTilt {
  double value;
  Dist t;
  std::vector<Dist> tau;
};

// inf over (t, tau) of 2D(t||p_R) + E_t D(tau^x||p(.|x)) + s (r - E_t H(tau^x)).
DualTilt cond_purified_dual(const JointDist& j, double r, double s) {
  Dist pr = j.marginal_rows();
  std::vector<Dist> cond = conditionals(j, pr);
  std::vector<double> h(j.rows());
  std::vector<Dist> tau;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    // min over tau of D(tau||rho) - s H(tau) = -(1+s) log sum rho^{1/(1+s)}.
    h[x] = -(1 + s) * log2_power_sum(cond[x], 1 / (1 + s));
    tau.push_back(power_tilt(cond[x], 1 / (1 + s)));
  }
  GibbsTilt t = gibbs_tilt_min(pr, h, 2.0);
  return {t.value + s * r, t.t, std::move(tau)};
}

}  // namespace

double cond_purified_objective(const JointDist& j, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  return cond_purified_inner(j, r, alpha).value;
}

Dist cond_purified_tilt(const JointDist& j, double r, double alpha) {
  return cond_purified_inner(j, r, alpha).t;
}

ExponentValue exp_cond_purified_classical(const JointDist& j, double r) {
  ExponentValue v = sup_alpha(
      [&](double a) { return cond_purified_objective(j, r, a); }, 0.5, 1, Param::alpha);
  v.witness.tilt = cond_purified_tilt(j, r, v.witness.param);
  return v;
}

double cond_purified_dual_objective(const JointDist& j, double r, double s) {
  return cond_purified_dual(j, r, s).value;
}

double cond_purified_variational_at(const JointDist& j, double r, double s) {
  DualTilt d = cond_purified_dual(j, r, s);
  Dist pr = j.marginal_rows();
  std::vector<Dist> cond = conditionals(j, pr);
  double v = 2 * relative_entropy(d.t, pr);
  double eh = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    if (d.t[x] <= 0) continue;
    v += d.t[x] * relative_entropy(d.tau[x], cond[x]);
    eh += d.t[x] * shannon_entropy(d.tau[x]);
  }
  return v + std::max(0.0, r - eh);
}

ExponentValue exp_cond_purified_variational(const JointDist& j, double r) {
  Argmax1D m = maximize_on_interval(
      [&](double s) { return cond_purified_dual_objective(j, r, s); }, 0, 1);
  DualTilt d = cond_purified_dual(j, r, m.arg);
  return {cond_purified_variational_at(j, r, m.arg), {Param::s, m.arg, d.t},
          std::max(m.value, 0.0)};
}

double cond_pure_objective(const Dist& p, double r, double s) {
  return s * r - (2 - s) * log2_power_sum(p, 2 / (2 - s));
}

double cond_pure_inf_form_at(const Dist& p, double r, double s) {
  Dist t = power_tilt(p, 2 / (2 - s));
  return 2 * relative_entropy(t, p) + std::max(0.0, r + shannon_entropy(t));
}

ExponentValue exp_cond_pure(const SchmidtState& st, double r) {
  const Dist& p = st.schmidt;
  Argmax1D m = maximize_on_interval([&](double s) { return cond_pure_objective(p, r, s); },
                                    0, 1);
  return {std::max(m.value, 0.0), {Param::s, m.arg, power_tilt(p, 2 / (2 - m.arg))},
          cond_pure_inf_form_at(p, r, m.arg)};
}

double mutual_pure_objective(const Dist& p, double r, double u) {
  if (u <= 0) return 0.0;
  return u * (2 * renyi_at_u(p, u) - r);
}

ExponentValue exp_mutual_pure(const SchmidtState& st, double r) {
  return sup_alpha([&](double u) { return mutual_pure_objective(st.schmidt, r, u); }, 0,
                   1, Param::u);
}

double mutual_lower_bound_objective(const HermitianOp& rho_ra, int dr, int da,
                                    double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  double beta = alpha <= 0.5 ? kInf : alpha / (2 * alpha - 1);
  HermitianOp rho_r = partial_trace_b(rho_ra, dr, da);
  double hb = renyi_entropy(rho_r, beta);
  double hc = sandwiched_cond_entropy(rho_ra, dr, da, std::max(alpha, 0.5)).value;
  return (1 - alpha) / alpha * (hb - hc - r);
}

ExponentValue exp_mutual_lower_bound_general(const HermitianOp& rho_ra, int dr,
                                             int da, double r, int grid_points) {
  Argmax1D m = maximize_on_interval(
      [&](double a) { return mutual_lower_bound_objective(rho_ra, dr, da, r, a); }, 0.5,
      1.0, grid_points, 1e-7);
  return {std::max(m.value, 0.0), {Param::alpha, m.arg, std::nullopt}, std::nullopt};
}

double intrinsic_objective(const Dist& p, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  return (1 - alpha) * (r - renyi_entropy(p, alpha));
}

ExponentValue exp_intrinsic_randomness(const Dist& p, double r) {
  return sup_alpha([&](double a) { return intrinsic_objective(p, r, a); }, 0, 1,
                   Param::alpha);
}

double intrinsic_variational_at(const Dist& p, double r, double s) {
  Dist q = power_tilt(p, 1 - s);
  double d = relative_entropy(q, p);
  return d + std::max(0.0, r - shannon_entropy(q) - d);
}

ExponentValue exp_intrinsic_variational(const Dist& p, double r) {
  // inf over q of D(q||p) + s (r - H(q) - D(q||p)) = s r - log sum p^{1-s}.
  Argmax1D m = maximize_on_interval(
      [&](double s) { return s * r - log2_power_sum(p, 1 - s); }, 0, 1);
  return {intrinsic_variational_at(p, r, m.arg), {Param::s, m.arg, power_tilt(p, 1 - m.arg)},
          std::max(m.value, 0.0)};
}

double compression_objective(const Dist& p, double r, double u) {
  if (u <= 0) return 0.0;
  return u * (renyi_at_u(p, u) - r);
}

ExponentValue exp_classical_compression(const Dist& p, double r) {
  return sup_alpha([&](double u) { return compression_objective(p, r, u); }, 0, 1,
                   Param::u);
}

ExponentValue exp_blind_compression(const Dist& p, double r) {
  ExponentValue v = exp_classical_compression(p, r);
  v.value *= 2;
  return v;
}

double comparison_cond_objective(const Dist& p, double r, double s) {
  return s * r - log2_power_sum(p, 1 + s);
}

double comparison_cond_inf_form_at(const Dist& p, double r, double s) {
  Dist t = power_tilt(p, 1 + s);
  double d = relative_entropy(t, p);
  return d + std::max(0.0, r + shannon_entropy(t) + d);
}

double comparison_cond_alpha_objective(const Dist& p, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  return (1 - alpha) * (r + renyi_entropy(p, 2 - alpha));
}

ExponentValue exp_cond_trace_pure_comparison(const SchmidtState& st, double r) {
  const Dist& p = st.schmidt;
  Argmax1D m = maximize_on_interval(
      [&](double s) { return comparison_cond_objective(p, r, s); }, 0, 1);
  Argmax1D a = maximize_on_interval(
      [&](double al) { return comparison_cond_alpha_objective(p, r, al); }, 0, 1);
  return {comparison_cond_inf_form_at(p, r, m.arg), {Param::s, m.arg, power_tilt(p, 1 + m.arg)},
          std::max(a.value, 0.0)};
}

double comparison_mutual_objective(const Dist& p, double r, double u) {
  if (u <= 0) return 0.0;
  double h = u >= 1.0 ? renyi_entropy(p, kInf) : renyi_entropy(p, (1 + u) / (1 - u));
  return u * (2 * h - r);
}

double comparison_mutual_alpha_objective(const Dist& p, double r, double alpha) {
  if (alpha >= 1.0) return 0.0;
  double i = alpha <= 0.0 ? 2 * renyi_entropy(p, kInf)
                          : 2 * renyi_entropy(p, 2 / alpha - 1);
  return (1 - alpha) * (i - r);
}

ExponentValue exp_mutual_trace_pure_comparison(const SchmidtState& st, double r) {
  const Dist& p = st.schmidt;
  ExponentValue v = sup_alpha(
      [&](double u) { return comparison_mutual_objective(p, r, u); }, 0, 1, Param::u);
  Argmax1D a = maximize_on_interval(
      [&](double al) { return comparison_mutual_alpha_objective(p, r, al); }, 0, 1);
  v.dual_value = std::max(a.value, 0.0);
  return v;
}

namespace {

struct FamilyInfo {
  Family f;
  const char* name;
  bool joint;
  int direction;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::cond_trace, "cond-trace", true, +1},
    {Family::mutual_trace, "mutual-trace", true, -1},
    {Family::cond_purified, "cond-purified", true, +1},
    {Family::cond_pure, "cond-pure", false, +1},
    {Family::mutual_pure, "mutual-pure", false, -1},
    {Family::ir, "ir", false, +1},
    {Family::pa, "pa", true, +1},
    {Family::split, "split", true, -1},
    {Family::comp_classical, "comp-classical", false, -1},
    {Family::comp_blind, "comp-blind", false, -1},
    {Family::comparison_cond, "comparison-cond", false, +1},
    {Family::comparison_mutual, "comparison-mutual", false, -1},
};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies)
    if (i.f == f) return i;
  throw InvalidInput("unknown family");
}

const JointDist& as_joint(Family f, const ExponentInput& in) {
  if (const auto* j = std::get_if<JointDist>(&in)) return *j;
  throw InvalidInput(std::string("family ") + family_name(f) +
                     " needs a joint distribution input");
}

const Dist& as_dist(Family f, const ExponentInput& in) {
  if (const auto* d = std::get_if<Dist>(&in)) return *d;
  throw InvalidInput(std::string("family ") + family_name(f) +
                     " needs a single distribution input");
}

}  // namespace

std::optional<Family> parse_family(const std::string& name) {
  for (const auto& i : kFamilies)
    if (name == i.name) return i.f;
  return std::nullopt;
}

const char* family_name(Family f) { return info(f).name; }

std::vector<Family> all_families() {
  std::vector<Family> v;
  for (const auto& i : kFamilies) v.push_back(i.f);
  return v;
}

bool family_needs_joint(Family f) { return info(f).joint; }
int family_direction(Family f) { return info(f).direction; }

ExponentValue evaluate(Family f, const ExponentInput& in, double r) {
  switch (f) {
    case Family::cond_trace: return exp_cond_trace_classical(as_joint(f, in), r);
    case Family::mutual_trace: return exp_mutual_trace_classical(as_joint(f, in), r);
    case Family::cond_purified:
    case Family::pa: return exp_cond_purified_classical(as_joint(f, in), r);
    case Family::split: return exp_state_splitting(as_joint(f, in), r);
    case Family::cond_pure: return exp_cond_pure(SchmidtState(as_dist(f, in)), r);
    case Family::mutual_pure: return exp_mutual_pure(SchmidtState(as_dist(f, in)), r);
    case Family::ir: return exp_intrinsic_randomness(as_dist(f, in), r);
    case Family::comp_classical: return exp_classical_compression(as_dist(f, in), r);
    case Family::comp_blind: return exp_blind_compression(as_dist(f, in), r);
    case Family::comparison_cond:
      return exp_cond_trace_pure_comparison(SchmidtState(as_dist(f, in)), r);
    case Family::comparison_mutual:
      return exp_mutual_trace_pure_comparison(SchmidtState(as_dist(f, in)), r);
  }
  throw InvalidInput("unknown family");
}

double replay(Family f, const ExponentInput& in, double r, double param) {
  switch (f) {
    case Family::cond_trace: return cond_trace_objective(as_joint(f, in), r, param);
    case Family::mutual_trace:
    case Family::split: return mutual_trace_objective(as_joint(f, in), r, param);
    case Family::cond_purified:
    case Family::pa: return cond_purified_objective(as_joint(f, in), r, param);
    case Family::cond_pure: return cond_pure_objective(as_dist(f, in), r, param);
    case Family::mutual_pure: return mutual_pure_objective(as_dist(f, in), r, param);
    case Family::ir: return intrinsic_objective(as_dist(f, in), r, param);
    case Family::comp_classical: return compression_objective(as_dist(f, in), r, param);
    case Family::comp_blind: return 2 * compression_objective(as_dist(f, in), r, param);
    case Family::comparison_cond:
      return comparison_cond_inf_form_at(as_dist(f, in), r, param);
    case Family::comparison_mutual:
      return comparison_mutual_objective(as_dist(f, in), r, param);
  }
  throw InvalidInput("unknown family");
}

ExponentCurve exponent_curve(Family f, const ExponentInput& in,
                             const std::vector<double>& r_grid) {
  if (r_grid.empty()) throw InvalidInput("exponent_curve: empty r grid");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1]))
      throw InvalidInput("exponent_curve: r grid must be strictly increasing");
  ExponentCurve c{f, r_grid, {}, true};
  for (double r : r_grid) c.values.push_back(evaluate(f, in, r));
  int dir = family_direction(f);
  for (std::size_t i = 1; i < c.values.size(); ++i)
    if (dir * (c.values[i].value - c.values[i - 1].value) < -1e-9) c.monotone = false;
  return c;
}

}  // namespace scx
