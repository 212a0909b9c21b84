#include "scx/one_shot.hpp"

#include <algorithm>
#include <cmath>

#include "scx/logmath.hpp"
#include "scx/optimize.hpp"
#include "scx/types.hpp"

namespace scx {

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::exact: return "exact";
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
  }
  return "?";
}

namespace {

double lg(double x) { return x > 0 ? std::log2(x) : -kInf; }

// epsilon from log2(1 - epsilon).
double eps_from_log_complement(double l) {
  if (l >= 0) return 0.0;
  return std::clamp(-std::expm1(l * std::log(2.0)), 0.0, 1.0);
}

// Precomputed lgamma(c + 1) / ln 2 for c = 0..n.
std::vector<double> log2_factorials(int n) {
  std::vector<double> t(n + 1);
  for (int c = 0; c <= n; ++c) t[c] = std::lgamma(c + 1.0) / std::log(2.0);
  return t;
}

// Streams joint types of j at length n and accumulates
// log2 sum_s |T_s| min(v1(s), v2(s)), where v1 is the per-sequence joint log
// probability and v2 = offset + sum_x cR(x) log p(x) + sum_a cA(a) w(a).
double joint_type_min_sum(const JointDist& j, int n, double offset,
                          const std::vector<double>& col_weight) {
  const int rows = static_cast<int>(j.rows()), cols = static_cast<int>(j.cols());
  const int k = rows * cols;
  check_type_budget(k, n);
  Dist pr = j.marginal_rows();
  std::vector<double> lj(k), lr(rows);
  for (int i = 0; i < k; ++i) lj[i] = lg(j.data()[i]);
  for (int x = 0; x < rows; ++x) lr[x] = lg(pr[x]);
  std::vector<double> lf = log2_factorials(n);

  Log2Accumulator acc;
  TypeStream stream(k, n);
  std::vector<int> c;
  while (stream.next(c)) {
    double v1 = 0.0, v2 = offset, lc = lf[n];
    bool dead = false;
    for (int x = 0; x < rows && !dead; ++x) {
      int cx = 0;
      for (int a = 0; a < cols; ++a) {
        int cnt = c[x * cols + a];
        if (cnt == 0) continue;
        if (lj[x * cols + a] == -kInf) {
          dead = true;
          break;
        }
        v1 += cnt * lj[x * cols + a];
        lc -= lf[cnt];
        cx += cnt;
      }
      if (cx > 0) v2 += cx * lr[x];
    }
    if (dead) continue;
    if (!col_weight.empty()) {
      for (int a = 0; a < cols; ++a) {
        int ca = 0;
        for (int x = 0; x < rows; ++x) ca += c[x * cols + a];
        if (ca > 0) v2 += ca * col_weight[a];
      }
    }
    acc.add(std::max(lc, 0.0) + std::min(v1, v2));
  }
  return std::min(acc.value(), 0.0);
}

}  // namespace

OneShotResult eps_d_cond_classical(const JointDist& j, double lambda) {
  Dist pr = j.marginal_rows();
  std::vector<double> q(j.data().size());
  std::vector<double> lmins;
  double excess = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    double cap = std::exp2(-lambda) * pr[x];
    double lcap = -lambda + lg(pr[x]);
    for (std::size_t a = 0; a < j.cols(); ++a) {
      double p = j(x, a);
      q[x * j.cols() + a] = std::min(p, cap);
      excess += std::max(p - cap, 0.0);
      if (p > 0) lmins.push_back(std::min(lg(p), lcap));
    }
  }
  double l = std::min(log2_sum_exp(lmins), 0.0);
  return {std::clamp(excess, 0.0, 1.0), l, BoundKind::exact, std::move(q), std::nullopt};
}

OneShotResult eps_d_cond_iid(const JointDist& j, int n, double r) {
  if (n < 1) throw InvalidInput("eps_d_cond_iid: n must be >= 1");
  double l = joint_type_min_sum(j, n, -n * r, {});
  return {eps_from_log_complement(l), l, BoundKind::exact, std::nullopt, std::nullopt};
}

double eps_d_mutual_objective(const JointDist& j, const Dist& sigma, double lambda) {
  Dist pr = j.marginal_rows();
  double e = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x)
    for (std::size_t a = 0; a < j.cols(); ++a)
      e += std::max(j(x, a) - std::exp2(lambda) * pr[x] * sigma[a], 0.0);
  return e;
}

OneShotResult eps_d_mutual_classical(const JointDist& j, double lambda) {
  if (lambda < 0)
    throw InvalidInput(
        "eps_d_mutual_classical: lambda < 0 is infeasible (a normalized "
        "smoothing cannot fit under 2^lambda p_R x sigma)");
  const std::size_t R = j.rows(), A = j.cols();
  Dist pr = j.marginal_rows();
  const double scale = std::exp2(lambda);
  // Variables: sigma(0..A-1), then excess e(x, a).
  LinearProgram lp;
  const std::size_t nv = A + R * A;
  lp.c.assign(nv, 0.0);
  for (std::size_t k = A; k < nv; ++k) lp.c[k] = 1.0;
  for (std::size_t x = 0; x < R; ++x)
    for (std::size_t a = 0; a < A; ++a) {
      if (j(x, a) <= 0) continue;
      std::vector<double> row(nv, 0.0);
      row[a] = -scale * pr[x];
      row[A + x * A + a] = -1.0;
      lp.a_ub.push_back(std::move(row));
      lp.b_ub.push_back(-j(x, a));
    }
  std::vector<double> sum(nv, 0.0);
  for (std::size_t a = 0; a < A; ++a) sum[a] = 1.0;
  lp.a_eq.push_back(sum);
  lp.b_eq.push_back(1.0);
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw Error("eps_d_mutual_classical: LP failed");

  std::vector<double> s(sol.x.begin(), sol.x.begin() + A);
  double tot = 0.0;
  for (double v : s) tot += v;
  for (double& v : s) v /= tot;
  Dist sigma(j.col_labels(), s);
  std::vector<double> lmins;
  for (std::size_t x = 0; x < R; ++x)
    for (std::size_t a = 0; a < A; ++a)
      if (j(x, a) > 0)
        lmins.push_back(std::min(lg(j(x, a)), lambda + lg(pr[x]) + lg(s[a])));
  double l = std::min(log2_sum_exp(lmins), 0.0);
  double value = std::clamp(eps_d_mutual_objective(j, sigma, lambda), 0.0, 1.0);
  return {value, l, BoundKind::exact, std::nullopt, sigma};
}

OneShotResult eps_d_mutual_iid_fixed_sigma(const JointDist& j, const Dist& sigma,
                                           int n, double r) {
  if (n < 1) throw InvalidInput("eps_d_mutual_iid_fixed_sigma: n must be >= 1");
  if (sigma.size() != j.cols()) throw InvalidInput("sigma alphabet mismatch");
  std::vector<double> w(sigma.size());
  for (std::size_t a = 0; a < sigma.size(); ++a) w[a] = lg(sigma[a]);
  double l = joint_type_min_sum(j, n, n * r, w);
  return {eps_from_log_complement(l), l, BoundKind::upper, std::nullopt, sigma};
}

OneShotResult eps_P_cond_classical(const JointDist& j, double lambda) {
  const std::size_t R = j.rows(), A = j.cols();
  Dist pr = j.marginal_rows();
  std::vector<double> q(R * A, 0.0);
  double sq_dist = 0.0, mass = 0.0;
  for (std::size_t x = 0; x < R; ++x) {
    double P = pr[x];
    if (P <= 0) continue;
    double c = std::exp2(-lambda) * P;
    // Maximize sum sqrt(p_a q_a) s.t. q_a <= c, sum q_a <= P:
    // q_a = min(c, mu p_a) with mu fixed by the row budget (mu >= 1).
    std::vector<bool> clipped(A, false);
    std::size_t supp = 0;
    for (std::size_t a = 0; a < A; ++a) supp += j(x, a) > 0;
    double mu = 1.0;
    if (c * static_cast<double>(supp) <= P) {
      for (std::size_t a = 0; a < A; ++a)
        if (j(x, a) > 0) clipped[a] = true;
    } else {
      for (std::size_t pass = 0; pass <= A; ++pass) {
        double free_mass = 0.0, budget = P;
        for (std::size_t a = 0; a < A; ++a) {
          if (j(x, a) <= 0) continue;
          if (clipped[a]) budget -= c;
          else free_mass += j(x, a);
        }
        if (free_mass <= 0) break;
        mu = budget / free_mass;
        bool changed = false;
        for (std::size_t a = 0; a < A; ++a)
          if (j(x, a) > 0 && !clipped[a] && mu * j(x, a) >= c) {
            clipped[a] = true;
            changed = true;
          }
        if (!changed) break;
      }
    }
    for (std::size_t a = 0; a < A; ++a) {
      double p = j(x, a);
      if (p <= 0) continue;
      double v = clipped[a] ? c : std::min(c, mu * p);
      q[x * A + a] = v;
      double d = std::sqrt(p) - std::sqrt(v);
      sq_dist += d * d;
      mass += v;
    }
  }
  // 1 - Fbar = (sum (sqrt p - sqrt q)^2 + (sqrt(1 - tr p) - sqrt(1 - tr q))^2) / 2,
  // free of cancellation.
  double tp = 0.0;
  for (double v : j.data()) tp += v;
  double dt = std::sqrt(std::max(0.0, 1.0 - tp)) - std::sqrt(std::max(0.0, 1.0 - mass));
  double omf = std::clamp(0.5 * sq_dist + 0.5 * dt * dt, 0.0, 1.0);
  double eps = std::sqrt(omf * (2.0 - omf));
  double l = omf < 1 ? 2 * std::log1p(-omf) / std::log(2.0) - std::log2(1 + eps) : -kInf;
  return {eps, l, BoundKind::exact, std::move(q), std::nullopt};
}

namespace {

OneShotResult from_log_fidelity(double lf, BoundKind kind) {
  lf = std::min(lf, 0.0);
  double one_minus_f2 = -std::expm1(2 * lf * std::log(2.0));
  double eps = std::sqrt(std::max(one_minus_f2, 0.0));
  return {eps, 2 * lf - std::log2(1 + eps), kind, std::nullopt, std::nullopt};
}

}  // namespace

PureBounds eps_P_cond_pure_bounds(const SchmidtState& s, int n, double r) {
  if (n < 1) throw InvalidInput("eps_P_cond_pure_bounds: n must be >= 1");
  const Dist& p = s.schmidt;
  const int k = static_cast<int>(p.size());
  check_type_budget(k, n);
  std::vector<double> lf = log2_factorials(n);
  Log2Accumulator acc;
  TypeStream stream(k, n);
  std::vector<int> c;
  while (stream.next(c)) {
    double lp = log2_iid_prob(c, p);
    if (lp == -kInf) continue;
    double lc = lf[n];
    for (int v : c) lc -= lf[v];
    lc = std::max(lc, 0.0);
    acc.add(lc + lp + std::min(0.0, 0.5 * (-n * r - lc)));
  }
  double lb = std::min(acc.value(), 0.0);
  double slack = 0.5 * k * std::log2(n + 1.0);
  return {from_log_fidelity(lb, BoundKind::lower),
          from_log_fidelity(lb - slack, BoundKind::upper), lb};
}

std::pair<double, double> purified_bounds_from_trace(double eps_d) {
  return {eps_d, std::sqrt(eps_d)};
}

std::pair<double, double> trace_bounds_from_purified(double eps_p) {
  return {eps_p * eps_p, eps_p};
}

}  // namespace scx
