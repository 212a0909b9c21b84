#include "scx/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "scx/logmath.hpp"
#include "scx/rng.hpp"

namespace scx {

std::vector<double> project_to_simplex(std::span<const double> v, double total) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - total) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

Argmax1D maximize_on_interval(const std::function<double(double)>& f, double lo,
                              double hi, int grid_points, double tol) {
  if (!(hi >= lo)) throw InvalidInput("maximize_on_interval: empty interval");
  if (hi == lo || grid_points < 3) return {lo, f(lo)};
  int n = grid_points;
  double h = (hi - lo) / (n - 1);
  int best = 0;
  double best_v = -kInf;
  for (int i = 0; i < n; ++i) {
    double x = i == n - 1 ? hi : lo + i * h;
    double v = f(x);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  Argmax1D res{best == n - 1 ? hi : lo + best * h, best_v};

  double a = lo + std::max(best - 1, 0) * h;
  double b = best + 1 >= n - 1 ? hi : lo + (best + 1) * h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double x = fc >= fd ? c : d;
  double fx = std::max(fc, fd);
  if (fx > res.value) res = {x, fx};
  return res;
}

MinimizeResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                           std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  std::vector<double> fv(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    double v = f(x);
    return std::isnan(v) ? kInf : v;
  };
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> idx(n + 1);
  while (evals < opt.max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    std::size_t ib = idx[0], iw = idx[n], isw = idx[n - 1];
    if (std::abs(fv[iw] - fv[ib]) <= opt.ftol * (std::abs(fv[ib]) + 1e-30) + 1e-300) {
      double spread = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          spread = std::max(spread, std::abs(pts[i][k] - pts[ib][k]));
      if (spread < 1e-12 || std::abs(fv[iw] - fv[ib]) == 0.0) break;
    }
    std::vector<double> cen(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != iw)
        for (std::size_t k = 0; k < n; ++k) cen[k] += pts[i][k] / n;
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = cen[k] + t * (pts[iw][k] - cen[k]);
      return x;
    };
    std::vector<double> xr = along(-1.0);
    double fr = eval(xr);
    if (fr < fv[ib]) {
      std::vector<double> xe = along(-2.0);
      double fe = eval(xe);
      if (fe < fr) {
        pts[iw] = xe;
        fv[iw] = fe;
      } else {
        pts[iw] = xr;
        fv[iw] = fr;
      }
    } else if (fr < fv[isw]) {
      pts[iw] = xr;
      fv[iw] = fr;
    } else {
      bool outside = fr < fv[iw];
      std::vector<double> xc = along(outside ? -0.5 : 0.5);
      double fc = eval(xc);
      if (fc < (outside ? fr : fv[iw])) {
        pts[iw] = xc;
        fv[iw] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == ib) continue;
          for (std::size_t k = 0; k < n; ++k)
            pts[i][k] = pts[ib][k] + 0.5 * (pts[i][k] - pts[ib][k]);
          fv[i] = eval(pts[i]);
        }
      }
    }
  }
  std::size_t ib = std::min_element(fv.begin(), fv.end()) - fv.begin();
  return {pts[ib], fv[ib], evals};
}

MinimizeResult nelder_mead_restarts(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, int restarts, std::uint64_t seed,
    const NelderMeadOptions& opt) {
  CounterRng rng(seed);
  MinimizeResult best{x0, kInf, 0};
  int total = 0;
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    std::vector<double> start = x0;
    if (r > 0)
      for (double& v : start) v += opt.initial_step * rng.normal();
    MinimizeResult a = nelder_mead(f, start, opt);
    NelderMeadOptions fine = opt;
    fine.initial_step = opt.initial_step * 0.05;
    MinimizeResult b = nelder_mead(f, a.x, fine);
    total += a.evals + b.evals;
    const MinimizeResult& w = b.value <= a.value ? b : a;
    if (w.value < best.value) best = w;
  }
  best.evals = total;
  return best;
}

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  std::size_t m = 0, cols = 0;  // cols excludes rhs
  std::vector<std::vector<double>> a;
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t c) {
    double p = a[r][c];
    for (double& v : a[r]) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a[i][c] == 0.0) continue;
      double f = a[i][c];
      for (std::size_t k = 0; k <= cols; ++k) a[i][k] -= f * a[r][k];
      a[i][c] = 0.0;
    }
    basis[r] = c;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving basis.
  LpStatus run(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    for (int iter = 0; iter < 100000; ++iter) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols && enter == cols; ++j) {
        if (!allowed[j]) continue;
        double d = cost[j];
        for (std::size_t i = 0; i < m; ++i) d -= cost[basis[i]] * a[i][j];
        if (d < -1e-12) enter = j;
      }
      if (enter == cols) return LpStatus::optimal;
      std::size_t leave = m;
      double best = kInf;
      for (std::size_t i = 0; i < m; ++i) {
        if (a[i][enter] <= kPivotEps) continue;
        double ratio = a[i][cols] / a[i][enter];
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m) return LpStatus::unbounded;
      pivot(leave, enter);
    }
    throw Error("solve_lp: iteration limit");
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.c.size();
  const std::size_t mu = lp.a_ub.size(), me = lp.a_eq.size();
  const std::size_t m = mu + me;
  // Columns: originals, one slack per inequality, one artificial per row.
  const std::size_t cols = n + mu + m;
  Tableau t;
  t.m = m;
  t.cols = cols;
  t.a.assign(m, std::vector<double>(cols + 1, 0.0));
  t.basis.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = i < mu ? lp.a_ub[i] : lp.a_eq[i - mu];
    double b = i < mu ? lp.b_ub[i] : lp.b_eq[i - mu];
    if (row.size() != n) throw InvalidInput("solve_lp: row width mismatch");
    double sign = b < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * row[j];
    if (i < mu) t.a[i][n + i] = sign;
    t.a[i][n + mu + i] = 1.0;
    t.a[i][cols] = sign * b;
    t.basis[i] = n + mu + i;
  }
  std::vector<bool> allowed(cols, true);
  std::vector<double> phase1(cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + mu + i] = 1.0;
  t.run(phase1, allowed);
  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] >= n + mu) infeas += t.a[i][cols];
  if (infeas > 1e-9) return {LpStatus::infeasible, {}, kInf};

  // Drive remaining (zero-level) artificials out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n + mu) continue;
    for (std::size_t j = 0; j < n + mu; ++j)
      if (std::abs(t.a[i][j]) > kPivotEps) {
        t.pivot(i, j);
        break;
      }
  }
  for (std::size_t j = n + mu; j < cols; ++j) allowed[j] = false;
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
  if (t.run(cost, allowed) == LpStatus::unbounded)
    return {LpStatus::unbounded, {}, -kInf};

  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] < n) x[t.basis[i]] = std::max(0.0, t.a[i][cols]);
  double v = 0.0;
  for (std::size_t j = 0; j < n; ++j) v += lp.c[j] * x[j];
  return {LpStatus::optimal, x, v};
}

MinimizeResult simplex_subgradient(
    const std::function<double(std::span<const double>, std::span<double>)>&
        value_and_subgradient,
    std::vector<double> x0, int iterations, double step0, double decay) {
  std::vector<double> x = project_to_simplex(x0);
  std::vector<double> g(x.size());
  MinimizeResult best{x, kInf, 0};
  double step = step0;
  for (int k = 0; k < iterations; ++k) {
    double v = value_and_subgradient(x, g);
    ++best.evals;
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
    // Project the subgradient onto the simplex tangent space before scaling.
    double mean = std::accumulate(g.begin(), g.end(), 0.0) / g.size();
    double norm = 0.0;
    for (double& gi : g) {
      gi -= mean;
      norm += gi * gi;
    }
    norm = std::sqrt(norm);
    if (norm < 1e-300) break;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= step * g[i] / norm;
    x = project_to_simplex(x);
    step *= decay;
  }
  return best;
}

}  // namespace scx
