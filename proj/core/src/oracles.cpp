#include "scx/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scx/entropy.hpp"
#include "scx/logmath.hpp"
#include "scx/optimize.hpp"
#include "scx/types.hpp"

namespace scx {

Dist random_dist(CounterRng& rng, std::size_t k) {
  std::vector<double> w(k);
  double s = 0.0;
  for (double& v : w) s += (v = -std::log(1.0 - rng.uniform()) + 1e-9);
  for (double& v : w) v /= s;
  return Dist(std::move(w));
}

JointDist random_joint(CounterRng& rng, std::size_t rows, std::size_t cols) {
  Dist d = random_dist(rng, rows * cols);
  return JointDist(rows, cols, d.weights());
}

namespace {

CMatrix gaussian(CounterRng& rng, int r, int c) {
  CMatrix g(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) g(i, k) = {rng.normal(), rng.normal()};
  return g;
}

CMatrix random_unitary(CounterRng& rng, int d) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian(rng, d, d));
  return qr.householderQ();
}

}  // namespace

HermitianOp random_state(CounterRng& rng, int d, double trace) {
  CMatrix g = gaussian(rng, d, d);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m *= trace;
  return HermitianOp(0.5 * (m + m.adjoint()));
}

CVector random_pure_vector(CounterRng& rng, int d) {
  CVector v = gaussian(rng, d, 1).col(0);
  return v / v.norm();
}

GridMin simplex_grid_min(const std::function<double(std::span<const double>)>& objective,
                         int k, int m) {
  if (k < 1 || k > 4) throw InvalidInput("simplex_grid_min: k must be in 1..4");
  if (m < 1) throw InvalidInput("simplex_grid_min: m must be >= 1");
  if (std::pow(m + 1.0, k - 1) > 1e7)
    throw BudgetExceeded("simplex_grid_min: (m+1)^(k-1) exceeds 1e7");
  GridMin best{kInf, {}, 0};
  TypeStream stream(k, m);
  std::vector<int> c;
  std::vector<double> t(k);
  while (stream.next(c)) {
    for (int i = 0; i < k; ++i) t[i] = static_cast<double>(c[i]) / m;
    double v = objective(t);
    ++best.points;
    if (v < best.value) {
      best.value = v;
      best.argmin = t;
    }
  }
  return best;
}

namespace {

struct Polytope {
  std::size_t rows, cols;
  std::vector<double> cap;     // per row
  std::vector<double> budget;  // per row
};

bool feasible(const Polytope& poly, std::span<const double> q) {
  for (std::size_t x = 0; x < poly.rows; ++x) {
    double s = 0.0;
    for (std::size_t a = 0; a < poly.cols; ++a) {
      double v = q[x * poly.cols + a];
      if (v < 0 || v > poly.cap[x]) return false;
      s += v;
    }
    if (s > poly.budget[x] * (1 + 1e-14)) return false;
  }
  return true;
}

std::vector<double> random_point(const Polytope& poly, CounterRng& rng) {
  std::vector<double> q(poly.rows * poly.cols, 0.0);
  for (std::size_t x = 0; x < poly.rows; ++x) {
    double s = 0.0;
    for (std::size_t a = 0; a < poly.cols; ++a) {
      double v = rng.uniform() * poly.cap[x];
      // Bias some coordinates to the faces, where optima sit.
      double u = rng.uniform();
      if (u < 0.15) v = 0.0;
      else if (u < 0.4) v = poly.cap[x];
      q[x * poly.cols + a] = v;
      s += v;
    }
    if (s > poly.budget[x] && s > 0)
      for (std::size_t a = 0; a < poly.cols; ++a) q[x * poly.cols + a] *= poly.budget[x] / s;
  }
  return q;
}

// Compass search over single-coordinate and same-row transfer moves.
void pattern_polish(const Polytope& poly, const std::function<double(std::span<const double>)>& f,
                    std::vector<double>& q, double& value) {
  double scale = 0.0;
  for (double b : poly.budget) scale = std::max(scale, b);
  const std::size_t n = q.size();
  std::vector<double> trial(n);
  for (double step = 0.25 * scale; step > 1e-13; step *= 0.5) {
    for (int round = 0; round < 400; ++round) {
      bool improved = false;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= n; ++j) {
          // j == n: move coordinate i alone; otherwise move mass j -> i.
          if (j < n && (j == i || j / poly.cols != i / poly.cols)) continue;
          for (double sign : {1.0, -1.0}) {
            trial = q;
            trial[i] += sign * step;
            if (j < n) trial[j] -= sign * step;
            if (!feasible(poly, trial)) continue;
            double v = f(trial);
            if (v < value - 1e-16) {
              value = v;
              q = trial;
              improved = true;
            }
          }
        }
      if (!improved) break;
    }
  }
}

}  // namespace

SmoothingSearch enumerate_smoothings(const JointDist& j, double lambda, int samples,
                                     std::uint64_t seed) {
  if (j.rows() * j.cols() > 6)
    throw InvalidInput("enumerate_smoothings: |X||A| must be <= 6");
  Dist pr = j.marginal_rows();
  Polytope poly{j.rows(), j.cols(), {}, pr.weights()};
  for (std::size_t x = 0; x < j.rows(); ++x) poly.cap.push_back(std::exp2(-lambda) * pr[x]);
  const std::vector<double>& p = j.data();

  auto trace_obj = [&](std::span<const double> q) {
    double s = 0.0, tq = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      s += std::abs(q[i] - p[i]);
      tq += q[i];
    }
    return 0.5 * s + 0.5 * (1.0 - tq);
  };
  // -F; the purified distance is monotone in it.
  auto fid_obj = [&](std::span<const double> q) {
    double f = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) f += std::sqrt(p[i] * q[i]);
    return -f;
  };

  CounterRng rng(seed, 0x5eed);
  struct Start {
    double v;
    std::vector<double> q;
  };
  std::vector<Start> tbest, fbest;
  const std::size_t keep = 4;
  auto offer = [&](std::vector<Start>& pool, double v, const std::vector<double>& q) {
    pool.push_back({v, q});
    std::sort(pool.begin(), pool.end(), [](const Start& a, const Start& b) { return a.v < b.v; });
    if (pool.size() > keep) pool.pop_back();
  };
  for (int s = 0; s < samples; ++s) {
    std::vector<double> q = random_point(poly, rng);
    offer(tbest, trace_obj(q), q);
    offer(fbest, fid_obj(q), q);
  }
  SmoothingSearch out{kInf, kInf, {}, {}};
  for (Start& st : tbest) {
    pattern_polish(poly, trace_obj, st.q, st.v);
    if (st.v < out.trace) {
      out.trace = st.v;
      out.trace_q = st.q;
    }
  }
  double best_f = 0.0;
  for (Start& st : fbest) {
    pattern_polish(poly, fid_obj, st.q, st.v);
    if (-st.v >= best_f) {
      best_f = -st.v;
      out.purified_q = st.q;
    }
  }
  double sq = 0.0, mass = 0.0, tp = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::sqrt(p[i]) - std::sqrt(out.purified_q[i]);
    sq += d * d;
    mass += out.purified_q[i];
    tp += p[i];
  }
  double dt = std::sqrt(std::max(0.0, 1.0 - tp)) - std::sqrt(std::max(0.0, 1.0 - mass));
  double omf = std::clamp(0.5 * sq + 0.5 * dt * dt, 0.0, 1.0);
  out.purified = std::sqrt(omf * (2.0 - omf));
  return out;
}

namespace {

// Calls visit(table) for every map {0..domain-1} -> {0..zsize-1}.
template <class Visit>
std::uint64_t for_all_functions(std::uint64_t domain, std::uint32_t zsize, Visit visit) {
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < domain; ++i) {
    if (count > kFunctionBudget / zsize)
      throw BudgetExceeded("function enumeration " + std::to_string(zsize) + "^" +
                           std::to_string(domain) + " exceeds budget");
    count *= zsize;
  }
  std::vector<std::uint32_t> table(domain, 0);
  std::uint64_t seen = 0;
  while (true) {
    visit(table);
    ++seen;
    std::uint64_t i = 0;
    while (i < domain && ++table[i] == zsize) table[i++] = 0;
    if (i == domain) break;
  }
  return seen;
}

}  // namespace

FunctionOptimum exhaustive_functions_min(const Dist& p, int n, std::uint32_t zsize) {
  if (zsize == 0) throw InvalidInput("zsize must be >= 1");
  std::uint64_t domain = sequence_count(p.size(), n);
  // p^n directly, symbol by symbol.
  std::vector<double> pn(domain);
  for (std::uint64_t i = 0; i < domain; ++i) {
    double v = 1.0;
    for (int s : decode_sequence(i, p.size(), n)) v *= p[s];
    pn[i] = v;
  }
  const double u = 1.0 / zsize;
  std::vector<double> q(zsize);
  double best = kInf;
  std::vector<std::uint32_t> arg;
  std::uint64_t seen = for_all_functions(domain, zsize, [&](const std::vector<std::uint32_t>& t) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::uint64_t i = 0; i < domain; ++i) q[t[i]] += pn[i];
    double d = 0.0;
    for (double v : q) d += std::abs(v - u);
    d *= 0.5;
    if (d < best) {
      best = d;
      arg = t;
    }
  });
  return {FiniteFunction(zsize, arg), best, seen};
}

FunctionOptimum exhaustive_functions_min(const JointDist& j, int n, std::uint32_t zsize) {
  if (zsize == 0) throw InvalidInput("zsize must be >= 1");
  const std::size_t R = j.rows(), A = j.cols();
  std::uint64_t rn = sequence_count(R, n), an = sequence_count(A, n);
  sequence_count(R * A, n);
  std::vector<double> jn(rn * an);
  for (std::uint64_t x = 0; x < rn; ++x) {
    std::vector<int> xs = decode_sequence(x, R, n);
    for (std::uint64_t a = 0; a < an; ++a) {
      std::vector<int> as = decode_sequence(a, A, n);
      double v = 1.0;
      for (int i = 0; i < n; ++i) v *= j(xs[i], as[i]);
      jn[x * an + a] = v;
    }
  }
  std::vector<double> h(zsize);
  double best = kInf;
  std::vector<std::uint32_t> arg;
  std::uint64_t seen = for_all_functions(an, zsize, [&](const std::vector<std::uint32_t>& t) {
    // Squared Hellinger form of 1 - F.
    double s = 0.0;
    for (std::uint64_t x = 0; x < rn; ++x) {
      std::fill(h.begin(), h.end(), 0.0);
      double px = 0.0;
      for (std::uint64_t a = 0; a < an; ++a) {
        h[t[a]] += jn[x * an + a];
        px += jn[x * an + a];
      }
      for (double v : h) s += std::pow(std::sqrt(v) - std::sqrt(px / zsize), 2);
    }
    if (s < best) {
      best = s;
      arg = t;
    }
  });
  double omf = std::clamp(0.5 * best, 0.0, 1.0);
  return {FiniteFunction(zsize, arg), std::sqrt(omf * (2 - omf)), seen};
}

namespace {

template <class Term>
OneShotResult brute_pairs(const JointDist& j, int n, Term term, BoundKind kind) {
  const std::size_t k = j.rows() * j.cols();
  std::uint64_t total = sequence_count(k, n);
  Dist pr = j.marginal_rows();
  double eps = 0.0, comp = 0.0;
  for (std::uint64_t s = 0; s < total; ++s) {
    double v = 1.0, vr = 1.0;
    std::vector<int> cell = decode_sequence(s, k, n);
    std::vector<int> as(n);
    for (int i = 0; i < n; ++i) {
      std::size_t x = cell[i] / j.cols(), a = cell[i] % j.cols();
      v *= j(x, a);
      vr *= pr[x];
      as[i] = static_cast<int>(a);
    }
    if (v <= 0) continue;
    double cap = term(vr, as);
    eps += std::max(v - cap, 0.0);
    comp += std::min(v, cap);
  }
  return {std::clamp(eps, 0.0, 1.0), comp > 0 ? std::log2(comp) : -kInf, kind,
          std::nullopt, std::nullopt};
}

}  // namespace

OneShotResult brute_iid_smoothing(const JointDist& j, int n, double r) {
  if (n < 1 || n > 8) throw InvalidInput("brute_iid_smoothing: n must be in 1..8");
  const double scale = std::exp2(-n * r);
  return brute_pairs(j, n, [&](double vr, const std::vector<int>&) { return scale * vr; },
                     BoundKind::exact);
}

OneShotResult brute_iid_mutual_fixed_sigma(const JointDist& j, const Dist& sigma, int n,
                                           double r) {
  if (n < 1 || n > 8) throw InvalidInput("brute_iid_mutual_fixed_sigma: n must be in 1..8");
  const double scale = std::exp2(n * r);
  return brute_pairs(j, n,
                     [&](double vr, const std::vector<int>& as) {
                       double vs = 1.0;
                       for (int a : as) vs *= sigma[a];
                       return scale * vr * vs;
                     },
                     BoundKind::upper);
}

MinimizeResult mutual_smoothing_subgradient(const JointDist& j, double lambda) {
  Dist pr = j.marginal_rows();
  const double s = std::exp2(lambda);
  auto vg = [&](std::span<const double> sigma, std::span<double> g) {
    double v = 0.0;
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t x = 0; x < j.rows(); ++x)
      for (std::size_t a = 0; a < j.cols(); ++a) {
        double e = j(x, a) - s * pr[x] * sigma[a];
        if (e > 0) {
          v += e;
          g[a] -= s * pr[x];
        }
      }
    return v;
  };
  std::vector<double> x0(j.cols(), 1.0 / j.cols());
  return simplex_subgradient(vg, x0, 100000, 0.1, 0.99985);
}

// ---------------------------------------------------------------------------
// Lemma checks

namespace {

double lg2(double x) { return std::log2(x); }

// Projector onto the eigenspace of h with eigenvalue >= 0.
CMatrix nonneg_projector(const HermitianOp& h) {
  Spectrum s = eig(h);
  CMatrix p = CMatrix::Zero(h.dim(), h.dim());
  for (int i = 0; i < h.dim(); ++i)
    if (s.values(i) >= 0) p += s.vectors.col(i) * s.vectors.col(i).adjoint();
  return p;
}

int pick_dim(CounterRng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace

double lemma_discrimination(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int d = pick_dim(rng, 2, 4);
    HermitianOp a = random_state(rng, d, 0.2 + 1.8 * rng.uniform());
    HermitianOp b = random_state(rng, d, 0.2 + 1.8 * rng.uniform());
    CMatrix p = nonneg_projector(b - a);
    CMatrix id = CMatrix::Identity(d, d);
    double lhs = (a.matrix() * p).trace().real() + (b.matrix() * (id - p)).trace().real();
    for (int k = 0; k <= 10; ++k) {
      double s = k / 10.0;
      double rhs = (power(a, 1 - s).matrix() * power(b, s).matrix()).trace().real();
      worst = std::max(worst, lhs - rhs);
    }
  }
  return worst;
}

double lemma_hof(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int d = pick_dim(rng, 2, 3);
    HermitianOp rho = random_state(rng, d, 0.3 + 0.7 * rng.uniform());
    HermitianOp sigma = random_state(rng, d, 0.3 + 0.7 * rng.uniform());
    HermitianOp tau = random_state(rng, d);
    double alpha = 0.55 + 0.4 * rng.uniform();
    double beta = alpha / (2 * alpha - 1);
    double lhs = 2 * alpha / (1 - alpha) * lg2(fidelity(rho, sigma));
    double rhs = sandwiched_divergence(rho, tau, beta) - sandwiched_divergence(sigma, tau, alpha) +
                 lg2(sigma.trace()) / (1 - alpha) + lg2(rho.trace()) / (beta - 1);
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

double lemma_pinched_fidelity(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int d = pick_dim(rng, 2, 4);
    CMatrix u = random_unitary(rng, d);
    // Labels 0..blocks-1 with every label used at least once.
    int blocks = pick_dim(rng, 2, d);
    Eigen::VectorXd labels(d);
    for (int k = 0; k < d; ++k)
      labels(k) = k < blocks ? k : static_cast<double>(rng.below(blocks));
    CMatrix base = u * labels.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    HermitianOp b(0.5 * (base + base.adjoint()));
    HermitianOp rho = random_state(rng, d);
    HermitianOp sigma = pinch(b, random_state(rng, d));
    int count = static_cast<int>(spectral_projections(b).size());
    double lhs = fidelity(pinch(b, rho), sigma);
    double rhs = std::sqrt(static_cast<double>(count)) * fidelity(rho, sigma);
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

double lemma_fidelity_relative_entropy(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int d = pick_dim(rng, 2, 4);
    HermitianOp rho = random_state(rng, d), sigma = random_state(rng, d), tau = random_state(rng, d);
    double f = fidelity(rho, sigma);
    double lhs = -lg2(f * f);
    double rhs = umegaki_relative_entropy(tau, rho) + umegaki_relative_entropy(tau, sigma);
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

double lemma_purified_vs_trace(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int d = pick_dim(rng, 2, 4);
    HermitianOp phi = HermitianOp::projector(random_pure_vector(rng, d));
    double t = i % 10 == 0 ? 0.0 : rng.uniform();
    HermitianOp rho = t > 0 ? random_state(rng, d, t) : HermitianOp(CMatrix::Zero(d, d));
    double lhs = purified_distance(rho, phi);
    double rhs = std::sqrt(generalized_trace_distance(rho, phi));
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

double lemma_pinching(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int d = pick_dim(rng, 2, 4);
    CMatrix u = random_unitary(rng, d);
    Eigen::VectorXd ev(d);
    for (int k = 0; k < d; ++k) ev(k) = static_cast<double>(rng.below(3));
    CMatrix base = u * ev.cast<std::complex<double>>().asDiagonal() * u.adjoint();
    HermitianOp a(0.5 * (base + base.adjoint()));
    HermitianOp sigma = random_state(rng, d);
    double v = distinct_eigenvalue_count(a);
    worst = std::max(worst, -min_eigenvalue(pinch(a, sigma) * v - sigma));
  }
  return worst;
}

double lemma_operator_bipartite(CounterRng& rng, int instances) {
  double worst = -kInf;
  for (int i = 0; i < instances; ++i) {
    int da = pick_dim(rng, 2, 3), db = pick_dim(rng, 2, 3);
    HermitianOp m = random_state(rng, da * db, 0.5 + 2 * rng.uniform());
    HermitianOp mb = partial_trace_a(m, da, db);
    HermitianOp rhs = kron(HermitianOp::identity(da), mb) * static_cast<double>(da);
    worst = std::max(worst, -min_eigenvalue(rhs - m));
  }
  return worst;
}

std::vector<LemmaReport> run_lemma_suite(std::uint64_t seed, int instances) {
  struct Entry {
    const char* name;
    double (*fn)(CounterRng&, int);
  };
  const Entry entries[] = {
      {"discrimination", lemma_discrimination},
      {"hof", lemma_hof},
      {"pinched-fidelity", lemma_pinched_fidelity},
      {"fidelity-relative-entropy", lemma_fidelity_relative_entropy},
      {"purified-vs-trace", lemma_purified_vs_trace},
      {"pinching", lemma_pinching},
      {"operator-bipartite", lemma_operator_bipartite},
  };
  std::vector<LemmaReport> out;
  std::uint64_t stream = 0;
  for (const Entry& e : entries) {
    CounterRng rng(seed, 0x1e44a000 + stream++);
    double w = e.fn(rng, instances);
    out.push_back({e.name, instances, w, w <= 1e-9});
  }
  return out;
}

double duality_gap(CounterRng& rng, double alpha) {
  CVector psi = random_pure_vector(rng, 8);  // index a*4 + b*2 + c
  CVector swapped(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) swapped(a * 4 + c * 2 + b) = psi(a * 4 + b * 2 + c);
  HermitianOp full = HermitianOp::projector(psi);
  HermitianOp full_swapped = HermitianOp::projector(swapped);
  HermitianOp rho_ab = partial_trace_b(full, 4, 2);
  HermitianOp rho_ac = partial_trace_b(full_swapped, 4, 2);
  double beta = alpha / (2 * alpha - 1);
  double h_ab = sandwiched_cond_entropy(rho_ab, 2, 2, alpha).value;
  double h_ac = sandwiched_cond_entropy(rho_ac, 2, 2, beta).value;
  return std::abs(h_ab + h_ac);
}

// ---------------------------------------------------------------------------
// Pairings

namespace {

struct Tracker {
  std::string target;
  double tol_below, tol_above;
  std::string instance = {};
  double oracle = 0, impl = 0, gap = 0, margin = -kInf;
  int count = 0;

  void add(double o, double i, const std::string& what) {
    double g = o - i;
    double m = std::isnan(g) ? kInf : std::max(-g - tol_below, g - tol_above);
    ++count;
    if (m > margin) {
      margin = m;
      oracle = o;
      impl = i;
      gap = g;
      instance = what;
    }
  }

  OracleReport report() const {
    bool pass = count > 0 && margin <= 0;
    return {target, std::to_string(count) + " instances; worst: " + instance, oracle, impl,
            gap, tol_below, tol_above, pass};
  }
};

std::string describe(const JointDist& j) {
  std::ostringstream s;
  s.precision(6);
  s << "j=[";
  for (std::size_t x = 0; x < j.rows(); ++x) {
    s << (x ? ",[" : "[");
    for (std::size_t a = 0; a < j.cols(); ++a) s << (a ? "," : "") << j(x, a);
    s << "]";
  }
  s << "]";
  return s.str();
}

int scaled(double scale, int n) { return std::max(1, static_cast<int>(std::lround(scale * n))); }

}  // namespace

std::vector<OracleReport> run_oracle_pairings(const VerifyOptions& opt) {
  const VerifyHooks& h = opt.hooks;
  std::vector<OracleReport> out;
  std::uint64_t stream = 0;
  auto rng_for = [&](std::uint64_t s) { return CounterRng(opt.seed, 0x0c1e0000 + s); };

  {
    Tracker t{"eps_d_cond_iid~brute_iid_smoothing", 1e-12, 1e-12};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 50); ++i) {
      std::size_t rows = i % 2 ? 3 : 2;
      JointDist j = random_joint(rng, rows, 2);
      int n = 1 + static_cast<int>(rng.below(3));
      double r = -0.5 + 2.0 * rng.uniform();
      t.add(brute_iid_smoothing(j, n, r).value, h.cond_iid(j, n, r).value,
            describe(j) + " n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
    out.push_back(t.report());
  }
  {
    Tracker t{"eps_d_cond_iid(n=1)~eps_d_cond_classical", 1e-12, 1e-12};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 50); ++i) {
      JointDist j = random_joint(rng, 2, 3);
      double r = -0.5 + 2.5 * rng.uniform();
      t.add(h.cond_classical(j, r).value, h.cond_iid(j, 1, r).value,
            describe(j) + " r=" + std::to_string(r));
    }
    out.push_back(t.report());
  }
  {
    Tracker t{"eps_d_mutual_iid_fixed_sigma~brute", 1e-12, 1e-12};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 30); ++i) {
      JointDist j = random_joint(rng, 2, 2);
      Dist sigma = random_dist(rng, 2);
      int n = 1 + static_cast<int>(rng.below(3));
      double r = 1.5 * rng.uniform();
      t.add(brute_iid_mutual_fixed_sigma(j, sigma, n, r).value,
            eps_d_mutual_iid_fixed_sigma(j, sigma, n, r).value,
            describe(j) + " n=" + std::to_string(n));
    }
    out.push_back(t.report());
  }
  {
    Tracker t{"eps_d_mutual_classical(LP)~subgradient", 1e-9, 1e-6};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 20); ++i) {
      JointDist j = random_joint(rng, 2 + rng.below(2), 2 + rng.below(2));
      double lambda = 1.5 * rng.uniform();
      t.add(mutual_smoothing_subgradient(j, lambda).value, h.mutual_lp(j, lambda).value,
            describe(j) + " lambda=" + std::to_string(lambda));
    }
    out.push_back(t.report());
  }
  {
    Tracker t{"gibbs_tilt_min~simplex_grid(m=400)", 1e-9, 1e-3};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 50); ++i) {
      Dist p = random_dist(rng, 3);
      std::vector<double> g(3);
      for (double& v : g) v = -2 + 4 * rng.uniform();
      double c = 0.5 + 2.5 * rng.uniform();
      GridMin gm = simplex_grid_min(
          [&](std::span<const double> x) {
            return tilt_objective(Dist(std::vector<double>(x.begin(), x.end())), p, g, c);
          },
          3, 400);
      t.add(gm.value, h.gibbs(p, g, c).value, "k=3 c=" + std::to_string(c));
    }
    out.push_back(t.report());
  }
  {
    Tracker t{"sibson_mutual_info~simplex_grid(m=400)", 1e-9, 1e-3};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 30); ++i) {
      JointDist j = random_joint(rng, 2, 2 + rng.below(2));
      double alpha = 0.05 + 0.9 * rng.uniform();
      GridMin gm = simplex_grid_min(
          [&](std::span<const double> x) {
            return mutual_info_objective(j, Dist(std::vector<double>(x.begin(), x.end())), alpha);
          },
          static_cast<int>(j.cols()), 400);
      t.add(gm.value, h.sibson(j, alpha), describe(j) + " alpha=" + std::to_string(alpha));
    }
    out.push_back(t.report());
  }
  {
    Tracker tt{"eps_d_cond_classical~enumerate_smoothings(trace)", 1e-9, 1e-3};
    Tracker tp{"eps_P_cond_classical(KKT)~enumerate_smoothings(purified)", 1e-9, 1e-3};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 20); ++i) {
      JointDist j = random_joint(rng, 2, i % 2 ? 3 : 2);
      double lambda = -0.5 + 2.5 * rng.uniform();
      SmoothingSearch s = enumerate_smoothings(j, lambda, 2000, opt.seed + i);
      std::string what = describe(j) + " lambda=" + std::to_string(lambda);
      tt.add(s.trace, h.cond_classical(j, lambda).value, what);
      tp.add(s.purified, h.kkt(j, lambda).value, what);
    }
    out.push_back(tt.report());
    out.push_back(tp.report());
  }
  {
    // Exhaustive optimum must not lose to any of the explicit constructions.
    Tracker t{"exhaustive_functions_min<=ir_construct", 1e-12, kInf};
    Dist p({0.75, 0.25});
    int n = 2;
    for (std::uint32_t z : {2u, 3u, 4u}) {
      FunctionOptimum best = exhaustive_functions_min(p, n, z);
      for (const TypeVector& ty : enumerate_types(2, n)) {
        int c = ir_case(p, n, z, ty);
        if (c == 0) continue;
        try {
          IrConstruction ir = ir_construct(p, n, z, ty, c);
          t.add(ir_performance(p, n, ir.f), best.performance,
                "p=(0.75,0.25) n=2 |Z|=" + std::to_string(z) + " case " + std::to_string(c));
        } catch (const InvalidInput&) {
        }
      }
    }
    out.push_back(t.report());
  }
  {
    Tracker t{"pa_exhaustive_min~exhaustive_functions_min", 1e-12, 1e-12};
    CounterRng rng = rng_for(stream++);
    for (int i = 0; i < scaled(opt.scale, 10); ++i) {
      JointDist j = random_joint(rng, 2, 2);
      int n = 1 + i % 2;
      t.add(exhaustive_functions_min(j, n, 2).performance, pa_exhaustive_min(j, n, 2).performance,
            describe(j) + " n=" + std::to_string(n));
    }
    out.push_back(t.report());
  }
  return out;
}

std::vector<OracleReport> run_verification_suite(const VerifyOptions& opt) {
  std::vector<OracleReport> out = run_oracle_pairings(opt);
  if (opt.lemmas) {
    for (const LemmaReport& l : run_lemma_suite(opt.seed, scaled(opt.scale, 100)))
      out.push_back({"lemma:" + l.name, std::to_string(l.instances) + " random instances", 0.0,
                     l.worst_violation, -l.worst_violation, 1e-9, kInf, l.pass});
  }
  if (opt.duality) {
    Tracker t{"sandwiched duality H*_a(A|B)=-H*_b(A|C)", 1e-5, 1e-5};
    CounterRng rng(opt.seed, 0xd0a1);
    for (double alpha : {0.6, 0.75, 0.9})
      for (int i = 0; i < scaled(opt.scale, 2); ++i)
        t.add(0.0, duality_gap(rng, alpha), "qubits alpha=" + std::to_string(alpha));
    out.push_back(t.report());
  }
  return out;
}

std::vector<OracleReport> run_verification_suite() { return run_verification_suite(VerifyOptions{}); }

}  // namespace scx
