#include "scx/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scx/logmath.hpp"
#include "scx/optimize.hpp"

namespace scx {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw InvalidInput("order alpha must be >= 0");
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidInput("alphabet mismatch");
}

double log2_or_ninf(double x) { return x > 0 ? std::log2(x) : -kInf; }

}  // namespace

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) h -= xlog2x(x);
  return std::max(h, 0.0);
}

double shannon_entropy(const Dist& p) { return shannon_entropy(p.weights()); }

double renyi_entropy(std::span<const double> p, double alpha) {
  check_alpha(alpha);
  if (alpha == kInf) {
    double m = *std::max_element(p.begin(), p.end());
    return -std::log2(m);
  }
  if (alpha == 0.0) {
    std::size_t c = 0;
    for (double x : p) c += x > 0;
    return std::log2(static_cast<double>(c));
  }
  if (near_one(alpha)) return shannon_entropy(p);
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double x : p)
    if (x > 0) terms.push_back(alpha * std::log2(x));
  return log2_sum_exp(terms) / (1.0 - alpha);
}

double renyi_entropy(const Dist& p, double alpha) {
  return renyi_entropy(p.weights(), alpha);
}

double relative_entropy(std::span<const double> t, std::span<const double> p) {
  check_same_size(t.size(), p.size());
  double d = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 0) continue;
    if (p[i] <= 0) return kInf;
    d += t[i] * (std::log2(t[i]) - std::log2(p[i]));
  }
  return std::max(d, 0.0);
}

double relative_entropy(const Dist& t, const Dist& p) {
  return relative_entropy(t.weights(), p.weights());
}

double petz_divergence_classical(std::span<const double> p,
                                 std::span<const double> q, double alpha) {
  check_same_size(p.size(), q.size());
  if (!(alpha > 0.0)) throw InvalidInput("Petz divergence needs alpha > 0");
  double tr = 0.0;
  for (double x : p) tr += x;
  if (tr <= 0) throw InvalidInput("Petz divergence of a zero vector");
  if (near_one(alpha)) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0) continue;
      if (q[i] <= 0) return kInf;
      d += p[i] * (std::log2(p[i]) - std::log2(q[i]));
    }
    return d / tr;
  }
  std::vector<double> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) {
      if (alpha > 1) return kInf;
      continue;
    }
    terms.push_back(alpha * std::log2(p[i]) + (1 - alpha) * std::log2(q[i]));
  }
  if (terms.empty()) return kInf;
  return (log2_sum_exp(terms) - std::log2(tr)) / (alpha - 1);
}

double petz_divergence_classical(const Dist& p, const Dist& q, double alpha) {
  return petz_divergence_classical(p.weights(), q.weights(), alpha);
}

double cond_entropy(const JointDist& j) {
  Dist pr = j.marginal_rows();
  double h = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x)
    if (pr[x] > 0) h += pr[x] * shannon_entropy(j.conditional(x));
  return h;
}

double mutual_info(const JointDist& j) {
  return std::max(0.0, shannon_entropy(j.marginal_cols()) - cond_entropy(j));
}

double petz_cond_entropy_bar(const JointDist& j, double alpha) {
  check_alpha(alpha);
  if (near_one(alpha)) return cond_entropy(j);
  Dist pr = j.marginal_rows();
  if (alpha == kInf) {
    double m = 0.0;
    for (std::size_t x = 0; x < j.rows(); ++x)
      if (pr[x] > 0) {
        Dist c = j.conditional(x);
        m = std::max(m, *std::max_element(c.weights().begin(), c.weights().end()));
      }
    return -std::log2(m);
  }
  std::vector<double> terms;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    if (pr[x] <= 0) continue;
    Dist c = j.conditional(x);
    for (std::size_t a = 0; a < j.cols(); ++a) {
      if (c[a] <= 0) continue;
      terms.push_back(std::log2(pr[x]) + (alpha == 0.0 ? 0.0 : alpha * std::log2(c[a])));
    }
  }
  return log2_sum_exp(terms) / (1.0 - alpha);
}

std::vector<double> product_with(const Dist& r, const Dist& sigma) {
  std::vector<double> m(r.size() * sigma.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t a = 0; a < sigma.size(); ++a)
      m[x * sigma.size() + a] = r[x] * sigma[a];
  return m;
}

double mutual_info_objective(const JointDist& j, const Dist& sigma,
                             double alpha) {
  check_same_size(sigma.size(), j.cols());
  return petz_divergence_classical(j.data(), product_with(j.marginal_rows(), sigma),
                                   alpha);
}

namespace {

// log2 g(a) with g(a) = sum_x p(x) p(a|x)^alpha; alpha = 0 counts support.
std::vector<double> log2_sibson_weights(const JointDist& j, double alpha) {
  Dist pr = j.marginal_rows();
  std::vector<double> lg(j.cols());
  for (std::size_t a = 0; a < j.cols(); ++a) {
    Log2Accumulator acc;
    for (std::size_t x = 0; x < j.rows(); ++x) {
      double pxa = j(x, a);
      if (pxa <= 0 || pr[x] <= 0) continue;
      double cond = pxa / pr[x];
      acc.add(std::log2(pr[x]) + (alpha == 0.0 ? 0.0 : alpha * std::log2(cond)));
    }
    lg[a] = acc.value();
  }
  return lg;
}

struct SibsonForm {
  double value;
  std::vector<double> sigma;
};

SibsonForm sibson(const JointDist& j, double alpha) {
  std::vector<double> lg = log2_sibson_weights(j, alpha);
  std::vector<double> sigma(j.cols(), 0.0);
  if (alpha == 0.0) {
    // Limit: -log2 max_a g_0(a); minimizers concentrate on the argmax set.
    double m = *std::max_element(lg.begin(), lg.end());
    std::size_t cnt = 0;
    for (double v : lg) cnt += v == m;
    for (std::size_t a = 0; a < lg.size(); ++a)
      if (lg[a] == m) sigma[a] = 1.0 / static_cast<double>(cnt);
    return {std::max(0.0, -m), sigma};
  }
  std::vector<double> scaled(lg.size());
  for (std::size_t a = 0; a < lg.size(); ++a) scaled[a] = lg[a] / alpha;
  double lse = log2_sum_exp(scaled);
  for (std::size_t a = 0; a < lg.size(); ++a)
    sigma[a] = lg[a] == -kInf ? 0.0 : std::exp2(scaled[a] - lse);
  double s = 0.0;
  for (double v : sigma) s += v;
  for (double& v : sigma) v /= s;
  return {std::max(0.0, alpha / (alpha - 1.0) * lse), sigma};
}

}  // namespace

double sibson_mutual_info(const JointDist& j, double alpha) {
  check_alpha(alpha);
  if (near_one(alpha)) return mutual_info(j);
  return sibson(j, alpha).value;
}

MutualInfo petz_mutual_info(const JointDist& j, double alpha) {
  check_alpha(alpha);
  if (near_one(alpha)) return {mutual_info(j), j.marginal_cols()};
  SibsonForm init = sibson(j, alpha);
  if (alpha == 0.0) return {init.value, Dist(j.col_labels(), init.sigma)};

  // The closed form is only a candidate: re-evaluate it through the direct
  // objective and try to improve it by projected gradient descent.
  std::vector<double> lg = log2_sibson_weights(j, alpha);
  std::vector<std::size_t> supp;
  for (std::size_t a = 0; a < lg.size(); ++a)
    if (lg[a] > -kInf) supp.push_back(a);

  auto embed = [&](const std::vector<double>& s) {
    std::vector<double> w(j.cols(), 0.0);
    for (std::size_t i = 0; i < supp.size(); ++i) w[supp[i]] = s[i];
    return Dist(j.col_labels(), w);
  };
  auto f = [&](const std::vector<double>& s) {
    return mutual_info_objective(j, embed(s), alpha);
  };

  std::vector<double> s(supp.size());
  for (std::size_t i = 0; i < supp.size(); ++i) s[i] = init.sigma[supp[i]];
  double fs = f(s);
  double step = 0.1;
  for (int it = 0; it < 200 && step > 1e-14; ++it) {
    // grad_a f = -sigma(a)^{-alpha} g(a) / (S ln 2), S = sum sigma^{1-alpha} g.
    std::vector<double> lt(supp.size());
    for (std::size_t i = 0; i < supp.size(); ++i)
      lt[i] = s[i] > 0 ? (1 - alpha) * std::log2(s[i]) + lg[supp[i]] : -kInf;
    double lS = log2_sum_exp(lt);
    std::vector<double> grad(supp.size());
    for (std::size_t i = 0; i < supp.size(); ++i) {
      double ls = std::log2(std::max(s[i], 1e-300));
      grad[i] = -std::exp2(-alpha * ls + lg[supp[i]] - lS) / std::log(2.0);
    }
    bool improved = false;
    while (step > 1e-14) {
      std::vector<double> trial(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) trial[i] = s[i] - step * grad[i];
      trial = project_to_simplex(trial);
      double ft = f(trial);
      if (ft < fs - 1e-15) {
        s = std::move(trial);
        fs = ft;
        improved = true;
        step *= 2;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return {std::max(0.0, fs), embed(s)};
}

double expected_cond_renyi(const JointDist& j, const Dist& t, double alpha) {
  check_same_size(t.size(), j.rows());
  Dist pr = j.marginal_rows();
  double e = 0.0;
  for (std::size_t x = 0; x < j.rows(); ++x) {
    if (t[x] <= 0) continue;
    if (pr[x] <= 0)
      throw InvalidInput("expected_cond_renyi: t charges a row with p(x) = 0");
    e += t[x] * renyi_entropy(j.conditional(x), alpha);
  }
  return e;
}

}  // namespace scx
