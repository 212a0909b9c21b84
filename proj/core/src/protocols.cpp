#include "scx/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scx/entropy.hpp"
#include "scx/logmath.hpp"
#include "scx/rng.hpp"

namespace scx {

std::uint64_t sequence_count(std::size_t k, int n, std::uint64_t budget) {
  if (n < 0) throw InvalidInput("sequence_count: n must be >= 0");
  std::uint64_t c = 1;
  for (int i = 0; i < n; ++i) {
    if (k != 0 && c > budget / k) {
      throw BudgetExceeded("sequence table " + std::to_string(k) + "^" +
                           std::to_string(n) + " exceeds budget " +
                           std::to_string(budget));
    }
    c *= k;
  }
  if (c > budget)
    throw BudgetExceeded("sequence table exceeds budget " + std::to_string(budget));
  return c;
}

std::vector<int> decode_sequence(std::uint64_t index, std::size_t k, int n) {
  std::vector<int> s(n);
  for (int i = n - 1; i >= 0; --i) {
    s[i] = static_cast<int>(index % k);
    index /= k;
  }
  return s;
}

FiniteFunction::FiniteFunction(std::uint32_t zsize, std::vector<std::uint32_t> table)
    : zsize_(zsize), table_(std::move(table)) {
  if (zsize_ == 0) throw InvalidInput("FiniteFunction: empty codomain");
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= zsize_)
      throw InvalidInput("FiniteFunction: value " + std::to_string(table_[i]) +
                         " at " + std::to_string(i) + " outside codomain");
}

namespace {

// p^n over all sequences, first symbol most significant.
std::vector<double> iid_table(const Dist& p, int n) {
  sequence_count(p.size(), n);
  const std::size_t k = p.size();
  std::vector<double> cur{1.0};
  for (int i = 0; i < n; ++i) {
    std::vector<double> next(cur.size() * k);
    for (std::size_t s = 0; s < cur.size(); ++s)
      for (std::size_t a = 0; a < k; ++a) next[s * k + a] = cur[s] * p[a];
    cur.swap(next);
  }
  return cur;
}

void check_domain(const FiniteFunction& f, std::uint64_t expected) {
  if (f.domain_size() != expected)
    throw InvalidInput("hash domain size " + std::to_string(f.domain_size()) +
                       " does not match " + std::to_string(expected) + " sequences");
}

}  // namespace

Dist apply_hash(const Dist& p, const FiniteFunction& f, int n) {
  std::vector<double> pn = iid_table(p, n);
  check_domain(f, pn.size());
  std::vector<double> q(f.zsize(), 0.0);
  for (std::size_t i = 0; i < pn.size(); ++i) q[f(i)] += pn[i];
  return Dist(std::move(q), p.subnormalized());
}

JointDist apply_hash(const JointDist& j, const FiniteFunction& f, int n) {
  sequence_count(j.rows() * j.cols(), n);
  JointDist jn = j.tensor_power(n);
  check_domain(f, jn.cols());
  std::vector<double> h(jn.rows() * f.zsize(), 0.0);
  for (std::size_t x = 0; x < jn.rows(); ++x)
    for (std::size_t a = 0; a < jn.cols(); ++a) h[x * f.zsize() + f(a)] += jn(x, a);
  return JointDist(jn.row_labels(), default_labels(f.zsize()), std::move(h));
}

namespace {

// 1 - F = (1/2) sum_{x,z} (sqrt h(x,z) - sqrt(p(x) / |Z|))^2, computed without
// the cancellation in 1 - sum sqrt(...).
double hashed_one_minus_fidelity(const JointDist& jn, const FiniteFunction& f,
                                 std::vector<double>& scratch) {
  const std::size_t z = f.zsize();
  const double inv = 1.0 / static_cast<double>(z);
  double s = 0.0;
  scratch.assign(z, 0.0);
  for (std::size_t x = 0; x < jn.rows(); ++x) {
    std::fill(scratch.begin(), scratch.end(), 0.0);
    double px = 0.0;
    for (std::size_t a = 0; a < jn.cols(); ++a) {
      scratch[f(a)] += jn(x, a);
      px += jn(x, a);
    }
    double ref = std::sqrt(px * inv);
    for (double h : scratch) {
      double d = std::sqrt(h) - ref;
      s += d * d;
    }
  }
  return std::clamp(0.5 * s, 0.0, 1.0);
}

double distance_from_omf(double omf) { return std::sqrt(omf * (2.0 - omf)); }

}  // namespace

double pa_fidelity(const JointDist& j, const FiniteFunction& f, int n) {
  sequence_count(j.rows() * j.cols(), n);
  JointDist jn = j.tensor_power(n);
  check_domain(f, jn.cols());
  std::vector<double> scratch;
  return 1.0 - hashed_one_minus_fidelity(jn, f, scratch);
}

double pa_performance(const JointDist& j, const FiniteFunction& f, int n) {
  sequence_count(j.rows() * j.cols(), n);
  JointDist jn = j.tensor_power(n);
  check_domain(f, jn.cols());
  std::vector<double> scratch;
  return distance_from_omf(hashed_one_minus_fidelity(jn, f, scratch));
}

FunctionOptimum pa_exhaustive_min(const JointDist& j, int n, std::uint32_t zsize) {
  if (zsize == 0) throw InvalidInput("pa_exhaustive_min: zsize must be >= 1");
  sequence_count(j.rows() * j.cols(), n);
  JointDist jn = j.tensor_power(n);
  const std::uint64_t domain = jn.cols();
  // zsize^domain <= budget
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < domain; ++i) {
    if (count > kFunctionBudget / zsize)
      throw BudgetExceeded("pa_exhaustive_min: " + std::to_string(zsize) + "^" +
                           std::to_string(domain) + " functions exceeds budget");
    count *= zsize;
  }
  std::vector<std::uint32_t> table(domain, 0);
  std::vector<std::uint32_t> best = table;
  double best_omf = kInf;
  std::vector<double> scratch;
  std::uint64_t searched = 0;
  while (true) {
    FiniteFunction f(zsize, table);
    double omf = hashed_one_minus_fidelity(jn, f, scratch);
    ++searched;
    if (omf < best_omf) {
      best_omf = omf;
      best = table;
    }
    std::uint64_t i = 0;
    while (i < domain && ++table[i] == zsize) table[i++] = 0;
    if (i == domain) break;
  }
  return {FiniteFunction(zsize, best), distance_from_omf(best_omf), searched};
}

double pa_fidelity_bound(const JointDist& j, int n, std::uint32_t zsize,
                         double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw InvalidInput("pa_fidelity_bound: alpha must lie in (1/2, 1)");
  Dist pr = j.marginal_rows();
  std::vector<double> h(j.rows(), 0.0);
  for (std::size_t x = 0; x < j.rows(); ++x)
    if (pr[x] > 0) h[x] = renyi_entropy(j.conditional(x), alpha);
  const double k = (1 - alpha) / (2 * alpha);
  const double lz = std::log2(static_cast<double>(zsize));
  Log2Accumulator acc;
  for (const TypeRecord& rec : decompose(pr, n).records) {
    if (rec.log2_mass == -kInf) continue;
    double eh = 0.0;
    for (std::size_t x = 0; x < j.rows(); ++x) eh += rec.type[x] * h[x];
    acc.add(rec.log2_mass + k * (eh - lz));
  }
  return std::exp2(acc.value());
}

namespace {

bool has_type(const std::vector<int>& seq, const TypeVector& t,
              std::vector<int>& scratch) {
  scratch.assign(t.k(), 0);
  for (int s : seq) ++scratch[s];
  return scratch == t.counts();
}

void check_type(const Dist& p, int n, const TypeVector& t) {
  if (t.k() != p.size() || t.n() != n)
    throw InvalidInput("type does not match alphabet size and n");
}

}  // namespace

std::vector<std::uint64_t> ir_sequence_order(std::size_t k, int n, const TypeVector& t) {
  std::uint64_t total = sequence_count(k, n);
  std::vector<std::uint64_t> in, out;
  std::vector<int> scratch;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (has_type(decode_sequence(i, k, n), t, scratch)) in.push_back(i);
    else out.push_back(i);
  }
  in.insert(in.end(), out.begin(), out.end());
  return in;
}

namespace {

struct CaseData {
  std::uint64_t class_size;
  double log2_seq;  // log2 p^n(x) for x in T_t
  double log2_z;
};

CaseData case_data(const Dist& p, int n, std::uint32_t zsize, const TypeVector& t) {
  check_type(p, n, t);
  if (zsize == 0) throw InvalidInput("zsize must be >= 1");
  double lc = log2_type_class_size(t);
  return {static_cast<std::uint64_t>(std::llround(std::exp2(lc))), log2_iid_prob(t, p),
          std::log2(static_cast<double>(zsize))};
}

constexpr double kCaseTol = 1e-12;

}  // namespace

int ir_case(const Dist& p, int n, std::uint32_t zsize, const TypeVector& t) {
  CaseData d = case_data(p, n, zsize, t);
  if (d.log2_seq == -kInf) return 0;
  if (d.log2_seq >= -d.log2_z - kCaseTol) return 3;
  return d.class_size < zsize ? 1 : 2;
}

IrConstruction ir_construct(const Dist& p, int n, std::uint32_t zsize,
                            const TypeVector& t, int which) {
  CaseData d = case_data(p, n, zsize, t);
  int actual = ir_case(p, n, zsize, t);
  if (actual != which)
    throw InvalidInput("ir_construct: case " + std::to_string(which) +
                       " preconditions do not hold (type falls in case " +
                       std::to_string(actual) + ")");
  std::vector<std::uint64_t> order = ir_sequence_order(p.size(), n, t);
  const std::uint64_t T = d.class_size, M = zsize;
  std::vector<std::uint32_t> table(order.size());
  IrConstruction out{FiniteFunction(1, {}), which, T, 0, 0, false};
  // Position i is 1-based; symbols are 1-based in the rule and stored 0-based.
  auto assign = [&](std::uint64_t pos, std::uint64_t sym) {
    table[order[pos - 1]] = static_cast<std::uint32_t>(sym - 1);
  };
  if (which == 1) {
    for (std::uint64_t i = 1; i <= order.size(); ++i) {
      std::uint64_t s = i <= T ? i : i + 1;
      if (s > M) {
        s = M;
        out.clamped = true;
      }
      assign(i, s);
    }
  } else if (which == 2) {
    double e = -d.log2_z - d.log2_seq;
    std::uint64_t m = static_cast<std::uint64_t>(std::floor(std::exp2(e) * (1 + 1e-12)));
    m = std::max<std::uint64_t>(m, 1);
    std::uint64_t k = T / m;
    if (k + 1 > M)
      throw InvalidInput("ir_construct: case 2 needs k + 1 <= |Z| (k = " +
                         std::to_string(k) + ")");
    out.m = m;
    out.k = k;
    for (std::uint64_t i = 1; i <= order.size(); ++i)
      assign(i, i <= k * m ? (i + m - 1) / m : k + 1);
  } else {
    if (order.size() > T && T + 1 > M)
      throw InvalidInput("ir_construct: case 3 needs |T_t| + 1 <= |Z|");
    for (std::uint64_t i = 1; i <= order.size(); ++i) assign(i, i <= T ? i : T + 1);
  }
  out.f = FiniteFunction(zsize, std::move(table));
  return out;
}

double ir_performance(const Dist& p, int n, const FiniteFunction& f) {
  Dist q = apply_hash(p, f, n);
  return total_variation(q, Dist::uniform(f.zsize()));
}

double ir_case_bound(const Dist& p, int n, std::uint32_t zsize, const TypeVector& t,
                     int which) {
  CaseData d = case_data(p, n, zsize, t);
  const double poly = -static_cast<double>(p.size()) * std::log2(n + 1.0);
  double nh = n * shannon_entropy(t.as_dist());
  if (which == 1 || which == 2) {
    double nd = -d.log2_seq - nh;  // n D(t||p)
    return std::exp2(poly - nd);
  }
  if (which == 3) return std::exp2(poly + nh - d.log2_z);
  throw InvalidInput("ir_case_bound: case must be 1, 2 or 3");
}

double SplitParams::bits_communicated() const {
  return std::log2(static_cast<double>(copies) + 1.0);
}

SplitParams split_params(int n, double r) {
  if (n < 1) throw InvalidInput("split_params: n must be >= 1");
  double nr = n * r;
  double rn = std::round(nr);
  if (std::abs(nr - rn) > 1e-9 || rn < 1 || rn > 62)
    throw InvalidInput("split_params: 2^{nr} must be an integer in [2, 2^62]");
  std::uint64_t m = (std::uint64_t{1} << static_cast<int>(rn)) - 1;
  if (m < static_cast<std::uint64_t>(n))
    throw InvalidInput("split_params: infeasible n (2^{nr} - 1 < n gives K_n < 0)");
  SplitParams s;
  s.r_bits = std::log2(static_cast<double>(m));
  s.k_bits = s.r_bits - std::log2(static_cast<double>(n));
  s.rate = r;
  s.n = n;
  s.copies = m;
  s.lambda = std::exp(static_cast<double>(m) * std::log1p(-std::exp2(-s.k_bits)));
  return s;
}

SplitParams split_params_from_bits(double k_bits, double r_bits) {
  if (!(k_bits >= 0) || !(r_bits >= 0) || r_bits > 62)
    throw InvalidInput("split_params_from_bits: need K >= 0 and 0 <= R <= 62");
  double c = std::exp2(r_bits);
  if (std::abs(c - std::round(c)) > 1e-9 * c)
    throw InvalidInput("split_params_from_bits: 2^R must be an integer");
  SplitParams s;
  s.k_bits = k_bits;
  s.r_bits = r_bits;
  s.rate = 0.0;
  s.n = 0;
  s.copies = static_cast<std::uint64_t>(std::llround(c));
  s.lambda = k_bits == 0 ? (s.copies == 0 ? 1.0 : 0.0)
                         : std::exp(c * std::log1p(-std::exp2(-k_bits)));
  return s;
}

namespace {

void check_caps(const JointDist& pp, const Dist& q, double k_bits) {
  if (q.size() != pp.cols()) throw InvalidInput("split: q alphabet mismatch");
  Dist px = pp.marginal_rows();
  const double scale = std::exp2(k_bits);
  for (std::size_t x = 0; x < pp.rows(); ++x)
    for (std::size_t y = 0; y < pp.cols(); ++y) {
      double cap = scale * px[x] * q[y];
      if (pp(x, y) > cap * (1 + 1e-12) + 1e-15)
        throw InvalidInput("split: cap violated at (" + std::to_string(x) + ", " +
                           std::to_string(y) + "): P'=" + std::to_string(pp(x, y)) +
                           " > 2^K P_X q = " + std::to_string(cap));
    }
}

}  // namespace

JointDist split_exact_output(const JointDist& pprime, const Dist& q,
                             const SplitParams& params) {
  check_caps(pprime, q, params.k_bits);
  Dist px = pprime.marginal_rows();
  const double l = params.lambda;
  std::vector<double> out(pprime.rows() * pprime.cols(), 0.0);
  for (std::size_t x = 0; x < pprime.rows(); ++x)
    for (std::size_t y = 0; y < pprime.cols(); ++y)
      out[x * pprime.cols() + y] = (1 - l) * pprime(x, y) + l * px[x] * q[y];
  return JointDist(pprime.row_labels(), pprime.col_labels(), std::move(out));
}

namespace {

std::size_t sample(const std::vector<double>& cdf, double u) {
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cdf.begin());
  return std::min(i, cdf.size() - 1);
}

std::vector<double> cdf_of(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) c[i] = (s += w[i]);
  for (double& v : c) v /= s;
  return c;
}

constexpr std::uint64_t kMaxIndexHistogram = 1 << 20;

}  // namespace

SplitSimulation split_simulate(const JointDist& pprime, const Dist& q,
                               const SplitParams& params, std::uint64_t seed,
                               std::uint64_t trials) {
  check_caps(pprime, q, params.k_bits);
  if (trials == 0) throw InvalidInput("split_simulate: trials must be >= 1");
  const std::size_t X = pprime.rows(), Y = pprime.cols();
  Dist px = pprime.marginal_rows();
  std::vector<double> cx = cdf_of(px.weights());
  std::vector<double> cq = cdf_of(q.weights());
  // Acceptance probability P'(y|x) / (2^K q(y)).
  std::vector<double> accept(X * Y, 0.0);
  const double scale = std::exp2(params.k_bits);
  for (std::size_t x = 0; x < X; ++x)
    for (std::size_t y = 0; y < Y; ++y)
      if (px[x] > 0 && q[y] > 0)
        accept[x * Y + y] = std::min(1.0, pprime(x, y) / (px[x] * scale * q[y]));

  std::vector<std::uint64_t> counts(X * Y, 0);
  std::vector<std::uint64_t> index;
  if (params.copies <= kMaxIndexHistogram) index.assign(params.copies + 1, 0);
  std::uint64_t failures = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, trial);
    std::size_t x = sample(cx, rng.uniform());
    std::size_t y = 0;
    std::uint64_t hit = 0;
    for (std::uint64_t i = 1; i <= params.copies; ++i) {
      std::size_t cand = sample(cq, rng.uniform());
      if (rng.uniform() < accept[x * Y + cand]) {
        y = cand;
        hit = i;
        break;
      }
    }
    if (hit == 0) {
      // Nothing accepted: Bob falls back to a fresh draw from q.
      y = sample(cq, rng.uniform());
      ++failures;
    }
    ++counts[x * Y + y];
    if (!index.empty()) ++index[hit == 0 ? params.copies : hit - 1];
  }
  std::vector<double> emp(X * Y);
  for (std::size_t i = 0; i < emp.size(); ++i)
    emp[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  return {JointDist(pprime.row_labels(), pprime.col_labels(), std::move(emp)),
          std::move(index), failures, trials, seed};
}

double total_variation(const JointDist& a, const JointDist& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidInput("total_variation: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) s += std::abs(a.data()[i] - b.data()[i]);
  return 0.5 * s;
}

double total_variation(const Dist& a, const Dist& b) {
  if (a.size() != b.size()) throw InvalidInput("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace scx
