#include "scx/types.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "scx/logmath.hpp"

namespace scx {

TypeVector::TypeVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw InvalidInput("TypeVector: empty alphabet");
  for (int c : counts_)
    if (c < 0) throw InvalidInput("TypeVector: negative count");
  n_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

Dist TypeVector::as_dist() const {
  std::vector<double> w(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i)
    w[i] = n_ > 0 ? static_cast<double>(counts_[i]) / n_ : 1.0 / counts_.size();
  return Dist(std::move(w));
}

std::uint64_t type_count(int k, int n) {
  if (k < 1 || n < 0) throw InvalidInput("type_count: need k >= 1, n >= 0");
  // C(n+k-1, k-1) built incrementally; each partial product is an integer.
  unsigned __int128 c = 1;
  for (int i = 1; i < k; ++i) {
    c = c * static_cast<unsigned>(n + i) / static_cast<unsigned>(i);
    if (c > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

void check_type_budget(int k, int n, std::uint64_t budget) {
  std::uint64_t c = type_count(k, n);
  if (c > budget)
    throw BudgetExceeded("type enumeration over " + std::to_string(k) +
                         " symbols at n=" + std::to_string(n) + " needs " +
                         std::to_string(c) + " types (budget " +
                         std::to_string(budget) + "); max feasible n is " +
                         std::to_string(max_feasible_n(k, budget)));
}

int max_feasible_n(int k, std::uint64_t budget) {
  int n = 0;
  while (n < 1'000'000 && type_count(k, n + 1) <= budget) ++n;
  return n;
}

TypeStream::TypeStream(int k, int n) : k_(k), n_(n) {
  if (k < 1 || n < 0) throw InvalidInput("TypeStream: need k >= 1, n >= 0");
  reset();
}

void TypeStream::reset() {
  cur_.assign(k_, 0);
  cur_[k_ - 1] = n_;
  started_ = false;
  done_ = false;
}

bool TypeStream::next(std::vector<int>& counts) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    counts = cur_;
    return true;
  }
  // Rightmost j <= k-2 whose tail holds mass: bump it, move the rest to the end.
  int tail = 0, j = -1;
  for (int i = k_ - 1; i >= 1; --i) {
    tail += cur_[i];
    if (tail > 0) {
      j = i - 1;
      break;
    }
  }
  if (j < 0) {
    done_ = true;
    return false;
  }
  cur_[j] += 1;
  for (int i = j + 1; i < k_; ++i) cur_[i] = 0;
  cur_[k_ - 1] = tail - 1;
  counts = cur_;
  return true;
}

std::vector<TypeVector> enumerate_types(int k, int n) {
  check_type_budget(k, n);
  std::vector<TypeVector> out;
  out.reserve(type_count(k, n));
  TypeStream s(k, n);
  std::vector<int> c;
  while (s.next(c)) out.emplace_back(c);
  return out;
}

double log2_type_class_size(const std::vector<int>& counts) {
  int n = 0;
  double l = 0.0;
  for (int c : counts) {
    n += c;
    l -= std::lgamma(c + 1.0);
  }
  l += std::lgamma(n + 1.0);
  return std::max(0.0, l / std::log(2.0));
}

double log2_type_class_size(const TypeVector& t) {
  return log2_type_class_size(t.counts());
}

double log2_iid_prob(const std::vector<int>& counts, const Dist& p) {
  if (counts.size() != p.size()) throw InvalidInput("log2_iid_prob: alphabet mismatch");
  double l = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (p[i] <= 0) return -kInf;
    l += counts[i] * std::log2(p[i]);
  }
  return l;
}

double log2_iid_prob(const TypeVector& t, const Dist& p) {
  return log2_iid_prob(t.counts(), p);
}

TypeDecomposition decompose(const Dist& p, int n) {
  TypeDecomposition d;
  d.n = n;
  d.alphabet = p.labels();
  for (TypeVector& t : enumerate_types(static_cast<int>(p.size()), n)) {
    double lc = log2_type_class_size(t);
    double lp = log2_iid_prob(t, p);
    d.records.push_back({std::move(t), lc, lp, lc + lp});
  }
  return d;
}

}  // namespace scx
