#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scx/dist.hpp"

namespace scx {

inline constexpr std::uint64_t kTypeBudget = 100'000'000;

class TypeVector {
 public:
  TypeVector() = default;
  explicit TypeVector(std::vector<int> counts);

  const std::vector<int>& counts() const { return counts_; }
  int n() const { return n_; }
  std::size_t k() const { return counts_.size(); }
  int operator[](std::size_t i) const { return counts_[i]; }
  Dist as_dist() const;
  bool operator==(const TypeVector&) const = default;

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

// C(n+k-1, k-1), saturating at UINT64_MAX.
std::uint64_t type_count(int k, int n);
// Throws BudgetExceeded when type_count(k, n) > budget.
void check_type_budget(int k, int n, std::uint64_t budget = kTypeBudget);
// Largest n whose type count fits the budget.
int max_feasible_n(int k, std::uint64_t budget = kTypeBudget);

// Lexicographic stream of compositions of n into k parts, starting at
// (0, ..., 0, n) and ending at (n, 0, ..., 0). Restartable via reset().
class TypeStream {
 public:
  TypeStream(int k, int n);
  // Writes the next composition into counts; false once exhausted.
  bool next(std::vector<int>& counts);
  void reset();

 private:
  int k_, n_;
  std::vector<int> cur_;
  bool started_ = false, done_ = false;
};

std::vector<TypeVector> enumerate_types(int k, int n);

// log2 of n! / prod counts! (log-gamma based).
double log2_type_class_size(const std::vector<int>& counts);
double log2_type_class_size(const TypeVector& t);

// sum_x counts(x) log2 p(x); -inf when the type charges a zero of p.
double log2_iid_prob(const std::vector<int>& counts, const Dist& p);
double log2_iid_prob(const TypeVector& t, const Dist& p);

struct TypeRecord {
  TypeVector type;
  double log2_class_size;
  double log2_iid_prob_per_seq;
  double log2_mass;
};

struct TypeDecomposition {
  int n = 0;
  std::vector<std::string> alphabet;
  std::vector<TypeRecord> records;
};

TypeDecomposition decompose(const Dist& p, int n);

}  // namespace scx
