#include "scx/logmath.hpp"

#include <algorithm>
#include <vector>

namespace scx {

namespace {

// Pairwise sum keeps the rounding error at O(log n) and the order fixed.
double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace

double log2_sum_exp(std::span<const double> xs) {
  double m = -kInf;
  for (double x : xs) m = std::max(m, x);
  if (m == -kInf) return -kInf;
  if (m == kInf) return kInf;
  std::vector<double> shifted(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) shifted[i] = std::exp2(xs[i] - m);
  return m + std::log2(pairwise_sum(shifted.data(), shifted.size()));
}

double log2_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -kInf) return a;
  return a + std::log2(1.0 + std::exp2(b - a));
}

double log2_one_minus_exp2(double x) {
  if (x > 0) throw InvalidInput("log2_one_minus_exp2: argument must be <= 0");
  if (x == -kInf) return 0.0;
  // log1p branch is accurate once 2^x is small.
  if (x < -1.0) return std::log1p(-std::exp2(x)) / std::log(2.0);
  return std::log2(-std::expm1(x * std::log(2.0)));
}

void Log2Accumulator::add(double x) {
  if (x == -kInf) return;
  if (x > max_) {
    double scale = max_ == -kInf ? 0.0 : std::exp2(max_ - x);
    sum_ *= scale;
    comp_ *= scale;
    max_ = x;
  }
  double term = std::exp2(x - max_);
  double t = sum_ + term;
  if (std::abs(sum_) >= std::abs(term))
    comp_ += (sum_ - t) + term;
  else
    comp_ += (term - t) + sum_;
  sum_ = t;
}

double Log2Accumulator::value() const {
  if (max_ == -kInf) return -kInf;
  return max_ + std::log2(sum_ + comp_);
}

}  // namespace scx
