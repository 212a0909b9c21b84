#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace scx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration would exceed its work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Terms with x == 0 contribute 0 (0 log 0 = 0).
inline double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

// log2 of sum 2^{x_i}. Empty or all -inf gives -inf.
double log2_sum_exp(std::span<const double> xs);

// log2(2^a + 2^b).
double log2_add(double a, double b);

// log2(1 - 2^x) for x <= 0.
double log2_one_minus_exp2(double x);

// Streaming log2-sum-exp with a rescaled, compensated running sum.
class Log2Accumulator {
 public:
  void add(double x);
  double value() const;
  bool empty() const { return max_ == -kInf; }

 private:
  double max_ = -kInf;
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace scx
