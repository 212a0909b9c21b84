#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace scx {

inline constexpr double kSumTol = 1e-12;

// Probability vector over a labeled finite alphabet.
class Dist {
 public:
  Dist() = default;
  explicit Dist(std::vector<double> weights, bool subnormalized = false);
  Dist(std::vector<std::string> labels, std::vector<double> weights,
       bool subnormalized = false);

  static Dist uniform(std::size_t k);
  static Dist point(std::size_t k, std::size_t at);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool subnormalized() const { return subnormalized_; }
  double total() const;
  std::size_t support_size() const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
  bool subnormalized_ = false;
};

// p(x, a) with x indexing rows (alphabet R) and a indexing columns (alphabet A).
class JointDist {
 public:
  JointDist() = default;
  JointDist(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  JointDist(std::vector<std::string> row_labels,
            std::vector<std::string> col_labels,
            std::vector<double> row_major);
  static JointDist from_rows(const std::vector<std::vector<double>>& m);
  // Independent product r(x) a(y).
  static JointDist product(const Dist& r, const Dist& a);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t x, std::size_t a) const {
    return m_[x * cols_ + a];
  }
  const std::vector<double>& data() const { return m_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  Dist marginal_rows() const;
  Dist marginal_cols() const;
  // p(.|x); throws when p(x) = 0.
  Dist conditional(std::size_t x) const;
  // rows and cols become sequences over the original alphabets, first symbol
  // most significant.
  JointDist tensor_power(int n) const;
  JointDist transposed() const;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> m_;
};

// Pure bipartite state given by its Schmidt distribution.
struct SchmidtState {
  Dist schmidt;
  explicit SchmidtState(Dist p);
};

std::vector<std::string> default_labels(std::size_t k);

}  // namespace scx
