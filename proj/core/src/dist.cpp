#include "scx/dist.hpp"

#include <cmath>
#include <numeric>

#include "scx/logmath.hpp"

namespace scx {

namespace {

void check_weights(const std::vector<double>& w, bool subnormalized,
                   const char* what) {
  if (w.empty()) throw InvalidInput(std::string(what) + ": empty alphabet");
  double s = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw InvalidInput(std::string(what) + ": weights must be finite and >= 0");
    s += x;
  }
  if (subnormalized ? s > 1.0 + kSumTol : std::abs(s - 1.0) > kSumTol)
    throw InvalidInput(std::string(what) + ": weights sum to " +
                       std::to_string(s));
}

}  // namespace

std::vector<std::string> default_labels(std::size_t k) {
  std::vector<std::string> l(k);
  for (std::size_t i = 0; i < k; ++i) l[i] = std::to_string(i);
  return l;
}

Dist::Dist(std::vector<double> weights, bool subnormalized)
    : weights_(std::move(weights)), subnormalized_(subnormalized) {
  labels_ = default_labels(weights_.size());
  check_weights(weights_, subnormalized_, "Dist");
}

Dist::Dist(std::vector<std::string> labels, std::vector<double> weights,
           bool subnormalized)
    : labels_(std::move(labels)),
      weights_(std::move(weights)),
      subnormalized_(subnormalized) {
  if (labels_.size() != weights_.size())
    throw InvalidInput("Dist: label/weight count mismatch");
  check_weights(weights_, subnormalized_, "Dist");
}

Dist Dist::uniform(std::size_t k) {
  return Dist(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Dist Dist::point(std::size_t k, std::size_t at) {
  std::vector<double> w(k, 0.0);
  w.at(at) = 1.0;
  return Dist(std::move(w));
}

double Dist::total() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::size_t Dist::support_size() const {
  std::size_t c = 0;
  for (double w : weights_) c += w > 0;
  return c;
}

JointDist::JointDist(std::size_t rows, std::size_t cols,
                     std::vector<double> row_major)
    : JointDist(default_labels(rows), default_labels(cols),
                std::move(row_major)) {}

JointDist::JointDist(std::vector<std::string> row_labels,
                     std::vector<std::string> col_labels,
                     std::vector<double> row_major)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      rows_(row_labels_.size()),
      cols_(col_labels_.size()),
      m_(std::move(row_major)) {
  if (m_.size() != rows_ * cols_)
    throw InvalidInput("JointDist: matrix shape does not match labels");
  check_weights(m_, false, "JointDist");
}

JointDist JointDist::from_rows(const std::vector<std::vector<double>>& m) {
  if (m.empty()) throw InvalidInput("JointDist: no rows");
  std::vector<double> flat;
  for (const auto& row : m) {
    if (row.size() != m[0].size()) throw InvalidInput("JointDist: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return JointDist(m.size(), m[0].size(), std::move(flat));
}

JointDist JointDist::product(const Dist& r, const Dist& a) {
  std::vector<double> m(r.size() * a.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) m[x * a.size() + y] = r[x] * a[y];
  return JointDist(r.labels(), a.labels(), std::move(m));
}

Dist JointDist::marginal_rows() const {
  std::vector<double> w(rows_, 0.0);
  for (std::size_t x = 0; x < rows_; ++x)
    for (std::size_t a = 0; a < cols_; ++a) w[x] += (*this)(x, a);
  return Dist(row_labels_, std::move(w));
}

Dist JointDist::marginal_cols() const {
  std::vector<double> w(cols_, 0.0);
  for (std::size_t x = 0; x < rows_; ++x)
    for (std::size_t a = 0; a < cols_; ++a) w[a] += (*this)(x, a);
  return Dist(col_labels_, std::move(w));
}

Dist JointDist::conditional(std::size_t x) const {
  double px = 0.0;
  for (std::size_t a = 0; a < cols_; ++a) px += (*this)(x, a);
  if (px <= 0.0)
    throw InvalidInput("JointDist: conditional undefined at zero-mass row " +
                       row_labels_.at(x));
  std::vector<double> w(cols_);
  for (std::size_t a = 0; a < cols_; ++a) w[a] = (*this)(x, a) / px;
  // Renormalize the rounding residue so the Dist invariant holds exactly.
  double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= s;
  return Dist(col_labels_, std::move(w));
}

JointDist JointDist::tensor_power(int n) const {
  if (n < 1) throw InvalidInput("tensor_power: n must be >= 1");
  std::size_t R = 1, C = 1;
  for (int i = 0; i < n; ++i) {
    R *= rows_;
    C *= cols_;
    if (R * C > 10'000'000) throw BudgetExceeded("tensor_power: too large");
  }
  std::vector<double> m(R * C);
  for (std::size_t xr = 0; xr < R; ++xr) {
    for (std::size_t ac = 0; ac < C; ++ac) {
      double v = 1.0;
      std::size_t xs = xr, as = ac;
      for (int i = 0; i < n; ++i) {
        v *= (*this)(xs % rows_, as % cols_);
        xs /= rows_;
        as /= cols_;
      }
      m[xr * C + ac] = v;
    }
  }
  double s = std::accumulate(m.begin(), m.end(), 0.0);
  for (double& v : m) v /= s;
  return JointDist(R, C, std::move(m));
}

JointDist JointDist::transposed() const {
  std::vector<double> m(m_.size());
  for (std::size_t x = 0; x < rows_; ++x)
    for (std::size_t a = 0; a < cols_; ++a) m[a * rows_ + x] = (*this)(x, a);
  return JointDist(col_labels_, row_labels_, std::move(m));
}

SchmidtState::SchmidtState(Dist p) : schmidt(std::move(p)) {
  if (schmidt.subnormalized())
    throw InvalidInput("SchmidtState: distribution must be normalized");
}

}  // namespace scx
