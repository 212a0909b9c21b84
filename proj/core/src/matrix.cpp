#include "scx/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "scx/entropy.hpp"
#include "scx/logmath.hpp"
#include "scx/optimize.hpp"

namespace scx {

HermitianOp::HermitianOp(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw InvalidInput("HermitianOp: matrix must be square and nonempty");
  if (m.rows() > kMaxOpDim) throw InvalidInput("HermitianOp: dimension above 32");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInput("HermitianOp: matrix is not Hermitian");
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOp HermitianOp::identity(int d) {
  return HermitianOp(CMatrix::Identity(d, d));
}

HermitianOp HermitianOp::diagonal(std::span<const double> d) {
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianOp(m);
}

HermitianOp HermitianOp::projector(const CVector& v) {
  return HermitianOp(v * v.adjoint());
}

bool HermitianOp::is_psd(double tol) const { return min_eigenvalue(*this) >= -tol; }

HermitianOp HermitianOp::operator+(const HermitianOp& o) const {
  return HermitianOp(m_ + o.m_);
}
HermitianOp HermitianOp::operator-(const HermitianOp& o) const {
  return HermitianOp(m_ - o.m_);
}
HermitianOp HermitianOp::operator*(double s) const { return HermitianOp(m_ * s); }

Spectrum eig(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  if (es.info() != Eigen::Success) throw Error("eig: eigensolver failed");
  const int d = h.dim();
  Spectrum s{Eigen::VectorXd(d), CMatrix(d, d)};
  // Eigen returns ascending order.
  for (int i = 0; i < d; ++i) {
    s.values(i) = es.eigenvalues()(d - 1 - i);
    s.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  return s;
}

double min_eigenvalue(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(h.dim() - 1);
}

namespace {

CMatrix spectral(const Spectrum& s, const std::function<double(double)>& f) {
  Eigen::VectorXd fv(s.values.size());
  for (int i = 0; i < s.values.size(); ++i) fv(i) = f(s.values(i));
  return s.vectors * fv.asDiagonal() * s.vectors.adjoint();
}

CMatrix power_of(const Spectrum& s, double p) {
  return spectral(s, [p](double x) { return x > kEigClamp ? std::pow(x, p) : 0.0; });
}

void require_psd(const HermitianOp& h, const char* what) {
  if (!h.is_psd()) throw InvalidInput(std::string(what) + ": operator is not PSD");
}

// Projector onto the kernel of a PSD operator.
CMatrix kernel_projector(const Spectrum& s) {
  return spectral(s, [](double x) { return x > kEigClamp ? 0.0 : 1.0; });
}

}  // namespace

HermitianOp apply_function(const HermitianOp& h,
                           const std::function<double(double)>& f) {
  return HermitianOp(spectral(eig(h), f));
}

HermitianOp power(const HermitianOp& h, double p) {
  return HermitianOp(power_of(eig(h), p));
}

HermitianOp kron(const HermitianOp& a, const HermitianOp& b) {
  const int da = a.dim(), db = b.dim();
  CMatrix m(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  return HermitianOp(m);
}

HermitianOp partial_trace_a(const HermitianOp& h, int da, int db) {
  if (h.dim() != da * db) throw InvalidInput("partial trace: dimension mismatch");
  CMatrix m = CMatrix::Zero(db, db);
  for (int i = 0; i < da; ++i) m += h.matrix().block(i * db, i * db, db, db);
  return HermitianOp(m);
}

HermitianOp partial_trace_b(const HermitianOp& h, int da, int db) {
  if (h.dim() != da * db) throw InvalidInput("partial trace: dimension mismatch");
  CMatrix m(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) m(i, j) = h.matrix().block(i * db, j * db, db, db).trace();
  return HermitianOp(m);
}

double trace_norm(const HermitianOp& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double fidelity(const HermitianOp& r, const HermitianOp& s) {
  require_psd(r, "fidelity");
  require_psd(s, "fidelity");
  CMatrix sr = power_of(eig(r), 0.5);
  CMatrix m = sr * s.matrix() * sr;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()),
                                            Eigen::EigenvaluesOnly);
  double f = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    f += std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  return f;
}

double trace_distance(const HermitianOp& r, const HermitianOp& s) {
  return 0.5 * trace_norm(r - s);
}

double generalized_trace_distance(const HermitianOp& r, const HermitianOp& s) {
  return trace_distance(r, s) + 0.5 * std::abs(r.trace() - s.trace());
}

double purified_distance(const HermitianOp& r, const HermitianOp& s) {
  double f = fidelity(r, s) + std::sqrt(std::max(0.0, (1 - r.trace()) * (1 - s.trace())));
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

bool support_contained(const HermitianOp& r, const HermitianOp& s) {
  CMatrix k = kernel_projector(eig(s));
  double leak = (k * r.matrix()).trace().real();
  return leak <= 1e-12 * std::max(1.0, r.trace());
}

double umegaki_relative_entropy(const HermitianOp& r, const HermitianOp& s) {
  require_psd(r, "relative entropy");
  require_psd(s, "relative entropy");
  if (!support_contained(r, s)) return kInf;
  auto lg = [](double x) { return x > kEigClamp ? std::log2(x) : 0.0; };
  CMatrix lr = spectral(eig(r), lg), ls = spectral(eig(s), lg);
  return (r.matrix() * (lr - ls)).trace().real() / r.trace();
}

double petz_divergence(const HermitianOp& r, const HermitianOp& s, double alpha) {
  if (!(alpha > 0)) throw InvalidInput("Petz divergence needs alpha > 0");
  if (near_one(alpha)) return umegaki_relative_entropy(r, s);
  require_psd(r, "petz_divergence");
  require_psd(s, "petz_divergence");
  if (alpha > 1 && !support_contained(r, s)) return kInf;
  CMatrix ra = power_of(eig(r), alpha), sb = power_of(eig(s), 1 - alpha);
  double q = (ra * sb).trace().real();
  if (q <= 1e-300) return kInf;
  return (std::log2(q) - std::log2(r.trace())) / (alpha - 1);
}

double sandwiched_divergence(const HermitianOp& r, const HermitianOp& s,
                             double alpha) {
  if (!(alpha > 0)) throw InvalidInput("sandwiched divergence needs alpha > 0");
  if (near_one(alpha)) return umegaki_relative_entropy(r, s);
  require_psd(r, "sandwiched_divergence");
  require_psd(s, "sandwiched_divergence");
  if (alpha > 1 && !support_contained(r, s)) return kInf;
  CMatrix sg = power_of(eig(s), (1 - alpha) / (2 * alpha));
  CMatrix m = sg * r.matrix() * sg;
  Spectrum sm = eig(HermitianOp(0.5 * (m + m.adjoint())));
  // log2 sum lambda^alpha, scaled by the top eigenvalue (large alpha overflows)
  double top = sm.values.maxCoeff();
  if (top <= 0) return kInf;
  double q = 0.0;
  for (int i = 0; i < sm.values.size(); ++i)
    if (sm.values(i) > 0) q += std::pow(sm.values(i) / top, alpha);
  double lq = alpha * std::log2(top) + std::log2(q);
  if (lq < -996) return kInf;
  return (lq - std::log2(r.trace())) / (alpha - 1);
}

double max_relative_entropy(const HermitianOp& r, const HermitianOp& s) {
  require_psd(r, "max_relative_entropy");
  require_psd(s, "max_relative_entropy");
  if (!support_contained(r, s)) return kInf;
  CMatrix si = power_of(eig(s), -0.5);
  CMatrix m = si * r.matrix() * si;
  double l = max_eigenvalue(HermitianOp(0.5 * (m + m.adjoint())));
  return l > 0 ? std::log2(l) : -kInf;
}

std::vector<HermitianOp> spectral_projections(const HermitianOp& base) {
  Spectrum s = eig(base);
  std::vector<HermitianOp> out;
  const int d = base.dim();
  int i = 0;
  while (i < d) {
    int k = i + 1;
    while (k < d && std::abs(s.values(k) - s.values(i)) <= 1e-9 * std::max(1.0, std::abs(s.values(i))))
      ++k;
    CMatrix v = s.vectors.middleCols(i, k - i);
    out.emplace_back(v * v.adjoint());
    i = k;
  }
  return out;
}

HermitianOp pinch(const HermitianOp& base, const HermitianOp& x) {
  if (base.dim() != x.dim()) throw InvalidInput("pinch: dimension mismatch");
  CMatrix acc = CMatrix::Zero(x.dim(), x.dim());
  for (const HermitianOp& p : spectral_projections(base))
    acc += p.matrix() * x.matrix() * p.matrix();
  return HermitianOp(acc);
}

int distinct_eigenvalue_count(const HermitianOp& base) {
  return static_cast<int>(spectral_projections(base).size());
}

double renyi_entropy(const HermitianOp& rho, double alpha) {
  Spectrum s = eig(rho);
  std::vector<double> p(s.values.data(), s.values.data() + s.values.size());
  for (double& v : p) v = v > kEigClamp ? v : 0.0;
  return renyi_entropy(std::span<const double>(p), alpha);
}

CondEntropy sandwiched_cond_entropy(const HermitianOp& rho_ab, int da, int db,
                                    double alpha, std::uint64_t seed,
                                    int restarts) {
  if (da < 1 || db < 1 || da > 4 || db > 4)
    throw InvalidInput("sandwiched_cond_entropy: dims must be <= 4 x 4");
  if (rho_ab.dim() != da * db)
    throw InvalidInput("sandwiched_cond_entropy: dimension mismatch");
  if (!(alpha >= 0.5)) throw InvalidInput("sandwiched_cond_entropy: alpha >= 1/2");
  HermitianOp rho_b = partial_trace_a(rho_ab, da, db);
  HermitianOp ia = HermitianOp::identity(da);
  if (near_one(alpha)) {
    double h = renyi_entropy(rho_ab, 1.0) - renyi_entropy(rho_b, 1.0);
    return {h, rho_b};
  }

  // Parameters: db real diagonal entries of L, then real/imag of the strict
  // lower triangle.
  auto build = [db](std::span<const double> x) {
    CMatrix l = CMatrix::Zero(db, db);
    std::size_t k = 0;
    for (int i = 0; i < db; ++i) l(i, i) = x[k++];
    for (int i = 0; i < db; ++i)
      for (int j = 0; j < i; ++j) {
        l(i, j) = std::complex<double>(x[k], x[k + 1]);
        k += 2;
      }
    CMatrix s = l * l.adjoint();
    double tr = s.trace().real();
    return HermitianOp(s / tr);
  };
  auto objective = [&](std::span<const double> x) {
    double tr = 0.0;
    for (int i = 0; i < db; ++i) tr += x[i] * x[i];
    for (std::size_t k = db; k < x.size(); ++k) tr += x[k] * x[k];
    if (tr < 1e-200) return kInf;
    return sandwiched_divergence(rho_ab, kron(ia, build(x)), alpha);
  };

  // Start from the square root of rho_B (regularized).
  CMatrix reg = rho_b.matrix() + 1e-6 * CMatrix::Identity(db, db);
  Eigen::LLT<CMatrix> llt(reg);
  CMatrix l0 = llt.matrixL();
  std::vector<double> x0;
  for (int i = 0; i < db; ++i) x0.push_back(std::abs(l0(i, i)));
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < i; ++j) {
      x0.push_back(l0(i, j).real());
      x0.push_back(l0(i, j).imag());
    }
  NelderMeadOptions opt;
  opt.initial_step = 0.2;
  opt.max_evals = 3000;
  MinimizeResult m = nelder_mead_restarts(objective, x0, restarts, seed, opt);
  return {-m.value, build(m.x)};
}

}  // namespace scx
