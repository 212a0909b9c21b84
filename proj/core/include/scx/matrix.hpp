#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>

namespace scx {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxOpDim = 32;
// Eigenvalues at or below this are treated as zero by spectral calculus.
inline constexpr double kEigClamp = 1e-14;

class HermitianOp {
 public:
  HermitianOp() = default;
  // Throws unless m equals its adjoint within 1e-10; stores the symmetrized part.
  explicit HermitianOp(const CMatrix& m);

  static HermitianOp identity(int d);
  static HermitianOp diagonal(std::span<const double> d);
  static HermitianOp projector(const CVector& v);  // |v><v| for the given v

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }
  bool is_psd(double tol = 1e-9) const;

  HermitianOp operator+(const HermitianOp& o) const;
  HermitianOp operator-(const HermitianOp& o) const;
  HermitianOp operator*(double s) const;

 private:
  CMatrix m_;
};

// Eigenvalues sorted in descending order, eigenvectors in matching columns.
struct Spectrum {
  Eigen::VectorXd values;
  CMatrix vectors;
};

Spectrum eig(const HermitianOp& h);
double min_eigenvalue(const HermitianOp& h);
double max_eigenvalue(const HermitianOp& h);

HermitianOp apply_function(const HermitianOp& h,
                           const std::function<double(double)>& f);
// h^p on the support of h (eigenvalues <= kEigClamp map to 0), for PSD h.
HermitianOp power(const HermitianOp& h, double p);

HermitianOp kron(const HermitianOp& a, const HermitianOp& b);
// Layout is A (x) B with dims (da, db).
HermitianOp partial_trace_a(const HermitianOp& h, int da, int db);
HermitianOp partial_trace_b(const HermitianOp& h, int da, int db);

double trace_norm(const HermitianOp& h);

double fidelity(const HermitianOp& r, const HermitianOp& s);
double trace_distance(const HermitianOp& r, const HermitianOp& s);
// d + |tr r - tr s| / 2; equals trace_distance on normalized states.
double generalized_trace_distance(const HermitianOp& r, const HermitianOp& s);
// sqrt(1 - Fbar^2) with Fbar = F + sqrt((1 - tr r)(1 - tr s)).
double purified_distance(const HermitianOp& r, const HermitianOp& s);

bool support_contained(const HermitianOp& r, const HermitianOp& s);

// tr r (log r - log s) / tr r.
double umegaki_relative_entropy(const HermitianOp& r, const HermitianOp& s);
double petz_divergence(const HermitianOp& r, const HermitianOp& s, double alpha);
double sandwiched_divergence(const HermitianOp& r, const HermitianOp& s,
                             double alpha);
double max_relative_entropy(const HermitianOp& r, const HermitianOp& s);

// Spectral projections of `base`, grouping eigenvalues within 1e-9.
std::vector<HermitianOp> spectral_projections(const HermitianOp& base);
HermitianOp pinch(const HermitianOp& base, const HermitianOp& x);
int distinct_eigenvalue_count(const HermitianOp& base);

// Von Neumann / Renyi entropy of the spectrum of a state.
double renyi_entropy(const HermitianOp& rho, double alpha);

struct CondEntropy {
  double value;
  HermitianOp sigma_b;
};

// -min over states sigma_B of D*_alpha(rho_AB || I_A x sigma_B), alpha >= 1/2,
// da, db <= 4. sigma_B = L L^dag / tr(L L^dag) with L lower triangular,
// minimized by restarted Nelder-Mead.
CondEntropy sandwiched_cond_entropy(const HermitianOp& rho_ab, int da, int db,
                                    double alpha, std::uint64_t seed = 7,
                                    int restarts = 8);

}  // namespace scx
