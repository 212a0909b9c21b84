#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace scx {

// Euclidean projection onto {x >= 0, sum x = total}.
std::vector<double> project_to_simplex(std::span<const double> v,
                                       double total = 1.0);

struct Argmax1D {
  double arg;
  double value;
};

// Global sup of a continuous f on [lo, hi]: uniform grid, then golden-section
// refinement on the bracket around the best grid point. Unimodality is not
// assumed.
Argmax1D maximize_on_interval(const std::function<double(double)>& f, double lo,
                              double hi, int grid_points = 2001,
                              double tol = 1e-10);

struct NelderMeadOptions {
  int max_evals = 4000;
  double ftol = 1e-13;
  double initial_step = 0.5;
};

struct MinimizeResult {
  std::vector<double> x;
  double value;
  int evals;
};

MinimizeResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                           std::vector<double> x0,
                           const NelderMeadOptions& opt = {});

// Best of `restarts` Nelder-Mead runs. The first run starts at x0, later ones at
// x0 plus a seeded Gaussian offset; each run is followed by one re-start from
// its own optimum to escape simplex collapse.
MinimizeResult nelder_mead_restarts(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, int restarts, std::uint64_t seed,
    const NelderMeadOptions& opt = {});

// min c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0.
struct LinearProgram {
  std::vector<double> c;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status;
  std::vector<double> x;
  double value;
};

// Dense two-phase simplex with Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

// Projected subgradient descent over the probability simplex with
// geometrically decaying steps; returns the best iterate seen.
MinimizeResult simplex_subgradient(
    const std::function<double(std::span<const double>, std::span<double>)>&
        value_and_subgradient,
    std::vector<double> x0, int iterations = 20000, double step0 = 0.2,
    double decay = 0.9995);

}  // namespace scx
