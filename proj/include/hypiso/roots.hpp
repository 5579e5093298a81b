#pragma once

#include <functional>

namespace hypiso {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  ///< F(x) - target
  int iterations = 0;
};

inline constexpr int kMaxRootIterations = 200;

/// Solve F(x) = target for F increasing on [lo, hi] with F(lo) <= target <= F(hi),
/// by Brent's method (GSL). Stops once
/// |F(x) - target| <= tol. Throws ConvergenceError after kMaxRootIterations.
RootResult solve_increasing(const std::function<double(double)>& F, double target, double lo, double hi,
                            double tol);

/// Same, for F increasing on [0, inf) with F(0) <= target: a bracket is found
/// first by geometric expansion from `start`, then refined.
RootResult invert_increasing(const std::function<double(double)>& F, double target, double tol,
                             double start = 1.0);

}  // namespace hypiso
