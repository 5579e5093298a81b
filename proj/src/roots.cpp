#include "hypiso/roots.hpp"

#include <gsl/gsl_roots.h>

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"
#include "gsl_bridge.hpp"

namespace hypiso {
namespace {

struct SolverDeleter {
  void operator()(gsl_root_fsolver* s) const { gsl_root_fsolver_free(s); }
};

}  // namespace

RootResult solve_increasing(const std::function<double(double)>& F, double target, double lo, double hi,
                            double tol) {
  const double flo = F(lo) - target;
  const double fhi = F(hi) - target;
  if (std::fabs(flo) <= tol) return {lo, flo, 0};
  if (std::fabs(fhi) <= tol) return {hi, fhi, 0};
  if (flo > 0.0 || fhi < 0.0)
    throw ConvergenceError("solve_increasing: target not bracketed by [" + format_double(lo) + ", " +
                           format_double(hi) + "]");
  detail::use_gsl_status_codes();

  const std::function<double(double)> shifted = [&](double x) { return F(x) - target; };
  detail::GslCallback cb(shifted);
  std::unique_ptr<gsl_root_fsolver, SolverDeleter> solver(gsl_root_fsolver_alloc(gsl_root_fsolver_brent));
  if (!solver) throw std::bad_alloc();
  gsl_root_fsolver_set(solver.get(), cb.get(), lo, hi);
  cb.rethrow_if_failed();

  for (int it = 1; it <= kMaxRootIterations; ++it) {
    const int status = gsl_root_fsolver_iterate(solver.get());
    cb.rethrow_if_failed();
    if (cb.non_finite() || status != GSL_SUCCESS) break;
    const double x = gsl_root_fsolver_root(solver.get());
    const double fx = x == cb.last_x() ? cb.last_value() : shifted(x);
    if (std::fabs(fx) <= tol) return {x, fx, it};
    const double a = gsl_root_fsolver_x_lower(solver.get());
    const double b = gsl_root_fsolver_x_upper(solver.get());
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(b)) {
      // Bracket collapsed at machine resolution; F is flat to within roundoff.
      if (std::fabs(fx) <= 16.0 * tol) return {x, fx, it};
      break;
    }
  }
  throw ConvergenceError("solve_increasing: no convergence within " + std::to_string(kMaxRootIterations) +
                         " iterations to residual " + format_double(tol));
}

RootResult invert_increasing(const std::function<double(double)>& F, double target, double tol, double start) {
  if (!std::isfinite(target)) throw ConvergenceError("invert_increasing: target must be finite");
  double lo = 0.0;
  double hi = start;
  int expansions = 0;
  while (F(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 64 || !std::isfinite(hi))
      throw ConvergenceError("invert_increasing: could not bracket target " + format_double(target));
  }
  return solve_increasing(F, target, lo, hi, tol);
}

}  // namespace hypiso
