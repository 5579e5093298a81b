#pragma once

#include <functional>

namespace hypiso {

/// Tolerances for adaptive quadrature. A result is accepted once the summed
/// error estimate is at most max(abs_tol, rel_tol * |integral|).
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b] (GSL QAG).
/// Throws QuadratureError (carrying the achieved estimate) on nonconvergence
/// or a non-finite integrand value.
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// log of the integral of exp(log_f) over [a, b]. The integrand is rescaled by
/// its sampled maximum so that integrals far beyond the double range stay
/// representable. Returns -inf for a vanishing integral.
double integrate_log(const Integrand& log_f, double a, double b, const QuadratureSpec& spec = {});

}  // namespace hypiso
