#pragma once

// Weighted volumes of centered geodesic balls and weighted perimeters of
// centered spheres, the profile of that family, and its inversion.
//
// Production integrals run on the geodesic axis. The poincare_chart_*
// functions compute the same quantities in the ball model with the equivalent
// single density and exist only as an independent verification path.

#include <optional>
#include <vector>

#include "hypiso/density.hpp"
#include "hypiso/geometry.hpp"
#include "hypiso/quadrature.hpp"

namespace hypiso {

/// Generalized mean curvature of a centered sphere. At R = 0 it diverges and
/// is stored as an explicit infinite tag rather than a raw floating infinity.
struct MeanCurvature {
  double value = 0.0;
  bool infinite = false;

  static MeanCurvature finite(double v) { return {v, false}; }
  static MeanCurvature positive_infinity() { return {0.0, true}; }
};

struct ProfilePoint {
  double R = 0.0;
  double vol_g = 0.0;
  double per_f = 0.0;
  double log_vol_g = 0.0;
  double log_per_f = 0.0;
  std::optional<MeanCurvature> H;  ///< filled by attach_mean_curvature
};

/// omega_{n-1} sinh^{n-1}(t) w(t): the weighted area of S(t), i.e. the
/// integrand of every centered volume.
double weighted_sphere_area(const RadialDensity& w, Dimension n, double t);

/// Integral of w over the geodesic shell a <= |x| <= b.
double shell_volume(const RadialDensity& w, Dimension n, double a, double b, const QuadratureSpec& q = {});

/// g-weighted volume of B(R). Throws QuadratureError on nonconvergence.
double centered_ball_volume(const DensityPair& pair, Dimension n, double R, const QuadratureSpec& q = {});
double log_centered_ball_volume(const DensityPair& pair, Dimension n, double R, const QuadratureSpec& q = {});

/// f-weighted area of S(R).
double centered_sphere_perimeter(const DensityPair& pair, Dimension n, double R);
double log_centered_sphere_perimeter(const DensityPair& pair, Dimension n, double R);

/// Radius of the centered ball with g-weighted volume v, to within
/// max(q.abs_tol, q.rel_tol * v) in volume. Throws ConvergenceError.
double profile_radius_for_volume(const DensityPair& pair, Dimension n, double v, const QuadratureSpec& q = {});

/// One ProfilePoint per grid radius (H left empty). Grid points may be
/// evaluated on `threads` workers (0 = hardware concurrency); the output does
/// not depend on the thread count.
std::vector<ProfilePoint> profile_sweep(const DensityPair& pair, Dimension n, const std::vector<double>& R_grid,
                                        const QuadratureSpec& q = {}, int threads = 0);

/// Euclidean polar quadrature of a ball density over the Euclidean ball of
/// radius r_e: omega_{n-1} * integral_0^{r_e} s^{n-1} rho(s) ds.
double poincare_chart_ball_volume(const RadialDensity& ball_density, Dimension n, double r_e,
                                  const QuadratureSpec& q = {});
/// omega_{n-1} r_e^{n-1} rho(r_e).
double poincare_chart_sphere_perimeter(const RadialDensity& ball_density, Dimension n, double r_e);

}  // namespace hypiso
