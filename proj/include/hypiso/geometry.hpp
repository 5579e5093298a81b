#pragma once

// Coordinate calculus between the Poincare ball model of hyperbolic n-space
// and geodesic polar coordinates about the origin, plus unweighted measures
// of geodesic spheres.
//
// Conventions: R is hyperbolic distance from the origin, r is the Euclidean
// radius of the same point in the ball model. All functions are pure.

namespace hypiso {

/// Ambient dimension n >= 2.
class Dimension {
 public:
  explicit Dimension(int n);
  int value() const noexcept { return n_; }
  friend bool operator==(Dimension, Dimension) = default;

 private:
  int n_;
};

/// Hyperbolic distance from the origin, finite and >= 0.
class GeodesicRadius {
 public:
  explicit GeodesicRadius(double R);
  double value() const noexcept { return R_; }

 private:
  double R_;
};

/// Euclidean radius in the unit ball model, in [0, 1).
class PoincareRadius {
 public:
  explicit PoincareRadius(double r);
  double value() const noexcept { return r_; }

 private:
  double r_;
};

/// R = 2 atanh(r) = ln((1 + r) / (1 - r)).
GeodesicRadius poincare_to_geodesic(PoincareRadius r);

/// r = tanh(R / 2).
PoincareRadius geodesic_to_poincare(GeodesicRadius R);

/// Metric scale 2 / (1 - r^2) of the ball model; equals 2 cosh^2(R/2).
double conformal_factor(PoincareRadius r);

/// Area of the unit k-sphere in R^{k+1}: 2 pi^{(k+1)/2} / Gamma((k+1)/2).
/// k = 0 gives 2 (two points).
double unit_sphere_area(int k);

/// Unweighted (n-1)-area of the geodesic sphere S(R): omega_{n-1} sinh^{n-1}(R).
double sphere_area_unweighted(Dimension n, GeodesicRadius R);

/// log of sphere_area_unweighted; -inf at R = 0. Finite for every finite R.
double log_sphere_area(Dimension n, GeodesicRadius R);

/// Distance between the point at geodesic radius t and polar angle theta and
/// the point at radius D on the axis (hyperbolic law of cosines):
///   cosh d = cosh D cosh t - sinh D sinh t cos theta.
double hyperbolic_distance(double D, double t, double theta);

// Numerically stable helpers shared by the other modules.
double log_sinh(double x);  ///< log sinh x for x > 0
double log_cosh(double x);

}  // namespace hypiso
