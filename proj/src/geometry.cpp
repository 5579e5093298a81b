#include "hypiso/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hypiso/errors.hpp"

namespace hypiso {

Dimension::Dimension(int n) : n_(n) {
  if (n < 2) throw DomainError("dimension must be >= 2, got " + std::to_string(n));
}

GeodesicRadius::GeodesicRadius(double R) : R_(R) {
  if (!(R >= 0.0) || !std::isfinite(R))
    throw DomainError("geodesic radius must be finite and >= 0, got " + std::to_string(R));
}

PoincareRadius::PoincareRadius(double r) : r_(r) {
  if (!(r >= 0.0 && r < 1.0))
    throw DomainError("Poincare radius must lie in [0, 1), got " + std::to_string(r));
}

GeodesicRadius poincare_to_geodesic(PoincareRadius r) {
  const double x = r.value();
  return GeodesicRadius(2.0 * std::atanh(x));
}

PoincareRadius geodesic_to_poincare(GeodesicRadius R) {
  // tanh saturates to exactly 1 near R ~ 38; keep the result inside the ball.
  const double r = std::tanh(0.5 * R.value());
  return PoincareRadius(r < 1.0 ? r : std::nextafter(1.0, 0.0));
}

double conformal_factor(PoincareRadius r) {
  const double x = r.value();
  return 2.0 / ((1.0 - x) * (1.0 + x));
}

double unit_sphere_area(int k) {
  if (k < 0) throw DomainError("sphere dimension must be >= 0");
  const double h = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double sphere_area_unweighted(Dimension n, GeodesicRadius R) {
  return unit_sphere_area(n.value() - 1) * std::pow(std::sinh(R.value()), n.value() - 1);
}

double log_sinh(double x) {
  if (x > 20.0) return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
  return std::log(std::sinh(x));
}

double log_cosh(double x) {
  const double a = std::fabs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double log_sphere_area(Dimension n, GeodesicRadius R) {
  if (R.value() == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(unit_sphere_area(n.value() - 1)) + (n.value() - 1) * log_sinh(R.value());
}

double hyperbolic_distance(double D, double t, double theta) {
  if (!(D >= 0.0) || !(t >= 0.0)) throw DomainError("hyperbolic_distance: radii must be >= 0");
  // cosh d - 1 = 2 sinh^2((D - t)/2) + 2 sinh D sinh t sin^2(theta/2); stays
  // accurate when d is small.
  const double sh = std::sinh(0.5 * (D - t));
  const double sa = std::sin(0.5 * theta);
  const double x = 2.0 * sh * sh + 2.0 * std::sinh(D) * std::sinh(t) * sa * sa;
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

}  // namespace hypiso
