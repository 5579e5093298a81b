#include "hypiso/measures.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"
#include "hypiso/parallel.hpp"
#include "hypiso/roots.hpp"

namespace hypiso {
namespace {

void require_radius(double R, const char* op) {
  if (!(R >= 0.0) || !std::isfinite(R))
    throw DomainError(std::string(op) + ": radius must be finite and >= 0, got " + format_double(R));
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

double weighted_sphere_area(const RadialDensity& w, Dimension n, double t) {
  if (t == 0.0) return 0.0;
  return unit_sphere_area(n.value() - 1) * std::pow(std::sinh(t), n.value() - 1) * w.value(t);
}

double shell_volume(const RadialDensity& w, Dimension n, double a, double b, const QuadratureSpec& q) {
  if (b <= a) return 0.0;
  return integrate([&](double t) { return weighted_sphere_area(w, n, t); }, a, b, q).value;
}

double centered_ball_volume(const DensityPair& pair, Dimension n, double R, const QuadratureSpec& q) {
  require_radius(R, "centered_ball_volume");
  return shell_volume(pair.volume(), n, 0.0, R, q);
}

double log_centered_ball_volume(const DensityPair& pair, Dimension n, double R, const QuadratureSpec& q) {
  require_radius(R, "log_centered_ball_volume");
  if (R == 0.0) return kNegInf;
  const auto& g = pair.volume();
  const double log_omega = std::log(unit_sphere_area(n.value() - 1));
  const int k = n.value() - 1;
  return log_omega + integrate_log(
                         [&](double t) { return t == 0.0 ? kNegInf : k * log_sinh(t) + g.log_value(t); }, 0.0, R, q);
}

double centered_sphere_perimeter(const DensityPair& pair, Dimension n, double R) {
  require_radius(R, "centered_sphere_perimeter");
  return weighted_sphere_area(pair.perimeter(), n, R);
}

double log_centered_sphere_perimeter(const DensityPair& pair, Dimension n, double R) {
  require_radius(R, "log_centered_sphere_perimeter");
  return log_sphere_area(n, GeodesicRadius(R)) + pair.perimeter().log_value(R);
}

double profile_radius_for_volume(const DensityPair& pair, Dimension n, double v, const QuadratureSpec& q) {
  if (std::isnan(v) || v < 0.0) throw DomainError("profile_radius_for_volume: volume must be >= 0");
  if (!std::isfinite(v)) throw ConvergenceError("profile_radius_for_volume: infinite volume requested");
  if (v == 0.0) return 0.0;
  const double tol = std::max(q.abs_tol, q.rel_tol * v);
  return invert_increasing([&](double R) { return centered_ball_volume(pair, n, R, q); }, v, tol).x;
}

std::vector<ProfilePoint> profile_sweep(const DensityPair& pair, Dimension n, const std::vector<double>& R_grid,
                                        const QuadratureSpec& q, int threads) {
  for (std::size_t i = 0; i < R_grid.size(); ++i) {
    require_radius(R_grid[i], "profile_sweep");
    if (i > 0 && !(R_grid[i] > R_grid[i - 1])) throw DomainError("profile_sweep: grid must be strictly increasing");
  }
  std::vector<ProfilePoint> out(R_grid.size());
  parallel_for(R_grid.size(), threads, [&](std::size_t i) {
    const double R = R_grid[i];
    ProfilePoint& p = out[i];
    p.R = R;
    try {
      p.vol_g = centered_ball_volume(pair, n, R, q);
      p.log_vol_g = log_centered_ball_volume(pair, n, R, q);
    } catch (const QuadratureError& e) {
      throw QuadratureError("centered_ball_volume at R=" + format_double(R) + ": " + e.what(), e.estimate(),
                            e.error_estimate());
    }
    p.per_f = centered_sphere_perimeter(pair, n, R);
    p.log_per_f = log_centered_sphere_perimeter(pair, n, R);
  });
  return out;
}

double poincare_chart_ball_volume(const RadialDensity& ball_density, Dimension n, double r_e,
                                  const QuadratureSpec& q) {
  if (ball_density.axis() != Axis::Ball) throw DomainError("poincare chart needs a ball-axis density");
  if (!(r_e >= 0.0 && r_e < 1.0)) throw DomainError("poincare chart radius must lie in [0, 1)");
  const double omega = unit_sphere_area(n.value() - 1);
  const int k = n.value() - 1;
  return omega * integrate([&](double s) { return std::pow(s, k) * ball_density.value(s); }, 0.0, r_e, q).value;
}

double poincare_chart_sphere_perimeter(const RadialDensity& ball_density, Dimension n, double r_e) {
  if (ball_density.axis() != Axis::Ball) throw DomainError("poincare chart needs a ball-axis density");
  if (!(r_e >= 0.0 && r_e < 1.0)) throw DomainError("poincare chart radius must lie in [0, 1)");
  return unit_sphere_area(n.value() - 1) * std::pow(r_e, n.value() - 1) * ball_density.value(r_e);
}

}  // namespace hypiso
