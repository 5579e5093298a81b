#pragma once

// Radial densities on hyperbolic space and on the Poincare ball.
//
// A density is carried by its logarithm together with the first and second
// derivatives of the logarithm, computed analytically per family. Values such
// as exp(R^2) overflow doubles near R = 27, and log-convexity classification
// needs (log phi)'' without cancellation.

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypiso/geometry.hpp"
#include "hypiso/grid.hpp"

namespace hypiso {

/// Which radial coordinate a density is a function of.
enum class Axis {
  Geodesic,  ///< hyperbolic distance R in [0, inf)
  Ball,      ///< Euclidean radius r in [0, 1) of the Poincare ball
};

class RadialDensity;

namespace family {
struct Constant {
  double c;
};
/// exp(a x)
struct ExpLinear {
  double a;
};
/// exp(a x^2)
struct ExpQuadratic {
  double a;
};
/// exp(c0 + c1 x + ... + ck x^k)
struct LogPolynomial {
  std::vector<double> coefficients;
};
/// 2 cosh^2(x/2) = 1 + cosh x, the perimeter-to-volume factor on the geodesic axis.
struct CoshSquaredHalf {};
/// (2 / (1 - r^2))^k on the ball axis.
struct ConformalPower {
  double exponent;
};
/// r -> source(2 atanh r): a geodesic-axis density read in ball coordinates.
struct Pullback {
  std::shared_ptr<const RadialDensity> source;
};
struct Product {
  std::shared_ptr<const RadialDensity> left;
  std::shared_ptr<const RadialDensity> right;
};
}  // namespace family

using DensityFamily = std::variant<family::Constant, family::ExpLinear, family::ExpQuadratic,
                                   family::LogPolynomial, family::CoshSquaredHalf, family::ConformalPower,
                                   family::Pullback, family::Product>;

/// Positive radial function, immutable after construction.
class RadialDensity {
 public:
  static RadialDensity constant(double c, Axis axis = Axis::Geodesic);
  static RadialDensity exp_linear(double a, Axis axis = Axis::Geodesic);
  static RadialDensity exp_quadratic(double a, Axis axis = Axis::Geodesic);
  static RadialDensity log_polynomial(std::vector<double> coefficients, Axis axis = Axis::Geodesic);
  static RadialDensity cosh_squared_half();
  static RadialDensity conformal_power(double exponent);
  static RadialDensity pullback(const RadialDensity& geodesic);
  static RadialDensity product(const RadialDensity& left, const RadialDensity& right);

  Axis axis() const noexcept { return axis_; }
  const DensityFamily& family() const noexcept { return family_; }

  double log_value(double x) const;
  double dlog(double x) const;   ///< (log phi)'
  double d2log(double x) const;  ///< (log phi)''
  double value(double x) const { return std::exp(log_value(x)); }

  /// c * phi, same axis.
  RadialDensity scaled(double c) const;

  /// Human-readable form; for the four base families this is the input string
  /// accepted by parse_density.
  std::string describe() const;

 private:
  RadialDensity(Axis axis, DensityFamily family) : axis_(axis), family_(std::move(family)) {}
  void check_domain(double x) const;

  Axis axis_;
  DensityFamily family_;
};

/// Parses one density line of the mini-language:
///   "const <c>" | "exp_linear <a>" | "exp_quadratic <a>" | "log_poly <c0> <c1> ... <ck>"
/// The result lives on the geodesic axis. Throws ParseError.
RadialDensity parse_density(std::string_view spec);

/// How the perimeter density relates to the volume density.
enum class Regime {
  CoshSquared,  ///< f = g * 2cosh^2(R/2); spheres about the origin are known minimizers
  Equal,        ///< f = g; minimizers are only conjectured
};

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);  ///< "theorem" | "equal"

/// Volume density g and perimeter density f on the geodesic axis.
class DensityPair {
 public:
  static DensityPair cosh_squared(const RadialDensity& volume);
  static DensityPair equal(const RadialDensity& volume);
  static DensityPair make(const RadialDensity& volume, Regime regime);

  const RadialDensity& volume() const noexcept { return volume_; }
  const RadialDensity& perimeter() const noexcept { return perimeter_; }
  Regime regime() const noexcept { return regime_; }

 private:
  DensityPair(RadialDensity g, RadialDensity f, Regime regime)
      : volume_(std::move(g)), perimeter_(std::move(f)), regime_(regime) {}

  RadialDensity volume_;
  RadialDensity perimeter_;
  Regime regime_;
};

enum class Convexity { StrictlyLogConvex, WeaklyLogConvex, NotLogConvex };

std::string_view to_string(Convexity c);

/// Threshold separating weak from strict log-convexity.
inline constexpr double kConvexityTolerance = 1e-9;

struct ConvexityReport {
  Convexity classification = Convexity::WeaklyLogConvex;
  double min_d2log = 0.0;
  double argmin = 0.0;
  std::string grid;
};

/// Classifies by the minimum of (log phi)'' over the grid points.
ConvexityReport classify_log_convexity(const RadialDensity& d, const GridSpec& grid);
ConvexityReport classify_log_convexity(const RadialDensity& d, const std::vector<double>& points,
                                       std::string grid_description);

/// r -> phi(2 atanh r), with derivatives by the chain rule.
RadialDensity pullback_to_ball(const RadialDensity& geodesic);

/// The single ball density r -> g(2 atanh r) (2/(1-r^2))^n that serves as both
/// volume and perimeter density on the unit ball and reproduces the
/// cosh-squared pair on hyperbolic n-space. Throws RegimeError for an
/// equal-density pair.
RadialDensity equivalent_ball_density(const DensityPair& pair, Dimension n);

/// Log-convexity transfers through composition with tanh(R/2): for a
/// nondecreasing log-convex phi on the geodesic grid, returns whether its ball
/// pullback classifies as log-convex on the image grid tanh(R_i / 2). The
/// mathematics says this is always true, so false signals a defect.
/// Throws PreconditionError when phi is not log-convex or decreases on the grid.
bool composition_log_convexity_check(const RadialDensity& geodesic, const GridSpec& grid);

}  // namespace hypiso
