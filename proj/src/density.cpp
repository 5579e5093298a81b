#include "hypiso/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"

namespace hypiso {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// Derivatives of the geodesic radius R(r) = 2 atanh r.
struct ChartJet {
  double R, dR, d2R;
};

ChartJet chart_jet(double r) {
  const double dR = 2.0 / ((1.0 - r) * (1.0 + r));
  return {2.0 * std::atanh(r), dR, r * dR * dR};
}

// Value and first two derivatives of a polynomial via Horner.
std::array<double, 3> poly_jet(const std::vector<double>& c, double x) {
  double p = 0.0, dp = 0.0, d2p = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d2p = d2p * x + 2.0 * dp;
    dp = dp * x + p;
    p = p * x + *it;
  }
  return {p, dp, d2p};
}

}  // namespace

RadialDensity RadialDensity::constant(double c, Axis axis) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("constant density must be positive and finite");
  return {axis, family::Constant{c}};
}

RadialDensity RadialDensity::exp_linear(double a, Axis axis) {
  require_finite(a, "exp_linear coefficient");
  return {axis, family::ExpLinear{a}};
}

RadialDensity RadialDensity::exp_quadratic(double a, Axis axis) {
  require_finite(a, "exp_quadratic coefficient");
  return {axis, family::ExpQuadratic{a}};
}

RadialDensity RadialDensity::log_polynomial(std::vector<double> coefficients, Axis axis) {
  if (coefficients.empty()) throw DomainError("log_poly needs at least one coefficient");
  for (double c : coefficients) require_finite(c, "log_poly coefficient");
  return {axis, family::LogPolynomial{std::move(coefficients)}};
}

RadialDensity RadialDensity::cosh_squared_half() { return {Axis::Geodesic, family::CoshSquaredHalf{}}; }

RadialDensity RadialDensity::conformal_power(double exponent) {
  require_finite(exponent, "conformal exponent");
  return {Axis::Ball, family::ConformalPower{exponent}};
}

RadialDensity RadialDensity::pullback(const RadialDensity& geodesic) {
  if (geodesic.axis() != Axis::Geodesic) throw DomainError("pullback source must live on the geodesic axis");
  return {Axis::Ball, family::Pullback{std::make_shared<const RadialDensity>(geodesic)}};
}

RadialDensity RadialDensity::product(const RadialDensity& left, const RadialDensity& right) {
  if (left.axis() != right.axis()) throw DomainError("product of densities on different axes");
  return {left.axis(), family::Product{std::make_shared<const RadialDensity>(left),
                                       std::make_shared<const RadialDensity>(right)}};
}

RadialDensity RadialDensity::scaled(double c) const { return product(*this, constant(c, axis_)); }

void RadialDensity::check_domain(double x) const {
  if (axis_ == Axis::Geodesic) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("geodesic density evaluated outside [0, inf)");
  } else if (!(x >= 0.0 && x < 1.0)) {
    throw DomainError("ball density evaluated outside [0, 1)");
  }
}

double RadialDensity::log_value(double x) const {
  check_domain(x);
  return std::visit(
      Overloaded{
          [](const family::Constant& f) { return std::log(f.c); },
          [x](const family::ExpLinear& f) { return f.a * x; },
          [x](const family::ExpQuadratic& f) { return f.a * x * x; },
          [x](const family::LogPolynomial& f) { return poly_jet(f.coefficients, x)[0]; },
          [x](const family::CoshSquaredHalf&) { return std::numbers::ln2 + 2.0 * log_cosh(0.5 * x); },
          [x](const family::ConformalPower& f) { return f.exponent * std::log(2.0 / ((1.0 - x) * (1.0 + x))); },
          [x](const family::Pullback& f) { return f.source->log_value(chart_jet(x).R); },
          [x](const family::Product& f) { return f.left->log_value(x) + f.right->log_value(x); },
      },
      family_);
}

double RadialDensity::dlog(double x) const {
  check_domain(x);
  return std::visit(
      Overloaded{
          [](const family::Constant&) { return 0.0; },
          [](const family::ExpLinear& f) { return f.a; },
          [x](const family::ExpQuadratic& f) { return 2.0 * f.a * x; },
          [x](const family::LogPolynomial& f) { return poly_jet(f.coefficients, x)[1]; },
          [x](const family::CoshSquaredHalf&) { return std::tanh(0.5 * x); },
          [x](const family::ConformalPower& f) { return f.exponent * 2.0 * x / ((1.0 - x) * (1.0 + x)); },
          [x](const family::Pullback& f) {
            const auto j = chart_jet(x);
            return f.source->dlog(j.R) * j.dR;
          },
          [x](const family::Product& f) { return f.left->dlog(x) + f.right->dlog(x); },
      },
      family_);
}

double RadialDensity::d2log(double x) const {
  check_domain(x);
  return std::visit(
      Overloaded{
          [](const family::Constant&) { return 0.0; },
          [](const family::ExpLinear&) { return 0.0; },
          [](const family::ExpQuadratic& f) { return 2.0 * f.a; },
          [x](const family::LogPolynomial& f) { return poly_jet(f.coefficients, x)[2]; },
          [x](const family::CoshSquaredHalf&) { return 1.0 / (1.0 + std::cosh(x)); },
          [x](const family::ConformalPower& f) {
            const double s = (1.0 - x) * (1.0 + x);
            return f.exponent * 2.0 * (1.0 + x * x) / (s * s);
          },
          [x](const family::Pullback& f) {
            const auto j = chart_jet(x);
            return f.source->d2log(j.R) * j.dR * j.dR + f.source->dlog(j.R) * j.d2R;
          },
          [x](const family::Product& f) { return f.left->d2log(x) + f.right->d2log(x); },
      },
      family_);
}

std::string RadialDensity::describe() const {
  return std::visit(
      Overloaded{
          [](const family::Constant& f) { return "const " + format_double(f.c); },
          [](const family::ExpLinear& f) { return "exp_linear " + format_double(f.a); },
          [](const family::ExpQuadratic& f) { return "exp_quadratic " + format_double(f.a); },
          [](const family::LogPolynomial& f) {
            std::string s = "log_poly";
            for (double c : f.coefficients) s += " " + format_double(c);
            return s;
          },
          [](const family::CoshSquaredHalf&) { return std::string("cosh_squared_half"); },
          [](const family::ConformalPower& f) { return "conformal_power " + format_double(f.exponent); },
          [](const family::Pullback& f) { return "pullback(" + f.source->describe() + ")"; },
          [](const family::Product& f) { return "product(" + f.left->describe() + ", " + f.right->describe() + ")"; },
      },
      family_);
}

RadialDensity parse_density(std::string_view spec) {
  std::istringstream in{std::string(spec)};
  std::string keyword;
  std::vector<double> args;
  in >> keyword;
  for (std::string tok; in >> tok;) args.push_back(parse_number(tok));
  if (keyword.empty()) throw ParseError("empty density spec");

  auto expect_one = [&] {
    if (args.size() != 1) throw ParseError("'" + keyword + "' takes exactly one number");
    return args[0];
  };
  try {
    if (keyword == "const") return RadialDensity::constant(expect_one());
    if (keyword == "exp_linear") return RadialDensity::exp_linear(expect_one());
    if (keyword == "exp_quadratic") return RadialDensity::exp_quadratic(expect_one());
    if (keyword == "log_poly") return RadialDensity::log_polynomial(args);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid density '") + std::string(spec) + "': " + e.what());
  }
  throw ParseError("unknown density family '" + keyword + "'");
}

std::string_view to_string(Regime regime) { return regime == Regime::CoshSquared ? "theorem" : "equal"; }

Regime parse_regime(std::string_view text) {
  if (text == "theorem") return Regime::CoshSquared;
  if (text == "equal") return Regime::Equal;
  throw ParseError("regime must be 'theorem' or 'equal', got '" + std::string(text) + "'");
}

DensityPair DensityPair::cosh_squared(const RadialDensity& volume) {
  if (volume.axis() != Axis::Geodesic) throw DomainError("density pair needs geodesic-axis densities");
  return {volume, RadialDensity::product(volume, RadialDensity::cosh_squared_half()), Regime::CoshSquared};
}

DensityPair DensityPair::equal(const RadialDensity& volume) {
  if (volume.axis() != Axis::Geodesic) throw DomainError("density pair needs geodesic-axis densities");
  return {volume, volume, Regime::Equal};
}

DensityPair DensityPair::make(const RadialDensity& volume, Regime regime) {
  return regime == Regime::CoshSquared ? cosh_squared(volume) : equal(volume);
}

std::string_view to_string(Convexity c) {
  switch (c) {
    case Convexity::StrictlyLogConvex:
      return "StrictlyLogConvex";
    case Convexity::WeaklyLogConvex:
      return "WeaklyLogConvex";
    case Convexity::NotLogConvex:
      return "NotLogConvex";
  }
  return "?";
}

ConvexityReport classify_log_convexity(const RadialDensity& d, const std::vector<double>& points,
                                       std::string grid_description) {
  if (points.size() < 2) throw DomainError("convexity grid needs at least 2 points");
  ConvexityReport rep;
  rep.grid = std::move(grid_description);
  rep.min_d2log = std::numeric_limits<double>::infinity();
  for (double x : points) {
    const double v = d.d2log(x);
    if (v < rep.min_d2log) {
      rep.min_d2log = v;
      rep.argmin = x;
    }
  }
  if (rep.min_d2log > kConvexityTolerance)
    rep.classification = Convexity::StrictlyLogConvex;
  else if (rep.min_d2log < -kConvexityTolerance)
    rep.classification = Convexity::NotLogConvex;
  else
    rep.classification = Convexity::WeaklyLogConvex;
  return rep;
}

ConvexityReport classify_log_convexity(const RadialDensity& d, const GridSpec& grid) {
  return classify_log_convexity(d, grid.points(), grid.describe());
}

RadialDensity pullback_to_ball(const RadialDensity& geodesic) { return RadialDensity::pullback(geodesic); }

RadialDensity equivalent_ball_density(const DensityPair& pair, Dimension n) {
  if (pair.regime() != Regime::CoshSquared)
    throw RegimeError("equivalent ball density exists only for the cosh-squared perimeter weighting");
  return RadialDensity::product(pullback_to_ball(pair.volume()), RadialDensity::conformal_power(n.value()));
}

bool composition_log_convexity_check(const RadialDensity& geodesic, const GridSpec& grid) {
  const auto points = grid.points();
  const auto base = classify_log_convexity(geodesic, points, grid.describe());
  if (base.classification == Convexity::NotLogConvex)
    throw PreconditionError("density is not log-convex on the grid (min (log phi)'' = " +
                            format_double(base.min_d2log) + ")");
  for (double x : points)
    if (geodesic.dlog(x) < -kConvexityTolerance)
      throw PreconditionError("density decreases at R = " + format_double(x));

  std::vector<double> image;
  image.reserve(points.size());
  for (double x : points) image.push_back(geodesic_to_poincare(GeodesicRadius(x)).value());
  const auto pulled = classify_log_convexity(pullback_to_ball(geodesic), image, "tanh(" + grid.describe() + "/2)");
  return pulled.classification != Convexity::NotLogConvex;
}

}  // namespace hypiso
