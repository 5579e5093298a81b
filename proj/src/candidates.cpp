#include "hypiso/candidates.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"
#include "hypiso/measures.hpp"

namespace hypiso {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

bool valid_radius(double x) { return x >= 0.0 && std::isfinite(x); }

// Inner angular quadrature: tighter than the outer one so the nested error
// stays within the caller's budget.
QuadratureSpec inner_spec(const QuadratureSpec& q) {
  QuadratureSpec s = q;
  s.rel_tol = q.rel_tol * 0.1;
  s.abs_tol = 1e-300;
  return s;
}

// integral_{theta0}^{pi} sin^{n-2}(theta) w(d(D, rho, theta)) dtheta: the
// angular part of the w-weighted area of the sphere of radius rho about a
// center at distance D, restricted to polar angles theta >= theta0 measured
// from the direction of the origin.
double offset_sphere_angular(const RadialDensity& w, int n, double D, double rho, double theta0,
                             const QuadratureSpec& q) {
  if (theta0 >= kPi) return 0.0;
  const int k = n - 2;
  return integrate([&](double th) { return std::pow(std::sin(th), k) * w.value(hyperbolic_distance(D, rho, th)); },
                   theta0, kPi, q)
      .value;
}

// Polar angle at the center of an offset ball beyond which its boundary lies
// outside B(r): in [0, pi].
double exterior_boundary_angle(double D, double rho, double r) {
  if (D == 0.0) return rho > r ? 0.0 : kPi;
  // 1 - cos(theta0) = (cosh r - cosh(D - rho)) / (sinh D sinh rho)
  const double y = 2.0 * std::sinh(0.5 * (r + D - rho)) * std::sinh(0.5 * (r - D + rho)) /
                   (std::sinh(D) * std::sinh(rho));
  if (y <= 0.0) return 0.0;
  if (y >= 2.0) return kPi;
  return 2.0 * std::asin(std::sqrt(0.5 * y));
}

// Geometry of one candidate reduced to what slicing needs.
struct Slicer {
  // Unweighted slice area |E_t|.
  std::function<double(double)> slice_area;
  // Slice boundary measure p(t).
  std::function<double(double)> slice_perimeter;
  // Exterior boundary P(t) and P_f(t).
  std::function<double(double)> exterior_perimeter;
  std::function<double(double)> exterior_perimeter_f;
  std::vector<double> breakpoints;
  double outer = 0.0;
};

struct Interval {
  double a, b;
};

Slicer centered_slicer(std::vector<Interval> pieces, std::vector<double> spheres, const DensityPair& pair,
                       Dimension n) {
  Slicer s;
  s.slice_area = [pieces, n](double t) {
    for (const auto& p : pieces)
      if (t >= p.a && t < p.b) return sphere_area_unweighted(n, GeodesicRadius(t));
    return 0.0;
  };
  s.slice_perimeter = [](double) { return 0.0; };
  s.exterior_perimeter = [spheres, n](double t) {
    double sum = 0.0;
    for (double R : spheres)
      if (R > t) sum += sphere_area_unweighted(n, GeodesicRadius(R));
    return sum;
  };
  s.exterior_perimeter_f = [spheres, n, &pair](double t) {
    double sum = 0.0;
    for (double R : spheres)
      if (R > t) sum += centered_sphere_perimeter(pair, n, R);
    return sum;
  };
  for (const auto& p : pieces) {
    s.breakpoints.push_back(p.a);
    s.breakpoints.push_back(p.b);
    s.outer = std::max(s.outer, p.b);
  }
  return s;
}

Slicer offset_slicer(const shape::OffsetBall& b, const DensityPair& pair, Dimension n, const QuadratureSpec& q) {
  const double D = b.center_distance, rho = b.radius;
  const int dim = n.value();
  const double omega_rim = unit_sphere_area(dim - 2);
  const double boundary_scale = omega_rim * std::pow(std::sinh(rho), dim - 1);
  const double full_angle = sine_power_integral(dim - 2, kPi);
  Slicer s;
  s.slice_area = [=](double t) {
    if (t == 0.0) return 0.0;
    return omega_rim * std::pow(std::sinh(t), dim - 1) * sine_power_integral(dim - 2, cap_aperture(D, rho, t));
  };
  s.slice_perimeter = [=](double t) {
    if (t == 0.0 || D == 0.0) return 0.0;
    const double alpha = cap_aperture(D, rho, t);
    if (!(alpha > 0.0 && alpha < kPi)) return 0.0;
    return omega_rim * std::pow(std::sinh(t) * std::sin(alpha), dim - 2);
  };
  s.exterior_perimeter = [=](double t) {
    return boundary_scale * (full_angle - sine_power_integral(dim - 2, exterior_boundary_angle(D, rho, t)));
  };
  const auto inner = inner_spec(q);
  s.exterior_perimeter_f = [=, &pair](double t) {
    return boundary_scale * offset_sphere_angular(pair.perimeter(), dim, D, rho, exterior_boundary_angle(D, rho, t),
                                                  inner);
  };
  s.breakpoints = {std::fabs(D - rho), D + rho};
  s.outer = D + rho;
  return s;
}

Slicer make_slicer(const CandidateRegion& c, const DensityPair& pair, Dimension n, const QuadratureSpec& q) {
  return std::visit(Overloaded{
                        [&](const shape::CenteredBall& b) { return centered_slicer({{0.0, b.radius}}, {b.radius}, pair, n); },
                        [&](const shape::OffsetBall& b) { return offset_slicer(b, pair, n, q); },
                        [&](const shape::Annulus& a) {
                          return centered_slicer({{a.inner, a.outer}}, {a.inner, a.outer}, pair, n);
                        },
                        [&](const shape::BallPlusShell& s) {
                          return centered_slicer({{0.0, s.ball_radius}, {s.shell_inner, s.shell_outer}},
                                                 {s.ball_radius, s.shell_inner, s.shell_outer}, pair, n);
                        },
                    },
                    c.shape());
}

// integral over [a, b] of w(t) |E_t|, split at the slicer's breakpoints.
double slice_integral(const Slicer& s, const RadialDensity* w, double a, double b, const QuadratureSpec& q) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double x : s.breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate([&](double t) { return (w ? w->value(t) : 1.0) * s.slice_area(t); }, cuts[i], cuts[i + 1], q)
                 .value;
  }
  return total;
}

}  // namespace

double sine_power_integral(int k, double alpha) {
  if (k < 0) throw DomainError("sine_power_integral: k must be >= 0");
  if (k == 0) return alpha;
  if (k == 1) return 1.0 - std::cos(alpha);
  const double s = std::sin(alpha);
  return -std::pow(s, k - 1) * std::cos(alpha) / k + (k - 1.0) / k * sine_power_integral(k - 2, alpha);
}

double cap_aperture(double D, double rho, double r) {
  if (D == 0.0) return r < rho ? kPi : 0.0;
  if (r == 0.0) return D < rho ? kPi : 0.0;
  // 1 - cos(alpha) = (cosh rho - cosh(D - r)) / (sinh D sinh r)
  const double x = 2.0 * std::sinh(0.5 * (rho + D - r)) * std::sinh(0.5 * (rho - D + r)) /
                   (std::sinh(D) * std::sinh(r));
  if (x <= 0.0) return 0.0;
  if (x >= 2.0) return kPi;
  return 2.0 * std::asin(std::sqrt(0.5 * x));
}

CandidateRegion CandidateRegion::centered(double R) {
  require(valid_radius(R) && R > 0.0, "centered ball radius must be > 0");
  return CandidateRegion(shape::CenteredBall{R});
}

CandidateRegion CandidateRegion::offset(double D, double rho) {
  require(valid_radius(D), "offset center distance must be finite and >= 0");
  require(valid_radius(rho) && rho > 0.0, "offset ball radius must be > 0");
  return CandidateRegion(shape::OffsetBall{D, rho});
}

CandidateRegion CandidateRegion::annulus(double R1, double R2) {
  require(valid_radius(R1) && valid_radius(R2) && R1 < R2, "annulus needs 0 <= R1 < R2");
  return CandidateRegion(shape::Annulus{R1, R2});
}

CandidateRegion CandidateRegion::ball_shell(double R0, double R1, double R2) {
  require(valid_radius(R0) && valid_radius(R1) && valid_radius(R2) && R0 < R1 && R1 < R2,
          "ball_shell needs 0 <= R0 < R1 < R2");
  return CandidateRegion(shape::BallPlusShell{R0, R1, R2});
}

double CandidateRegion::outer_radius() const {
  return std::visit(Overloaded{
                        [](const shape::CenteredBall& b) { return b.radius; },
                        [](const shape::OffsetBall& b) { return b.center_distance + b.radius; },
                        [](const shape::Annulus& a) { return a.outer; },
                        [](const shape::BallPlusShell& s) { return s.shell_outer; },
                    },
                    shape_);
}

std::vector<double> CandidateRegion::singular_radii() const {
  return std::visit(Overloaded{
                        [](const shape::CenteredBall& b) { return std::vector<double>{b.radius}; },
                        [](const shape::OffsetBall& b) {
                          if (b.center_distance == 0.0) return std::vector<double>{b.radius};
                          return std::vector<double>{std::fabs(b.center_distance - b.radius),
                                                     b.center_distance + b.radius};
                        },
                        [](const shape::Annulus& a) { return std::vector<double>{a.inner, a.outer}; },
                        [](const shape::BallPlusShell& s) {
                          return std::vector<double>{s.ball_radius, s.shell_inner, s.shell_outer};
                        },
                    },
                    shape_);
}

std::string CandidateRegion::describe() const {
  const auto f = [](double x) { return format_double(x); };
  return std::visit(Overloaded{
                        [&](const shape::CenteredBall& b) { return "centered " + f(b.radius); },
                        [&](const shape::OffsetBall& b) { return "offset " + f(b.center_distance) + " " + f(b.radius); },
                        [&](const shape::Annulus& a) { return "annulus " + f(a.inner) + " " + f(a.outer); },
                        [&](const shape::BallPlusShell& s) {
                          return "ball_shell " + f(s.ball_radius) + " " + f(s.shell_inner) + " " + f(s.shell_outer);
                        },
                    },
                    shape_);
}

CandidateRegion parse_candidate(std::string_view spec) {
  std::istringstream in{std::string(spec)};
  std::string keyword;
  std::vector<double> args;
  in >> keyword;
  for (std::string tok; in >> tok;) args.push_back(parse_number(tok));
  auto arity = [&](std::size_t k) {
    if (args.size() != k)
      throw ParseError("'" + keyword + "' takes " + std::to_string(k) + " number(s), got " +
                       std::to_string(args.size()));
  };
  try {
    if (keyword == "centered") return arity(1), CandidateRegion::centered(args[0]);
    if (keyword == "offset") return arity(2), CandidateRegion::offset(args[0], args[1]);
    if (keyword == "annulus") return arity(2), CandidateRegion::annulus(args[0], args[1]);
    if (keyword == "ball_shell") return arity(3), CandidateRegion::ball_shell(args[0], args[1], args[2]);
  } catch (const DomainError& e) {
    throw ParseError("invalid candidate '" + std::string(spec) + "': " + e.what());
  }
  throw ParseError("unknown candidate shape '" + keyword + "'");
}

double candidate_volume(const CandidateRegion& c, const DensityPair& pair, Dimension n, const QuadratureSpec& q) {
  auto ball = [&](double R) { return centered_ball_volume(pair, n, R, q); };
  return std::visit(
      Overloaded{
          [&](const shape::CenteredBall& b) { return ball(b.radius); },
          [&](const shape::OffsetBall& b) {
            const int dim = n.value();
            const double omega_rim = unit_sphere_area(dim - 2);
            const auto inner = inner_spec(q);
            return integrate(
                       [&](double t) {
                         if (t == 0.0) return 0.0;
                         return omega_rim * std::pow(std::sinh(t), dim - 1) *
                                offset_sphere_angular(pair.volume(), dim, b.center_distance, t, 0.0, inner);
                       },
                       0.0, b.radius, q)
                .value;
          },
          [&](const shape::Annulus& a) { return ball(a.outer) - ball(a.inner); },
          [&](const shape::BallPlusShell& s) { return ball(s.ball_radius) + ball(s.shell_outer) - ball(s.shell_inner); },
      },
      c.shape());
}

double candidate_perimeter(const CandidateRegion& c, const DensityPair& pair, Dimension n, const QuadratureSpec& q) {
  auto sphere = [&](double R) { return centered_sphere_perimeter(pair, n, R); };
  return std::visit(
      Overloaded{
          [&](const shape::CenteredBall& b) { return sphere(b.radius); },
          [&](const shape::OffsetBall& b) {
            const int dim = n.value();
            return unit_sphere_area(dim - 2) * std::pow(std::sinh(b.radius), dim - 1) *
                   offset_sphere_angular(pair.perimeter(), dim, b.center_distance, b.radius, 0.0, q);
          },
          [&](const shape::Annulus& a) { return sphere(a.inner) + sphere(a.outer); },
          [&](const shape::BallPlusShell& s) {
            return sphere(s.ball_radius) + sphere(s.shell_inner) + sphere(s.shell_outer);
          },
      },
      c.shape());
}

std::vector<double> default_slice_grid(const CandidateRegion& c) {
  GridSpec g{1e-3, 1.2 * c.outer_radius(), 512, true};
  if (!(g.max > g.min)) throw DomainError("candidate too small for the default slice grid");
  return g.points();
}

SliceProfile slice_profile(const CandidateRegion& c, const DensityPair& pair, Dimension n,
                           const std::vector<double>& r_grid, const QuadratureSpec& q) {
  if (r_grid.empty()) throw DomainError("slice_profile: empty grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!valid_radius(r_grid[i])) throw DomainError("slice_profile: radii must be finite and >= 0");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw DomainError("slice_profile: grid must be increasing");
  }

  const Slicer slicer = make_slicer(c, pair, n, q);
  const auto& g = pair.volume();
  const auto& f = pair.perimeter();
  const std::size_t m = r_grid.size();

  SliceProfile sp;
  sp.n = n.value();
  sp.regime = pair.regime();
  sp.candidate = c.describe();
  sp.r = r_grid;
  sp.singular_radii = c.singular_radii();
  sp.outer_radius = slicer.outer;
  for (auto* v : {&sp.slice_area, &sp.slice_area_f, &sp.exterior_perimeter, &sp.exterior_perimeter_f,
                  &sp.exterior_volume, &sp.exterior_volume_g, &sp.exterior_volume_f, &sp.slice_perimeter,
                  &sp.slice_perimeter_f, &sp.volume_density, &sp.perimeter_density, &sp.sphere_area})
    v->assign(m, 0.0);

  if (const auto* b = std::get_if<shape::OffsetBall>(&c.shape())) {
    if (b->center_distance == 0.0)
      sp.notes.push_back("D = 0: slices are all-or-nothing (region is a centered ball)");
    else if (r_grid.front() == 0.0)
      sp.notes.push_back("r = 0: slice of the origin taken as all-or-nothing");
  }

  for (std::size_t i = 0; i < m; ++i) {
    const double r = r_grid[i];
    const double fr = f.value(r);
    sp.volume_density[i] = g.value(r);
    sp.perimeter_density[i] = fr;
    sp.sphere_area[i] = sphere_area_unweighted(n, GeodesicRadius(r));
    if (f.dlog(r) < -kConvexityTolerance) sp.perimeter_density_nondecreasing = false;
    if (r >= slicer.outer) continue;  // beyond the region everything vanishes
    sp.slice_area[i] = slicer.slice_area(r);
    sp.slice_area_f[i] = fr * sp.slice_area[i];
    sp.slice_perimeter[i] = slicer.slice_perimeter(r);
    sp.slice_perimeter_f[i] = fr * sp.slice_perimeter[i];
    sp.exterior_perimeter[i] = slicer.exterior_perimeter(r);
    sp.exterior_perimeter_f[i] = slicer.exterior_perimeter_f(r);
  }
  sp.total_perimeter_f = candidate_perimeter(c, pair, n, q);

  // Exterior volumes accumulate segment integrals from the outside in.
  double acc = 0.0, acc_g = 0.0, acc_f = 0.0;
  double upper = slicer.outer;
  for (std::size_t j = m; j-- > 0;) {
    const double r = r_grid[j];
    if (r >= slicer.outer) continue;
    acc += slice_integral(slicer, nullptr, r, upper, q);
    acc_g += slice_integral(slicer, &g, r, upper, q);
    acc_f += slice_integral(slicer, &f, r, upper, q);
    sp.exterior_volume[j] = acc;
    sp.exterior_volume_g[j] = acc_g;
    sp.exterior_volume_f[j] = acc_f;
    upper = r;
  }
  return sp;
}

}  // namespace hypiso
