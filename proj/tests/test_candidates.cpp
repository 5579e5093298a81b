#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "hypiso/candidates.hpp"
#include "hypiso/errors.hpp"
#include "hypiso/geometry.hpp"
#include "hypiso/measures.hpp"
#include "hypiso/quadrature.hpp"

using namespace hypiso;

namespace {
constexpr double kPi = std::numbers::pi;
const Dimension n2(2), n3(3);

const DensityPair& flat_equal() {
  static const DensityPair p = DensityPair::equal(RadialDensity::constant(1.0));
  return p;
}
const DensityPair& flat_theorem() {
  static const DensityPair p = DensityPair::cosh_squared(RadialDensity::constant(1.0));
  return p;
}
}  // namespace

TEST(Candidates, ParseAndDescribe) {
  EXPECT_EQ(parse_candidate("centered 1").describe(), "centered 1");
  EXPECT_EQ(parse_candidate("offset 0.5 1").describe(), "offset 0.5 1");
  EXPECT_EQ(parse_candidate(" annulus  1 2 ").describe(), "annulus 1 2");
  EXPECT_EQ(parse_candidate("ball_shell 0.5 3 3.1").describe(), "ball_shell 0.5 3 3.1");
  for (const char* bad : {"", "centered", "centered -1", "centered 0", "offset 1", "offset -1 1", "annulus 2 1",
                          "annulus 1 1", "ball_shell 1 0.5 2", "ball_shell 0.5 2 1", "square 1", "centered 1 2",
                          "centered x"})
    EXPECT_THROW(parse_candidate(bad), ParseError) << bad;
}

TEST(Candidates, OuterAndSingularRadii) {
  EXPECT_EQ(CandidateRegion::offset(0.5, 1.0).outer_radius(), 1.5);
  EXPECT_EQ(CandidateRegion::offset(0.5, 1.0).singular_radii(), (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(CandidateRegion::offset(0.0, 1.0).singular_radii(), (std::vector<double>{1.0}));
  EXPECT_EQ(CandidateRegion::ball_shell(0.5, 3.0, 3.1).singular_radii(), (std::vector<double>{0.5, 3.0, 3.1}));
  EXPECT_EQ(CandidateRegion::annulus(1.0, 2.0).outer_radius(), 2.0);
}

TEST(Candidates, CenteredMatchesMeasures) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_linear(0.5));
  const auto c = CandidateRegion::centered(1.3);
  EXPECT_NEAR(candidate_volume(c, pair, n3), centered_ball_volume(pair, n3, 1.3), 1e-12);
  EXPECT_NEAR(candidate_perimeter(c, pair, n3), centered_sphere_perimeter(pair, n3, 1.3), 1e-12);
}

TEST(Candidates, AnnulusClosedForm) {
  const auto a = CandidateRegion::annulus(1.0, 2.0);
  const double per = 2.0 * kPi * (std::sinh(1.0) * (1.0 + std::cosh(1.0)) + std::sinh(2.0) * (1.0 + std::cosh(2.0)));
  EXPECT_NEAR(candidate_perimeter(a, flat_theorem(), n2), per, 1e-12 * per);
  EXPECT_NEAR(candidate_perimeter(a, flat_theorem(), n2), 127.30016, 1e-5);
  const double vol = 2.0 * kPi * (std::cosh(2.0) - std::cosh(1.0));
  EXPECT_NEAR(candidate_volume(a, flat_theorem(), n2), vol, 1e-10 * vol);
}

TEST(Candidates, BallShellIsSumOfParts) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_quadratic(0.25));
  const auto c = CandidateRegion::ball_shell(0.5, 2.0, 2.2);
  const double vol = centered_ball_volume(pair, n2, 0.5) + centered_ball_volume(pair, n2, 2.2) -
                     centered_ball_volume(pair, n2, 2.0);
  EXPECT_NEAR(candidate_volume(c, pair, n2), vol, 1e-9 * vol);
  const double per = centered_sphere_perimeter(pair, n2, 0.5) + centered_sphere_perimeter(pair, n2, 2.0) +
                     centered_sphere_perimeter(pair, n2, 2.2);
  EXPECT_NEAR(candidate_perimeter(c, pair, n2), per, 1e-12 * per);
}

TEST(CandidatesProperty, UnweightedOffsetBallIsIsometricToCentered) {
  // With g = f = 1 moving a ball is an isometry.
  props::Gen gen(42);
  for (int i = 0; i < 12; ++i) {
    const double D = gen.uniform(0.0, 2.0), rho = gen.uniform(0.2, 2.0);
    const Dimension n(gen.integer(2, 3));
    const auto c = CandidateRegion::offset(D, rho);
    const double v = centered_ball_volume(flat_equal(), n, rho);
    const double p = centered_sphere_perimeter(flat_equal(), n, rho);
    EXPECT_NEAR(candidate_volume(c, flat_equal(), n), v, 1e-8 * v) << D << " " << rho;
    EXPECT_NEAR(candidate_perimeter(c, flat_equal(), n), p, 1e-8 * p) << D << " " << rho;
  }
}

TEST(Candidates, OffsetAtZeroIsCentered) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_linear(0.5));
  const auto c = CandidateRegion::offset(0.0, 1.0);
  EXPECT_NEAR(candidate_volume(c, pair, n2), centered_ball_volume(pair, n2, 1.0), 1e-9);
  EXPECT_NEAR(candidate_perimeter(c, pair, n2), centered_sphere_perimeter(pair, n2, 1.0), 1e-9);
}

TEST(Candidates, SinePowerIntegral) {
  EXPECT_NEAR(sine_power_integral(0, 1.2), 1.2, 1e-15);
  EXPECT_NEAR(sine_power_integral(1, 1.2), 1.0 - std::cos(1.2), 1e-15);
  EXPECT_NEAR(sine_power_integral(2, kPi), kPi / 2.0, 1e-15);
  for (int k = 0; k <= 6; ++k)
    for (double a : {0.3, 1.0, 2.5, kPi}) {
      const double q = integrate([k](double t) { return std::pow(std::sin(t), k); }, 0.0, a,
                                 QuadratureSpec{1e-13, 1e-15, 2000})
                           .value;
      EXPECT_NEAR(sine_power_integral(k, a), q, 1e-13) << k << " " << a;
    }
  EXPECT_THROW(sine_power_integral(-1, 1.0), DomainError);
}

TEST(CandidatesProperty, CapApertureLiesOnTheBoundarySphere) {
  props::Gen gen(42);
  for (int i = 0; i < 2000; ++i) {
    const double D = gen.uniform(0.05, 3.0), rho = gen.uniform(0.05, 3.0);
    const double lo = std::fabs(D - rho), hi = D + rho;
    const double r = gen.uniform(lo, hi);
    const double a = cap_aperture(D, rho, r);
    ASSERT_GE(a, 0.0);
    ASSERT_LE(a, kPi);
    ASSERT_NEAR(hyperbolic_distance(D, r, a), rho, 1e-8 * std::max(1.0, rho)) << D << " " << rho << " " << r;
  }
  EXPECT_EQ(cap_aperture(0.5, 1.0, 0.3), kPi);
  EXPECT_EQ(cap_aperture(0.5, 1.0, 1.6), 0.0);
  EXPECT_EQ(cap_aperture(2.0, 0.5, 1.0), 0.0);
}

TEST(Candidates, OffsetSliceIsArcInPlane) {
  const auto c = CandidateRegion::offset(1.0, 0.7);
  const std::vector<double> grid{0.4, 0.8, 1.2, 1.6};
  const auto sp = slice_profile(c, flat_theorem(), n2, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double expected = 2.0 * cap_aperture(1.0, 0.7, grid[i]) * std::sinh(grid[i]);
    EXPECT_NEAR(sp.slice_area[i], expected, 1e-12 * std::max(1.0, expected));
    EXPECT_NEAR(sp.slice_area_f[i], expected * (1.0 + std::cosh(grid[i])), 1e-11 * std::max(1.0, expected));
  }
}

TEST(Candidates, ExteriorVolumeFromOriginIsTotalVolume) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_linear(0.5));
  for (const char* spec : {"centered 1", "offset 0.5 1", "offset 2 0.7", "annulus 1 2", "ball_shell 0.5 3 3.1"}) {
    const auto c = parse_candidate(spec);
    std::vector<double> grid{0.0};
    for (double r : default_slice_grid(c)) grid.push_back(r);
    const auto sp = slice_profile(c, pair, n3, grid);
    const double v = candidate_volume(c, pair, n3);
    EXPECT_NEAR(sp.exterior_volume_g[0], v, 1e-8 * v) << spec;
    const double p = candidate_perimeter(c, pair, n3);
    EXPECT_NEAR(sp.total_perimeter_f, p, 1e-12 * p) << spec;
    EXPECT_NEAR(sp.exterior_perimeter_f[0], p, 1e-8 * p) << spec;
    EXPECT_EQ(sp.exterior_volume_g.back(), 0.0) << spec;
    for (std::size_t i = 1; i < sp.size(); ++i) ASSERT_LE(sp.exterior_volume_g[i], sp.exterior_volume_g[i - 1]);
  }
}

TEST(Candidates, DegenerateSlicesAreNoted) {
  const auto sp = slice_profile(CandidateRegion::offset(0.0, 1.0), flat_theorem(), n2, {0.0, 0.5, 1.5});
  ASSERT_FALSE(sp.notes.empty());
  EXPECT_NEAR(sp.slice_area[1], 2.0 * kPi * std::sinh(0.5), 1e-12);
  EXPECT_EQ(sp.slice_area[2], 0.0);
  const auto sp0 = slice_profile(CandidateRegion::offset(0.5, 1.0), flat_theorem(), n2, {0.0, 0.5});
  EXPECT_FALSE(sp0.notes.empty());
}

TEST(Candidates, SliceGridValidation) {
  const auto c = CandidateRegion::centered(1.0);
  EXPECT_THROW(slice_profile(c, flat_theorem(), n2, {}), DomainError);
  EXPECT_THROW(slice_profile(c, flat_theorem(), n2, {0.5, 0.5}), DomainError);
  EXPECT_THROW(slice_profile(c, flat_theorem(), n2, {-0.1, 0.5}), DomainError);
  const auto g = default_slice_grid(c);
  EXPECT_EQ(g.size(), 512u);
  EXPECT_NEAR(g.front(), 1e-3, 1e-15);
  EXPECT_NEAR(g.back(), 1.2, 1e-12);
}
