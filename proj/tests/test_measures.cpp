#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "hypiso/errors.hpp"
#include "hypiso/measures.hpp"

using namespace hypiso;

namespace {
constexpr double kPi = std::numbers::pi;
const Dimension n2(2), n3(3);
}  // namespace

TEST(Measures, UnweightedPlaneClosedForms) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::constant(1.0));
  for (double R : {0.1, 1.0, 2.0, 5.0}) {
    const double vol = 2.0 * kPi * (std::cosh(R) - 1.0);
    const double per = 2.0 * kPi * std::sinh(R) * (1.0 + std::cosh(R));
    EXPECT_NEAR(centered_ball_volume(pair, n2, R), vol, 1e-10 * vol) << R;
    EXPECT_NEAR(centered_sphere_perimeter(pair, n2, R), per, 1e-13 * per) << R;
  }
  EXPECT_NEAR(centered_ball_volume(pair, n2, 1.0), 3.41227626, 1e-8);
}

TEST(Measures, ThreeDimensionalAndExponentialClosedForms) {
  const auto flat = DensityPair::equal(RadialDensity::constant(1.0));
  const auto expo = DensityPair::equal(RadialDensity::exp_linear(1.0));
  for (double R : {0.5, 1.0, 3.0}) {
    const double v3 = kPi * (std::sinh(2.0 * R) - 2.0 * R);
    EXPECT_NEAR(centered_ball_volume(flat, n3, R), v3, 1e-10 * v3);
    EXPECT_NEAR(centered_sphere_perimeter(flat, n3, R), 4.0 * kPi * std::pow(std::sinh(R), 2), 1e-12 * v3);
    // 2 pi integral sinh(t) e^t dt = pi ((e^{2R} - 1) / 2 - R)
    const double ve = kPi * (std::expm1(2.0 * R) / 2.0 - R);
    EXPECT_NEAR(centered_ball_volume(expo, n2, R), ve, 1e-10 * ve);
  }
}

TEST(Measures, ZeroRadius) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_linear(0.5));
  EXPECT_EQ(centered_ball_volume(pair, n2, 0.0), 0.0);
  EXPECT_EQ(centered_sphere_perimeter(pair, n3, 0.0), 0.0);
  EXPECT_EQ(log_centered_ball_volume(pair, n2, 0.0), -INFINITY);
  EXPECT_EQ(log_centered_sphere_perimeter(pair, n2, 0.0), -INFINITY);
  EXPECT_THROW(centered_ball_volume(pair, n2, -1.0), DomainError);
}

TEST(Measures, LogFormMatchesLinear) {
  props::Gen gen(42);
  const std::vector<RadialDensity> gs{RadialDensity::constant(1.0), RadialDensity::exp_linear(0.5),
                                      RadialDensity::exp_quadratic(0.25)};
  for (int i = 0; i < 200; ++i) {
    const auto& g = gs[static_cast<std::size_t>(gen.integer(0, 2))];
    const auto pair = DensityPair::make(g, gen.integer(0, 1) ? Regime::Equal : Regime::CoshSquared);
    const Dimension n(gen.integer(2, 4));
    const double R = gen.log_uniform(1e-3, 8.0);
    ASSERT_NEAR(log_centered_ball_volume(pair, n, R), std::log(centered_ball_volume(pair, n, R)), 1e-10);
    ASSERT_NEAR(log_centered_sphere_perimeter(pair, n, R), std::log(centered_sphere_perimeter(pair, n, R)), 1e-10);
  }
}

TEST(Measures, LogFormBeyondDoubleRange) {
  // exp(R^2) at R = 30 overflows; shifting the log density by a constant is exact.
  const auto big = DensityPair::equal(RadialDensity::exp_quadratic(1.0));
  const auto shifted = DensityPair::equal(RadialDensity::log_polynomial({-800.0, 0.0, 1.0}));
  const double lv = log_centered_ball_volume(big, n2, 30.0);
  EXPECT_TRUE(std::isfinite(lv));
  EXPECT_NEAR(lv, std::log(centered_ball_volume(shifted, n2, 30.0)) + 800.0, 1e-9 * lv);
  EXPECT_NEAR(log_centered_sphere_perimeter(big, n2, 30.0),
              900.0 + std::log(2.0 * kPi * std::sinh(30.0)), 1e-12 * 900.0);
}

TEST(Measures, ShellVolumeIsAdditive) {
  const auto g = RadialDensity::exp_quadratic(0.25);
  const double a = shell_volume(g, n3, 0.5, 1.2), b = shell_volume(g, n3, 1.2, 2.0);
  EXPECT_NEAR(a + b, shell_volume(g, n3, 0.5, 2.0), 1e-10 * (a + b));
  EXPECT_NEAR(shell_volume(g, n3, 0.0, 2.0), centered_ball_volume(DensityPair::equal(g), n3, 2.0), 1e-10 * (a + b));
  EXPECT_NEAR(weighted_sphere_area(g, n3, 1.0), 4.0 * kPi * std::pow(std::sinh(1.0), 2) * std::exp(0.25), 1e-12);
}

TEST(Measures, ProfileInversion) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_linear(0.5));
  for (double R : {0.01, 0.5, 2.0, 6.0}) {
    const double v = centered_ball_volume(pair, n3, R);
    EXPECT_NEAR(profile_radius_for_volume(pair, n3, v), R, 1e-7 * R) << R;
  }
  EXPECT_EQ(profile_radius_for_volume(pair, n3, 0.0), 0.0);
  EXPECT_THROW(profile_radius_for_volume(pair, n3, -1.0), DomainError);
}

TEST(Measures, ProfileSweepIsThreadIndependent) {
  const auto pair = DensityPair::cosh_squared(RadialDensity::exp_quadratic(0.25));
  std::vector<double> grid;
  for (int i = 0; i < 64; ++i) grid.push_back(0.1 * (i + 1));
  const auto one = profile_sweep(pair, n2, grid, {}, 1);
  const auto many = profile_sweep(pair, n2, grid, {}, 8);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].vol_g, many[i].vol_g);
    EXPECT_EQ(one[i].per_f, many[i].per_f);
    EXPECT_EQ(one[i].log_vol_g, many[i].log_vol_g);
    EXPECT_FALSE(one[i].H.has_value());
  }
  EXPECT_THROW(profile_sweep(pair, n2, {1.0, 0.5}), DomainError);
}

TEST(MeasuresProperty, ProfileIsIncreasing) {
  props::Gen gen(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = gen.log_convex_polynomial();
    const auto pair = DensityPair::cosh_squared(g);
    double pv = 0.0, pp = 0.0;
    for (int i = 1; i <= 30; ++i) {
      const double R = 0.1 * i;
      const double v = centered_ball_volume(pair, n2, R), p = centered_sphere_perimeter(pair, n2, R);
      ASSERT_GT(v, pv);
      ASSERT_GT(p, pp);
      pv = v;
      pp = p;
    }
  }
}

TEST(Measures, PoincareChartAgreesWithGeodesicChart) {
  for (int n : {2, 3}) {
    const auto pair = DensityPair::cosh_squared(RadialDensity::exp_linear(1.0));
    const auto ball = equivalent_ball_density(pair, Dimension(n));
    for (double R : {0.5, 1.0, 2.0}) {
      const double r = std::tanh(R / 2.0);
      const double v = centered_ball_volume(pair, Dimension(n), R);
      const double p = centered_sphere_perimeter(pair, Dimension(n), R);
      EXPECT_NEAR(poincare_chart_ball_volume(ball, Dimension(n), r), v, 1e-9 * v);
      EXPECT_NEAR(poincare_chart_sphere_perimeter(ball, Dimension(n), r), p, 1e-12 * p);
    }
  }
  EXPECT_THROW(poincare_chart_ball_volume(RadialDensity::constant(1.0), n2, 0.5), DomainError);
}
