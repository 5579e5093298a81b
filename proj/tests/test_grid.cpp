#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"
#include "hypiso/grid.hpp"

using namespace hypiso;

TEST(Grid, LinearPoints) {
  const auto g = parse_grid("0.25:4:16");
  const auto p = g.points();
  ASSERT_EQ(p.size(), 16u);
  EXPECT_EQ(p.front(), 0.25);
  EXPECT_EQ(p.back(), 4.0);
  EXPECT_NEAR(p[1] - p[0], 0.25, 1e-15);
  EXPECT_EQ(g.describe(), "0.25:4:16");
}

TEST(Grid, LogPoints) {
  const auto p = parse_grid("0.001:1000:7:log").points();
  ASSERT_EQ(p.size(), 7u);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i], std::pow(10.0, -3.0 + static_cast<double>(i)), 1e-12 * p[i]);
  EXPECT_EQ(p.back(), 1000.0);
}

TEST(Grid, SinglePoint) {
  const auto p = parse_grid("2:2:1").points();
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], 2.0);
}

TEST(Grid, RejectsMalformed) {
  for (const char* bad : {"", "1:2", "1:2:x", "1:2:0", "2:1:5", "0:1:5:log", "1:2:3:cubic", "1:2:2.5", "a:2:3",
                          "1:2:3:log:extra", "1:inf:3"})
    EXPECT_THROW(parse_grid(bad), ParseError) << bad;
}

TEST(Grid, ParseNumber) {
  EXPECT_EQ(parse_number("1.5"), 1.5);
  EXPECT_EQ(parse_number("-2e-3"), -2e-3);
  EXPECT_THROW(parse_number("1.5x"), ParseError);
  EXPECT_THROW(parse_number("nan"), ParseError);
  EXPECT_THROW(parse_number(""), ParseError);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(format_double(NAN), "nan");
  for (double x : {std::numbers::pi, 1e-300, 3.4122762652849024, std::numeric_limits<double>::denorm_min()})
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
}
