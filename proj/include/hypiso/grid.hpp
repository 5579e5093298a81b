#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hypiso {

/// count points from min to max inclusive, linearly or geometrically spaced.
struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  bool log = false;

  std::vector<double> points() const;
  /// "<min>:<max>:<count>[:log]"
  std::string describe() const;
};

/// Parses "<min>:<max>:<count>[:log]". Throws ParseError.
GridSpec parse_grid(std::string_view text);

/// Parses a decimal literal, rejecting trailing garbage. Throws ParseError.
double parse_number(std::string_view token);

}  // namespace hypiso
