#include "hypiso/grid.hpp"

#include <charconv>
#include <cmath>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"

namespace hypiso {

std::vector<double> GridSpec::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = min;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[static_cast<std::size_t>(i)] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  out.back() = max;
  return out;
}

std::string GridSpec::describe() const {
  return format_double(min) + ":" + format_double(max) + ":" + std::to_string(count) + (log ? ":log" : "");
}

double parse_number(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || token.empty() || !std::isfinite(value))
    throw ParseError("not a finite decimal number: '" + std::string(token) + "'");
  return value;
}

GridSpec parse_grid(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(':', start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 3 && parts.size() != 4)
    throw ParseError("grid must be <min>:<max>:<count>[:log], got '" + std::string(text) + "'");

  GridSpec g;
  g.min = parse_number(parts[0]);
  g.max = parse_number(parts[1]);
  const double count = parse_number(parts[2]);
  if (count < 1 || count != std::floor(count) || count > 1e7)
    throw ParseError("grid count must be a positive integer");
  g.count = static_cast<int>(count);
  if (parts.size() == 4) {
    if (parts[3] != "log") throw ParseError("unknown grid spacing '" + std::string(parts[3]) + "'");
    g.log = true;
  }
  if (g.count > 1 && !(g.max > g.min)) throw ParseError("grid must be increasing");
  if (g.count == 1 && g.max != g.min) throw ParseError("single-point grid needs min == max");
  if (g.log && !(g.min > 0.0)) throw ParseError("log grid needs min > 0");
  return g;
}

}  // namespace hypiso
