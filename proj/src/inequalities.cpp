#include "hypiso/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"
#include "hypiso/measures.hpp"
#include "hypiso/roots.hpp"

namespace hypiso {
namespace {

// Running minimum of normalized slack.
class MarginTracker {
 public:
  MarginTracker(std::string name, double tolerance) {
    report_.check_name = std::move(name);
    report_.tolerance = tolerance;
    report_.worst_margin = std::numeric_limits<double>::infinity();
  }

  // Records lhs >= rhs at radius r. `floor` bounds the normalizing scale
  // from below (roundoff level of a differenced quantity).
  void at_least(double lhs, double rhs, double r, double floor = 0.0) {
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs), floor});
    record(scale > 0.0 ? (lhs - rhs) / scale : 0.0, r);
  }

  // Records |a - b| small relative to max(|a|, |b|, floor).
  void close(double a, double b, double r, double floor = 0.0) {
    const double scale = std::max({std::fabs(a), std::fabs(b), floor});
    record(scale > 0.0 ? -std::fabs(a - b) / scale : 0.0, r);
  }

  void count_point() { ++report_.points_checked; }
  void note(std::string s) { report_.notes.push_back(std::move(s)); }
  CheckReport& report() { return report_; }

  CheckReport finish() {
    if (!std::isfinite(report_.worst_margin)) report_.worst_margin = 0.0;
    report_.status = report_.worst_margin >= -report_.tolerance ? CheckStatus::Passed : CheckStatus::Failed;
    return report_;
  }

 private:
  void record(double margin, double r) {
    if (margin < report_.worst_margin) {
      report_.worst_margin = margin;
      report_.worst_r = r;
    }
  }
  CheckReport report_;
};

// Central difference stencil half-width (five-point stencil).
constexpr std::size_t kStencil = 2;

// Points whose differencing stencil (half-width `stencil`) comes within
// kExclusionCells cells of a singular radius.
std::vector<bool> near_singular(const SliceProfile& sp, std::size_t stencil) {
  const std::size_t m = sp.size();
  const std::size_t w = kExclusionCells + stencil;
  std::vector<bool> out(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = sp.r[i >= w ? i - w : 0];
    const double hi = sp.r[std::min(m - 1, i + w)];
    for (double s : sp.singular_radii)
      if (s >= lo && s <= hi) out[i] = true;
  }
  return out;
}

struct Derivative {
  double value;
  double roundoff;  // noise level of the difference from rounding in y
};

// Derivative at r[i] of the Lagrange interpolant through r[i-2..i+2].
Derivative central_derivative(const std::vector<double>& r, const std::vector<double>& y, std::size_t i) {
  const std::size_t lo = i - kStencil, hi = i + kStencil;
  const double x0 = r[i];
  double value = 0.0, weight_sum = 0.0, y_max = 0.0;
  for (std::size_t j = lo; j <= hi; ++j) {
    double w = 0.0;
    if (j == i) {
      for (std::size_t k = lo; k <= hi; ++k)
        if (k != j) w += 1.0 / (r[j] - r[k]);
    } else {
      // L_j'(x0) = prod_{l != j, i} (x0 - r_l) / prod_{l != j} (r_j - r_l)
      double num = 1.0, den = 1.0;
      for (std::size_t l = lo; l <= hi; ++l) {
        if (l == j) continue;
        den *= r[j] - r[l];
        if (l != i) num *= x0 - r[l];
      }
      w = num / den;
    }
    value += w * y[j];
    weight_sum += std::fabs(w);
    y_max = std::max(y_max, std::fabs(y[j]));
  }
  return {value, 1e6 * std::numeric_limits<double>::epsilon() * y_max * weight_sum};
}

double perimeter_to_volume_ratio(const SliceProfile& sp, std::size_t i) {
  if (sp.regime == Regime::CoshSquared) return 1.0 + std::cosh(sp.r[i]);  // 2cosh^2(r/2)
  return 1.0;
}

}  // namespace

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Passed:
      return "passed";
    case CheckStatus::Failed:
      return "failed";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "?";
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["check_name"] = r.check_name;
  j["passed"] = r.passed();
  j["status"] = to_string(r.status);
  j["worst_margin"] = r.worst_margin;
  j["worst_r"] = r.worst_r;
  j["points_checked"] = r.points_checked;
  j["tolerance"] = r.tolerance;
  j["notes"] = r.notes;
  if (r.fitted_constant) j["fitted_constant"] = *r.fitted_constant;
  return j;
}

CheckReport check_projection(const SliceProfile& sp) {
  MarginTracker t("check_projection", kExactCheckTolerance);
  const std::size_t m = sp.size();
  const bool weighted = sp.perimeter_density_nondecreasing;
  if (!weighted) t.note("perimeter density decreases on the grid: weighted projection bounds skipped");

  // sup_{r >= r_i} |E_r| over the sampled radii.
  std::vector<double> tail_sup(m, 0.0);
  for (std::size_t j = m; j-- > 0;) tail_sup[j] = std::max(sp.slice_area[j], j + 1 < m ? tail_sup[j + 1] : 0.0);

  for (std::size_t i = 0; i < m; ++i) {
    t.count_point();
    t.at_least(sp.exterior_perimeter[i], sp.slice_area[i], sp.r[i]);
    if (weighted) {
      t.at_least(sp.exterior_perimeter_f[i], sp.slice_area_f[i], sp.r[i]);
      t.at_least(sp.total_perimeter_f, tail_sup[i] * sp.perimeter_density[i], sp.r[i]);
    }
  }
  return t.finish();
}

CheckReport check_slice_identity(const SliceProfile& sp) {
  MarginTracker exact("check_slice_identity", kExactCheckTolerance);
  const std::size_t m = sp.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double via_ratio = perimeter_to_volume_ratio(sp, i) * sp.volume_density[i] * sp.slice_area[i];
    exact.close(sp.slice_area_f[i], via_ratio, sp.r[i]);
  }
  CheckReport algebraic = exact.finish();

  MarginTracker fd("check_slice_identity", kFiniteDifferenceTolerance);
  const auto excluded = near_singular(sp, kStencil);
  int skipped = 0;
  for (std::size_t i = kStencil; i + kStencil < m; ++i) {
    if (excluded[i]) {
      ++skipped;
      continue;
    }
    fd.count_point();
    const double ratio = perimeter_to_volume_ratio(sp, i);
    const auto dVg = central_derivative(sp.r, sp.exterior_volume_g, i);
    const auto dVf = central_derivative(sp.r, sp.exterior_volume_f, i);
    fd.close(-ratio * dVg.value, sp.slice_area_f[i], sp.r[i], ratio * dVg.roundoff);
    fd.close(-dVf.value, sp.slice_area_f[i], sp.r[i], dVf.roundoff);
  }
  if (skipped > 0)
    fd.note(std::to_string(skipped) + " point(s) whose stencil is within " + std::to_string(kExclusionCells) +
            " cells of tangency/boundary radii not differenced");
  CheckReport out = fd.finish();

  out.points_checked = algebraic.points_checked + out.points_checked;
  out.notes.insert(out.notes.begin(), "algebraic identity worst relative gap " +
                                          format_double(-algebraic.worst_margin) + " (tolerance " +
                                          format_double(kExactCheckTolerance) + ")");
  if (!algebraic.passed()) {
    out.status = CheckStatus::Failed;
    out.worst_margin = algebraic.worst_margin;
    out.worst_r = algebraic.worst_r;
    out.tolerance = kExactCheckTolerance;
  }
  return out;
}

CheckReport check_perimeter_derivative(const SliceProfile& sp) {
  MarginTracker t("check_perimeter_derivative", kFiniteDifferenceTolerance);
  const std::size_t m = sp.size();
  const auto excluded = near_singular(sp, kStencil);

  // Segment slopes of P_f and jump detection.
  std::vector<double> slope(m > 0 ? m - 1 : 0, 0.0);
  for (std::size_t j = 0; j + 1 < m; ++j)
    slope[j] = std::fabs(sp.exterior_perimeter_f[j + 1] - sp.exterior_perimeter_f[j]) / (sp.r[j + 1] - sp.r[j]);
  std::vector<bool> jump(slope.size(), false);
  std::vector<double> jump_radii;
  for (std::size_t j = 0; j < slope.size(); ++j) {
    const double left = j > 0 ? slope[j - 1] : 0.0;
    const double right = j + 1 < slope.size() ? slope[j + 1] : 0.0;
    if (slope[j] > 0.0 && slope[j] > 10.0 * std::max(left, right)) {
      jump[j] = true;
      jump_radii.push_back(0.5 * (sp.r[j] + sp.r[j + 1]));
    }
  }

  int skipped = 0;
  for (std::size_t i = kStencil; i + kStencil < m; ++i) {
    bool near_jump = false;
    for (std::size_t j = i - kStencil; j < i + kStencil; ++j) near_jump = near_jump || jump[j];
    if (excluded[i] || near_jump) {
      ++skipped;
      continue;
    }
    t.count_point();
    const auto dP = central_derivative(sp.r, sp.exterior_perimeter_f, i);
    t.at_least(-dP.value, sp.slice_perimeter_f[i], sp.r[i], dP.roundoff);
  }
  if (!jump_radii.empty()) {
    std::string s = "jumps of P_f excluded near r =";
    for (double r : jump_radii) s += " " + format_double(r);
    t.note(s);
  }
  if (skipped > 0) t.note(std::to_string(skipped) + " point(s) excluded at jumps or tangency radii");
  return t.finish();
}

CheckReport check_decay_bound(const SliceProfile& sp, double exclude_tail_fraction) {
  if (!(exclude_tail_fraction >= 0.0 && exclude_tail_fraction < 1.0))
    throw DomainError("exclude_tail_fraction must lie in [0, 1)");
  CheckReport rep;
  rep.check_name = "check_decay_bound";
  rep.tolerance = 0.0;
  const std::size_t m = sp.size();
  const auto keep = static_cast<std::size_t>(std::ceil(static_cast<double>(m) * (1.0 - exclude_tail_fraction)));
  const double exponent = (sp.n - 1.0) / sp.n;

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < keep; ++i) {
    if (!(sp.exterior_volume_g[i] > 0.0)) continue;
    ++rep.points_checked;
    const double ch = std::cosh(0.5 * sp.r[i]);
    const double ratio = sp.exterior_perimeter_f[i] / (ch * ch * std::pow(sp.exterior_volume_g[i], exponent));
    if (ratio < best) {
      best = ratio;
      rep.worst_r = sp.r[i];
    }
  }
  if (rep.points_checked == 0) {
    rep.vacuous = true;
    rep.status = CheckStatus::Passed;
    rep.notes.push_back("vacuous: exterior volume vanishes on the whole grid");
    return rep;
  }
  rep.fitted_constant = best;
  rep.worst_margin = best;
  rep.status = best > 0.0 ? CheckStatus::Passed : CheckStatus::Failed;
  return rep;
}

double spherical_cap_constant(int n) {
  if (n < 3) throw DomainError("spherical cap constant needs n >= 3");
  constexpr int kApertures = 10000;
  const double omega = unit_sphere_area(n - 2);
  const double exponent = (n - 2.0) / (n - 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kApertures; ++k) {
    const double a = 0.5 * std::numbers::pi * k / kApertures;
    const double rim = omega * std::pow(std::sin(a), n - 2);
    const double area = omega * sine_power_integral(n - 2, a);
    best = std::min(best, rim / std::pow(area, exponent));
  }
  return best;
}

CheckReport check_spherical_isoperimetric(const SliceProfile& sp) {
  if (sp.n == 2) {
    CheckReport rep;
    rep.check_name = "check_spherical_isoperimetric";
    rep.status = CheckStatus::Skipped;
    rep.notes.push_back("skipped: exponent (n-2)/(n-1) vanishes for n = 2");
    return rep;
  }
  MarginTracker t("check_spherical_isoperimetric", kExactCheckTolerance);
  const double c = spherical_cap_constant(sp.n);
  const double exponent = (sp.n - 2.0) / (sp.n - 1.0);
  t.report().fitted_constant = c;
  int inapplicable = 0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (!(sp.sphere_area[i] > 0.0) || sp.slice_area[i] > 0.5 * sp.sphere_area[i]) {
      ++inapplicable;
      continue;
    }
    t.count_point();
    t.at_least(sp.slice_perimeter[i], c * std::pow(sp.slice_area[i], exponent), sp.r[i]);
  }
  t.note("c_n = " + format_double(c) + "; " + std::to_string(inapplicable) +
         " point(s) with slice larger than half the sphere not applicable");
  return t.finish();
}

std::vector<CheckReport> run_check_suite(const SliceProfile& sp) {
  return {check_projection(sp), check_slice_identity(sp), check_perimeter_derivative(sp), check_decay_bound(sp),
          check_spherical_isoperimetric(sp)};
}

std::vector<BoundednessRow> boundedness_comparison(const DensityPair& pair, Dimension n, double R0,
                                                   double shell_fraction, const std::vector<double>& centers,
                                                   const QuadratureSpec& q) {
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw DomainError("boundedness_comparison: R0 must be > 0");
  if (!(shell_fraction > 0.0 && shell_fraction <= 0.5))
    throw DomainError("boundedness_comparison: shell fraction must lie in (0, 0.5]");

  const double ball_volume = centered_ball_volume(pair, n, R0, q);
  const double total = ball_volume / (1.0 - shell_fraction);
  const double shell_target = total - ball_volume;
  const double centered_R = profile_radius_for_volume(pair, n, total, q);
  const double centered_P = centered_sphere_perimeter(pair, n, centered_R);

  std::vector<BoundednessRow> rows;
  for (double s : centers) {
    if (!(s >= R0 + 1.0)) throw DomainError("boundedness_comparison: shell centers must be >= R0 + 1");
    auto shell = [&](double w) { return shell_volume(pair.volume(), n, s - w, s + w, q); };
    const double tol = std::max(q.abs_tol, q.rel_tol * shell_target);
    if (shell(s - R0) < shell_target)
      throw ConvergenceError("boundedness_comparison: shell at " + format_double(s) + " cannot hold the volume");
    const double w = solve_increasing(shell, shell_target, 0.0, s - R0, tol).x;

    const auto composite = CandidateRegion::ball_shell(R0, s - w, s + w);
    BoundednessRow row;
    row.center = s;
    row.shell_inner = s - w;
    row.shell_outer = s + w;
    row.total_volume = total;
    row.composite_perimeter = candidate_perimeter(composite, pair, n, q);
    row.centered_radius = centered_R;
    row.centered_perimeter = centered_P;
    row.excess = row.composite_perimeter - centered_P;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace hypiso
