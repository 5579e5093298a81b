#pragma once

// Validators for the slicing inequalities and identities satisfied by any
// finite-volume region, evaluated on sampled SliceProfiles.
//
// Each check reports its worst normalized slack: for a pointwise inequality
// lhs >= rhs the margin is (lhs - rhs) / max(|lhs|, |rhs|), and the check
// passes when every margin is >= -tolerance.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypiso/candidates.hpp"
#include "hypiso/density.hpp"

namespace hypiso {

enum class CheckStatus { Passed, Failed, Skipped };

std::string_view to_string(CheckStatus s);

struct CheckReport {
  std::string check_name;
  CheckStatus status = CheckStatus::Passed;
  double worst_margin = 0.0;
  double worst_r = 0.0;
  int points_checked = 0;
  double tolerance = 0.0;
  std::vector<std::string> notes;
  std::optional<double> fitted_constant;  ///< check_decay_bound only
  bool vacuous = false;

  bool passed() const noexcept { return status != CheckStatus::Failed; }
};

/// {check_name, passed, status, worst_margin, worst_r, points_checked, tolerance, notes[, fitted_constant]}
nlohmann::ordered_json to_json(const CheckReport& r);

/// Tolerance for checks that compare exactly computed quantities.
inline constexpr double kExactCheckTolerance = 1e-8;
/// Tolerance for checks that compare against finite differences of sampled data.
inline constexpr double kFiniteDifferenceTolerance = 1e-3;
/// Grid cells kept between a differencing stencil and a non-differentiable radius.
inline constexpr int kExclusionCells = 2;

/// P(r) >= |E_r| (radial projection of the exterior boundary covers the
/// slice), its f-weighted version, and |dE|_f >= f(r0) sup_{r >= r0} |E_r|.
/// The weighted parts need f nondecreasing and are skipped otherwise.
CheckReport check_projection(const SliceProfile& sp);

/// Slice areas are the derivatives of exterior volume:
///   -(f/g)(r) V_g'(r) = -V_f'(r) = |E_r|_f,
/// with f/g = 2cosh^2(r/2) for the cosh-squared pair. The algebraic piece is
/// checked at kExactCheckTolerance, the derivative pieces by central
/// differences at kFiniteDifferenceTolerance away from tangency radii.
CheckReport check_slice_identity(const SliceProfile& sp);

/// -P_f'(r) >= p_f(r) at differentiable radii; jumps of P_f are detected
/// (slope > 10x both neighbours) and excluded with a note.
CheckReport check_perimeter_derivative(const SliceProfile& sp);

/// c* = min P_f(r) / [cosh^2(r/2) V_g(r)^{(n-1)/n}] over radii with V_g > 0,
/// after dropping the largest exclude_tail_fraction of the grid. Passes iff
/// c* > 0; vacuous when V_g vanishes on the whole grid.
CheckReport check_decay_bound(const SliceProfile& sp, double exclude_tail_fraction = 0.0);

/// min over cap apertures a in (0, pi/2] (10^4 samples) of
/// p(cap) / |cap|^{(n-2)/(n-1)} on the unit sphere S^{n-1}.
double spherical_cap_constant(int n);

/// p(r) >= c_n |E_r|^{(n-2)/(n-1)} wherever |E_r| <= |S(r)|/2. Skipped for n = 2.
CheckReport check_spherical_isoperimetric(const SliceProfile& sp);

/// The five checks above with default arguments.
std::vector<CheckReport> run_check_suite(const SliceProfile& sp);

struct BoundednessRow {
  double center = 0.0;
  double shell_inner = 0.0;
  double shell_outer = 0.0;
  double total_volume = 0.0;
  double composite_perimeter = 0.0;
  double centered_radius = 0.0;
  double centered_perimeter = 0.0;
  double excess = 0.0;
};

/// For each shell center s: B(R0) plus a thin shell centered at s holding
/// `shell_fraction` of the total g-weighted volume, against the centered ball
/// of the same total volume. excess = perimeter difference.
std::vector<BoundednessRow> boundedness_comparison(const DensityPair& pair, Dimension n, double R0,
                                                   double shell_fraction, const std::vector<double>& centers,
                                                   const QuadratureSpec& q = {});

}  // namespace hypiso
