#pragma once

// Competitor regions for the isoperimetric comparison and their slicing data.
//
// Every candidate is rotationally symmetric about an axis through the origin.
// For a region E and a sphere S(r) about the origin:
//   |E_r|     area of the slice E n S(r)
//   P(r)      area of the part of the boundary of E outside B(r)
//   V(r)      volume of the part of E outside B(r)
//   p(r)      (n-2)-measure of the boundary of the slice inside S(r)
// and a density subscript means the same quantity weighted by that density.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hypiso/density.hpp"
#include "hypiso/geometry.hpp"
#include "hypiso/quadrature.hpp"

namespace hypiso {

namespace shape {
struct CenteredBall {
  double radius;
};
/// Geodesic ball of radius `radius` whose center is at distance
/// `center_distance` from the origin.
struct OffsetBall {
  double center_distance;
  double radius;
};
struct Annulus {
  double inner;
  double outer;
};
/// B(ball_radius) together with the shell shell_inner <= |x| <= shell_outer.
struct BallPlusShell {
  double ball_radius;
  double shell_inner;
  double shell_outer;
};
}  // namespace shape

using Shape = std::variant<shape::CenteredBall, shape::OffsetBall, shape::Annulus, shape::BallPlusShell>;

class CandidateRegion {
 public:
  static CandidateRegion centered(double R);
  static CandidateRegion offset(double D, double rho);
  static CandidateRegion annulus(double R1, double R2);
  static CandidateRegion ball_shell(double R0, double R1, double R2);

  const Shape& shape() const noexcept { return shape_; }

  /// Largest distance from the origin reached by the region.
  double outer_radius() const;
  /// Radii where the slicing functions fail to be differentiable: boundary
  /// spheres of centered shapes, tangency radii |D - rho| and D + rho of an
  /// offset ball.
  std::vector<double> singular_radii() const;
  /// The mini-language line for this candidate.
  std::string describe() const;

 private:
  explicit CandidateRegion(Shape s) : shape_(s) {}
  Shape shape_;
};

/// "centered <R>" | "offset <D> <rho>" | "annulus <R1> <R2>" | "ball_shell <R0> <R1> <R2>".
/// Throws ParseError.
CandidateRegion parse_candidate(std::string_view spec);

double candidate_volume(const CandidateRegion& c, const DensityPair& pair, Dimension n,
                        const QuadratureSpec& q = {});
double candidate_perimeter(const CandidateRegion& c, const DensityPair& pair, Dimension n,
                           const QuadratureSpec& q = {});

/// Sampled slicing quantities of one candidate, aligned with r.
struct SliceProfile {
  int n = 2;
  Regime regime = Regime::CoshSquared;
  std::string candidate;

  std::vector<double> r;
  std::vector<double> slice_area;         ///< |E_r|
  std::vector<double> slice_area_f;       ///< |E_r|_f
  std::vector<double> exterior_perimeter;    ///< P(r)
  std::vector<double> exterior_perimeter_f;  ///< P_f(r)
  std::vector<double> exterior_volume;    ///< V(r)
  std::vector<double> exterior_volume_g;  ///< V_g(r)
  std::vector<double> exterior_volume_f;  ///< V_f(r)
  std::vector<double> slice_perimeter;    ///< p(r)
  std::vector<double> slice_perimeter_f;  ///< p_f(r)

  // Context the validators need without recomputing geometry.
  std::vector<double> volume_density;     ///< g(r)
  std::vector<double> perimeter_density;  ///< f(r)
  std::vector<double> sphere_area;        ///< |S(r)|
  std::vector<double> singular_radii;
  double total_perimeter_f = 0.0;  ///< |dE|_f
  double outer_radius = 0.0;
  bool perimeter_density_nondecreasing = true;
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return r.size(); }
};

/// 512 geometrically spaced radii from 1e-3 to 1.2 times the outer radius.
std::vector<double> default_slice_grid(const CandidateRegion& c);

/// Slicing data on r_grid (increasing, >= 0). Offset-ball slices are exact
/// spherical caps; exterior volumes integrate the slice areas. Where the cap
/// construction degenerates (origin on the axis at r = 0, or D = 0) the slice
/// is all-or-nothing and a note is recorded.
SliceProfile slice_profile(const CandidateRegion& c, const DensityPair& pair, Dimension n,
                           const std::vector<double>& r_grid, const QuadratureSpec& q = {});

/// integral_0^alpha sin^k(t) dt, by the reduction formula.
double sine_power_integral(int k, double alpha);

/// Aperture (angle at the origin) of the cap E_r of an offset ball, in [0, pi].
double cap_aperture(double D, double rho, double r);

}  // namespace hypiso
