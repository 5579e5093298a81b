#include "hypiso/variation.hpp"

#include <algorithm>
#include <cmath>

#include "hypiso/errors.hpp"

namespace hypiso {

MeanCurvature mean_curvature_centered(const DensityPair& pair, Dimension n, double R) {
  if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("mean curvature needs a finite radius >= 0");
  if (R == 0.0) return MeanCurvature::positive_infinity();
  const auto& f = pair.perimeter();
  const auto& g = pair.volume();
  const double ratio = std::exp(f.log_value(R) - g.log_value(R));
  return MeanCurvature::finite(ratio * ((n.value() - 1) / std::tanh(R) + f.dlog(R)));
}

std::vector<VariationReport> variation_consistency(const DensityPair& pair, Dimension n,
                                                   const std::vector<double>& R_grid, const QuadratureSpec& q) {
  std::vector<VariationReport> out;
  out.reserve(R_grid.size());
  for (double R : R_grid) {
    if (!(R > 0.0)) throw DomainError("variation_consistency: radii must be > 0");
    const double h = 1e-4 * R;
    const double dP = centered_sphere_perimeter(pair, n, R + h) - centered_sphere_perimeter(pair, n, R - h);
    const double dV = shell_volume(pair.volume(), n, R - h, R + h, q);
    VariationReport rep;
    rep.R = R;
    rep.H_analytic = mean_curvature_centered(pair, n, R).value;
    rep.H_fd = dP / dV;
    rep.rel_gap = std::fabs(rep.H_analytic - rep.H_fd) / std::max(std::fabs(rep.H_analytic), 1e-300);
    out.push_back(rep);
  }
  return out;
}

void attach_mean_curvature(std::vector<ProfilePoint>& points, const DensityPair& pair, Dimension n) {
  for (auto& p : points) p.H = mean_curvature_centered(pair, n, p.R);
}

}  // namespace hypiso
