#pragma once

#include <vector>

#include "hypiso/density.hpp"
#include "hypiso/measures.hpp"

namespace hypiso {

/// Unaveraged generalized mean curvature of the centered sphere S(R): the
/// derivative of f-weighted perimeter with respect to g-weighted volume along
/// the centered family,
///   H(R) = [(n-1) coth(R) f(R) + f'(R)] / g(R).
/// Returns the infinite tag at R = 0; throws DomainError for R < 0.
MeanCurvature mean_curvature_centered(const DensityPair& pair, Dimension n, double R);

struct VariationReport {
  double R = 0.0;
  double H_analytic = 0.0;
  double H_fd = 0.0;
  double rel_gap = 0.0;
};

/// Compares the closed-form H with the central difference
///   [P(R+h) - P(R-h)] / [V(R+h) - V(R-h)],  h = 1e-4 R,
/// where the volume difference is the quadrature of the shell between R-h and R+h.
std::vector<VariationReport> variation_consistency(const DensityPair& pair, Dimension n,
                                                   const std::vector<double>& R_grid, const QuadratureSpec& q = {});

/// Fills ProfilePoint::H for every point.
void attach_mean_curvature(std::vector<ProfilePoint>& points, const DensityPair& pair, Dimension n);

}  // namespace hypiso
