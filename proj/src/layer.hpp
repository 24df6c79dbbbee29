#pragma once

// Layer-potential kernels shared by the harmonic sources.

#include <Eigen/Core>
#include <vector>

#include "exfb/harmonic.hpp"

namespace exfb::detail {

// solve_capacitary without the acceptance gate.
ExteriorExpansion solve_capacitary_unchecked(const StarDomain& domain, const LayerOptions& options);

// Density at a planar angle (trigonometric interpolation) or at x = cos(phi)
// (barycentric interpolation on the Gauss nodes).
double density_at(const LayerDensity& layer, double parameter);

// Planar single layer on the boundary, off the nodes, spectrally accurate.
std::vector<double> planar_boundary_values(const LayerDensity& layer, double constant,
                                           const std::vector<double>& thetas);

// Planar single layer and gradient at a point off the boundary (relative to the center).
void planar_eval(const LayerDensity& layer, const Eigen::Vector3d& q, double* u, Eigen::Vector3d* grad);

// Axisymmetric single layer at the boundary point in direction x = cos(phi).
double axial_boundary_value(const LayerDensity& layer, double x);

// Axisymmetric single layer and gradient at an exterior point q (relative to
// the center), with panels refined toward the nearest boundary direction.
void axial_eval(const LayerDensity& layer, const Eigen::Vector3d& q, double* u, Eigen::Vector3d* grad);

// Multipole moments c_l = int sigma r^l P_l(cos phi) dS for l = 0..L.
std::vector<double> axial_multipoles(const LayerDensity& layer, int L);

// Planar moments (a_k, b_k), k = 1..K, of the far-field series.
std::vector<double> planar_multipoles(const LayerDensity& layer, int K);

} // namespace exfb::detail
