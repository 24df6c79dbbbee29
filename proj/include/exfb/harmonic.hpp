#pragma once

#include <Eigen/Core>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "exfb/geometry.hpp"

namespace exfb {

enum class SolverMethod { basis, layer };

/// Single-layer density representing a capacitary potential. Planar nodes are
/// equispaced angles; axisymmetric nodes are Gauss points in x = cos(phi),
/// ascending.
struct LayerDensity {
    StarDomain domain{2, {1.0}};
    std::vector<double> nodes;
    std::vector<double> density;  // per unit arc length / area
    // Modal form of the density: Legendre coefficients (axisymmetric) or
    // Fourier coefficients A_0..A_m, B_0..B_m (planar).
    std::vector<double> modal;
    int polar_points = 0;         // axisymmetric surface quadrature sizes
    int azimuth_points = 0;
};

/// Exterior harmonic function around a domain center.
///
/// Planar: u = c0 + lambda log r + sum_k r^-k (a_k cos k theta + b_k sin k theta),
/// with decay = (a_1, b_1, ..., a_K, b_K).
/// Axisymmetric: u = sum_l c_l r^-(l+1) P_l(cos phi), decay = (c_0, ..., c_L).
/// Layer-backed expansions keep the density for evaluation near the boundary;
/// their series is the multipole expansion, valid outside the smallest
/// enclosing sphere.
struct ExteriorExpansion {
    int dimension = 2;
    double log_coefficient = -1;
    double constant_term = 0;
    std::vector<double> decay;
    double fit_residual = 0;
    SolverMethod method = SolverMethod::basis;
    std::vector<double> center;
    std::vector<std::string> warnings;
    std::shared_ptr<const LayerDensity> layer;

    double value(const Eigen::Vector3d& p) const;
    Eigen::Vector3d gradient(const Eigen::Vector3d& p) const;
};

// Dirichlet data as a function of the graph parameter (theta or phi).
using BoundaryData = std::function<double(double)>;

constexpr double fit_accept = 1e-9;
constexpr double fit_reject = 1e-6;

// Least-squares fit of u = 1 on the boundary with the exterior basis.
// truncation is K (planar) or L (axisymmetric).
ExteriorExpansion solve_dirichlet(const StarDomain& domain, int truncation, int collocation_count);

// Same with general data; log_coefficient is pinned (planar only).
ExteriorExpansion solve_dirichlet(const StarDomain& domain, int truncation, int collocation_count,
                                  const BoundaryData& data, double log_coefficient = -1);

struct LayerOptions {
    int nodes = 0;              // 0 selects the count adaptively
    double target = 1e-11;      // adaptive refinement stops below this fit residual
    int polar_points = 0;       // axisymmetric quadrature, 0 = 3/4 of nodes
    int azimuth_points = 0;     // 0 = 2 * polar_points
    bool verify = true;         // measure fit_residual (needed for adaptive selection)
};

// Capacitary potential by a single-layer Nystrom discretization.
ExteriorExpansion solve_capacitary(const StarDomain& domain, const LayerOptions& options = {});

// Node count the adaptive layer solver settles on for this domain.
int capacitary_node_count(const StarDomain& domain, double target = 1e-11);

std::vector<double> neumann_trace(const ExteriorExpansion& expansion, const BoundaryGrid& grid);

// Exterior Dirichlet energy, axisymmetric only.
double dirichlet_energy(const ExteriorExpansion& expansion, const StarDomain& domain);

} // namespace exfb
