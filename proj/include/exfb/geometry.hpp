#pragma once

#include <Eigen/Core>
#include <vector>

namespace exfb {

// Radius and its first two derivatives in the graph parameter
// (theta for planar domains, the polar angle phi for axisymmetric ones).
struct RadialSample {
    double r = 0, dr = 0, ddr = 0;
};

/// Star-shaped domain given as a positive radial graph over its center.
///
/// Planar coefficients are (a0, a1, b1, ..., aK, bK) for
/// R(theta) = a0 + sum_k a_k cos(k theta) + b_k sin(k theta).
/// Axisymmetric coefficients are (c0, ..., cL) for R(phi) = sum_l c_l P_l(cos phi),
/// the symmetry axis being the z axis through the center.
class StarDomain {
public:
    StarDomain(int dimension, std::vector<double> coefficients, std::vector<double> center = {});

    static StarDomain ball(int dimension, double radius = 1.0, std::vector<double> center = {});

    int dimension() const { return dimension_; }
    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::vector<double>& center() const { return center_; }

    // K for planar domains, L for axisymmetric ones.
    int mode_count() const;

    RadialSample radius(double t) const;
    // Axisymmetric only: R and derivatives as a function of x = cos(phi).
    RadialSample radius_in_cos(double x) const;

    // a0 or c0: the mean of R over the parameter domain.
    double mean_radius() const { return coefficients_.front(); }
    double max_radius() const;
    double min_radius() const;

    Eigen::Vector3d center3() const;

    // Same center, coefficients multiplied by s.
    StarDomain scaled(double s) const;

    bool operator==(const StarDomain& other) const = default;

private:
    int dimension_;
    std::vector<double> coefficients_;
    std::vector<double> center_;
};

/// Quadrature nodes on the boundary together with the local geometry.
/// Axisymmetric grids store the meridian at azimuth 0; weights already
/// carry the azimuthal factor 2 pi.
struct BoundaryGrid {
    int dimension = 0;
    std::vector<double> nodes;
    std::vector<Eigen::Vector3d> positions;
    std::vector<Eigen::Vector3d> normals;
    std::vector<double> weights;
    std::vector<double> curvature_normalized;  // sphere of radius R: -1/R
    std::vector<double> curvature_mean;        // -(N-1) * curvature_normalized
    std::vector<double> tracefree_sq;
    // x . nu with x measured from the coordinate origin. Axisymmetric grids
    // store its azimuthal average.
    std::vector<double> support;
    std::vector<double> radius;
    std::vector<double> speed;  // sqrt(R^2 + R'^2)
    StarDomain domain{2, {1.0}};

    int size() const { return static_cast<int>(nodes.size()); }
};

BoundaryGrid boundary_grid(const StarDomain& domain, int node_count);

double volume(const StarDomain& domain);
double surface_measure(const StarDomain& domain);

// Volume of the unit ball: pi for N = 2, 4 pi / 3 for N = 3, general N allowed.
double unit_ball_volume(int N);
double unit_sphere_area(int N);

struct MinkowskiMoments {
    double m0 = 0, m1 = 0, m2 = 0, mA = 0;
};

MinkowskiMoments minkowski_moments(const BoundaryGrid& grid);

// Integral of f over the grid.
double integrate(const BoundaryGrid& grid, const std::vector<double>& f);

StarDomain translate(const StarDomain& domain, const std::vector<double>& shift);
StarDomain recenter(const StarDomain& domain);

// Drops trailing modes whose coefficients are all below tol in magnitude.
StarDomain trimmed(const StarDomain& domain, double tol = 1e-15);

} // namespace exfb
