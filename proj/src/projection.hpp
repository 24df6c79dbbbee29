#pragma once

// Projections of boundary samples onto the planar Fourier and Legendre bases.

#include <cmath>
#include <vector>

#include "exfb/geometry.hpp"
#include "exfb/legendre.hpp"

namespace exfb::detail {

// Coefficient of cos(k theta) in samples on an equispaced planar grid.
inline double planar_coefficient(const BoundaryGrid& g, const std::vector<double>& f, int k) {
    double s = 0;
    for (int i = 0; i < g.size(); ++i) s += f[i] * std::cos(k * g.nodes[i]);
    return (k == 0 ? 1.0 : 2.0) * s / g.size();
}

// Coefficient of P_l(cos phi) in samples on an axisymmetric grid.
inline double axial_coefficient(const BoundaryGrid& g, const std::vector<double>& f, int l) {
    const GaussRule& rule = gauss_legendre(g.size());
    std::vector<double> p(l + 1);
    double s = 0;
    for (int i = 0; i < g.size(); ++i) {
        const int j = g.size() - 1 - i;  // grid is stored with phi increasing
        legendre_values(l, rule.nodes[j], p.data());
        s += rule.weights[j] * f[i] * p[l];
    }
    return (2 * l + 1) / 2.0 * s;
}

inline double mode_coefficient(const BoundaryGrid& g, const std::vector<double>& f, int mode) {
    return g.dimension == 2 ? planar_coefficient(g, f, mode) : axial_coefficient(g, f, mode);
}

} // namespace exfb::detail
