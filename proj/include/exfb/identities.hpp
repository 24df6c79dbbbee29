#pragma once

#include <string>
#include <vector>

#include "exfb/geometry.hpp"
#include "exfb/harmonic.hpp"

namespace exfb {

struct IdentityReport {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double abs_gap = 0;
    double rel_gap = 0;
    bool inequality = false;
    bool satisfied = false;
    double tolerance = 0;  // on rel_gap for identities; relative slack for inequalities
    // Named by-products such as the AM equality defect or the two defect paths.
    std::vector<std::pair<std::string, double>> extra;

    double get(const std::string& key) const;
};

// Equality: satisfied when rel_gap <= tolerance.
IdentityReport equality_report(std::string name, double lhs, double rhs, double tolerance);
// Inequality lhs <= rhs, with slack tolerance * max(1, |rhs|).
IdentityReport inequality_report(std::string name, double lhs, double rhs, double tolerance = 1e-10);

// Default tolerances.
constexpr double tol_pohozaev = 1e-7;
constexpr double tol_energy = 1e-7;
constexpr double tol_minkowski = 1e-8;
constexpr double tol_flux = 1e-8;
constexpr double tol_defect = 1e-9;
constexpr double tol_inequality = 1e-10;

// Boundary grid on which an expansion's trace is available without interpolation.
BoundaryGrid matching_grid(const ExteriorExpansion& expansion, const StarDomain& domain);
// Grid resolving the purely geometric integrands of a domain.
BoundaryGrid geometry_grid(const StarDomain& domain);

IdentityReport energy_identity(const ExteriorExpansion& expansion, const StarDomain& domain);
IdentityReport pohozaev(const ExteriorExpansion& expansion, const StarDomain& domain);
IdentityReport am_inequality(const ExteriorExpansion& expansion, const StarDomain& domain, double p = 2);
IdentityReport defect_identity(const StarDomain& domain, double Gamma);
IdentityReport planar_flux(const ExteriorExpansion& expansion, const StarDomain& domain);
IdentityReport planar_topological(double Gamma, int euler_char, double perimeter);

// Minkowski formulas and, for N = 3, the weighted Cauchy-Schwarz bound.
std::vector<IdentityReport> minkowski_identities(const StarDomain& domain);

struct ChainStep {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;  // rhs - lhs
    bool holds = false;
};

// Every intermediate inequality of the star-shaped rigidity argument,
// evaluated without asserting anything.
struct ChainReport {
    double Gamma = 0;
    double lambda = 0;
    std::vector<ChainStep> steps;
    double factored_product = 0;
};

ChainReport rigidity_chain(const ExteriorExpansion& expansion, const StarDomain& domain, double Gamma);

// The whole suite on one domain. Gamma enters only the defect identity.
std::vector<IdentityReport> identity_suite(const ExteriorExpansion& expansion, const StarDomain& domain,
                                           double Gamma);

} // namespace exfb
