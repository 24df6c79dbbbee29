#pragma once

#include <vector>

#include "exfb/geometry.hpp"
#include "exfb/harmonic.hpp"

namespace exfb {

// Data of the original exterior problem: Dirichlet level u0, curvature
// coupling gamma, volume radius R0 and, for N = 2, the log strength alpha.
struct ProblemData {
    int dimension = 3;
    double u0 = 1;
    double gamma = 0;
    double R0 = 1;
    double alpha = 0;
};

struct NormalizedProblem {
    int dimension = 3;
    double Gamma = 0;
    double target_volume = 0;

    // lambda = Gamma - (N - 2)
    double lambda() const { return Gamma - (dimension - 2); }
};

void validate(const ProblemData& data);

// Value of C for which the ball of radius R0 solves the original problem.
double compatibility_constant(const ProblemData& data);

NormalizedProblem normalize(const ProblemData& data);

struct ResidualSamples {
    std::vector<double> values;
    double l2_norm = 0;
};

// d_nu u - Gamma H_norm - (Gamma - (N - 2)) at every grid node, where
// H_norm is the normalized curvature and N = 2 uses Gamma - 1.
ResidualSamples residual(const StarDomain& domain, const ExteriorExpansion& expansion,
                         const BoundaryGrid& grid, double Gamma);

// Same, from a trace that was already computed on grid.
ResidualSamples residual_from_trace(const BoundaryGrid& grid, const std::vector<double>& trace, double Gamma);

struct ConformalScalars {
    double H_conformal = 0;
    double scalar_threshold = 0;
    int scalar_sign = 0;
};

ConformalScalars conformal_scalars(double Gamma, int N);

} // namespace exfb
