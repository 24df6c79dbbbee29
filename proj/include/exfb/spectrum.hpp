#pragma once

#include <optional>
#include <vector>

namespace exfb {

struct ModeEigenvalue {
    int dimension = 2;
    int mode = 0;
    double Gamma = 0;
    // Closed form; planar only.
    std::optional<double> analytic_value;
    // Value of Gamma where the mode degenerates; absent for the translation mode.
    std::optional<double> analytic_root;
    double numeric_value = 0;
    double fd_step = 0;
};

// Gamma at which mode l of the ball degenerates. l = 1 is a translation and
// throws InvalidArgument.
double bifurcation_value(int N, int l);

// (1 - l)(1 - Gamma (l + 1))
double planar_mode_eigenvalue(double Gamma, int l);

// Mode-l coefficient of the linearized residual at the ball. The ball is
// perturbed to R = 1 + s * basis (cos l theta or P_l(cos phi)), the residual is
// projected back onto the same basis function and divided by s. Central
// differences at s and s/2 are combined by Richardson extrapolation. With this
// normalization the planar value is exactly (1 - l)(1 - Gamma (l + 1)).
ModeEigenvalue numeric_mode_eigenvalue(int N, double Gamma, int l, double step = 1e-3);

// Zero in Gamma of the numeric mode-l eigenvalue, found by secant iteration.
// The residual is affine in Gamma, so this converges in one or two steps.
double numeric_bifurcation_root(int N, int l, double step = 1e-3);

struct SecondOrderCoefficients {
    int mode = 0;
    double Gamma = 0;
    double a0_numeric = 0;
    double a0_predicted = 0;  // -l^2 / 4
    double a0_area = 0;   // value that keeps the area fixed, -1/4
    double a2_numeric = 0;
    // Ratio of successive differences of the second-difference quotients;
    // close to 4 when the expansion is genuinely quadratic.
    double richardson_ratio = 0;
};

// Second-order ansatz R = 1 + e cos l theta + e^2 (a0 + a2 cos 2 l theta) at
// Gamma = 1/(l + 1), planar. Throws ConvergenceError when the finite
// differences do not scale quadratically.
SecondOrderCoefficients branch_second_order(int l);

// Table over a grid of Gamma values and modes, evaluated in parallel and
// returned sorted by (Gamma, mode) with duplicates removed.
std::vector<ModeEigenvalue> spectrum_table(int N, std::vector<double> Gammas, std::vector<int> modes,
                                           double step = 1e-3);

} // namespace exfb
