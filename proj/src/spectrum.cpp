#include "exfb/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exfb/errors.hpp"
#include "exfb/geometry.hpp"
#include "exfb/harmonic.hpp"
#include "exfb/overdet.hpp"
#include "exfb/parallel.hpp"
#include "projection.hpp"

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;

int planar_nodes(int highest_mode) { return std::max(128, 8 * highest_mode + 32); }
int axial_nodes(int highest_mode) { return std::max(40, 4 * highest_mode + 16); }

// Unit ball plus the listed planar cosine modes (mode, amplitude).
StarDomain planar_perturbation(const std::vector<std::pair<int, double>>& modes) {
    int top = 0;
    for (auto [k, a] : modes) top = std::max(top, k);
    std::vector<double> c(2 * top + 1, 0.0);
    c[0] = 1;
    for (auto [k, a] : modes) c[k == 0 ? 0 : 2 * k - 1] += a;
    return StarDomain(2, c);
}

StarDomain axial_perturbation(int l, double s) {
    std::vector<double> c(l + 1, 0.0);
    c[0] = 1;
    c[l] += s;
    return StarDomain(3, c);
}

// Residual samples on a grid whose nodes coincide with the layer nodes.
std::pair<BoundaryGrid, std::vector<double>> residual_on(const StarDomain& d, int nodes, double Gamma) {
    LayerOptions opt;
    opt.nodes = nodes;
    const ExteriorExpansion e = solve_capacitary(d, opt);
    BoundaryGrid g = boundary_grid(d, nodes);
    std::vector<double> r = residual(d, e, g, Gamma).values;
    return {std::move(g), std::move(r)};
}

double projected_residual(int N, double Gamma, int l, double s) {
    if (N == 2) {
        auto [g, r] = residual_on(planar_perturbation({{l, s}}), planar_nodes(l), Gamma);
        return detail::planar_coefficient(g, r, l);
    }
    auto [g, r] = residual_on(axial_perturbation(l, s), axial_nodes(l), Gamma);
    return detail::axial_coefficient(g, r, l);
}

double central_difference(int N, double Gamma, int l, double s) {
    return (projected_residual(N, Gamma, l, s) - projected_residual(N, Gamma, l, -s)) / (2 * s);
}

void check_dimension(int N) {
    if (N != 2 && N != 3) throw UnsupportedDimension("numeric spectrum: N must be 2 or 3");
}

} // namespace

double bifurcation_value(int N, int l) {
    if (N < 2) throw InvalidArgument("bifurcation_value: N must be at least 2");
    if (l < 0) throw InvalidArgument("bifurcation_value: mode must be non-negative");
    if (l == 1) throw InvalidArgument("bifurcation_value: mode 1 is a translation, not a bifurcation");
    if (N == 2) return 1.0 / (l + 1);
    if (l == 0) return N - 2;
    if (N == 3) return 2.0 / (l + 2);
    return double(N - 1) * (N - 2) / (l + N - 1);
}

double planar_mode_eigenvalue(double Gamma, int l) {
    if (l < 0) throw InvalidArgument("planar_mode_eigenvalue: mode must be non-negative");
    return (1.0 - l) * (1.0 - Gamma * (l + 1));
}

ModeEigenvalue numeric_mode_eigenvalue(int N, double Gamma, int l, double step) {
    check_dimension(N);
    if (l < 0) throw InvalidArgument("numeric_mode_eigenvalue: mode must be non-negative");
    if (!(step >= 1e-6 && step <= 1e-3)) throw InvalidArgument("numeric_mode_eigenvalue: step outside [1e-6, 1e-3]");
    ModeEigenvalue m;
    m.dimension = N;
    m.mode = l;
    m.Gamma = Gamma;
    m.fd_step = step;
    if (N == 2) m.analytic_value = planar_mode_eigenvalue(Gamma, l);
    if (l != 1) m.analytic_root = bifurcation_value(N, l);
    const double d1 = central_difference(N, Gamma, l, step);
    const double d2 = central_difference(N, Gamma, l, step / 2);
    m.numeric_value = (4 * d2 - d1) / 3;
    return m;
}

double numeric_bifurcation_root(int N, int l, double step) {
    check_dimension(N);
    if (l == 1) throw InvalidArgument("numeric_bifurcation_root: mode 1 is a translation and never degenerates");
    double g0 = 0, g1 = 1;
    double f0 = numeric_mode_eigenvalue(N, g0, l, step).numeric_value;
    double f1 = numeric_mode_eigenvalue(N, g1, l, step).numeric_value;
    for (int it = 0; it < 8; ++it) {
        if (f1 == f0) throw ConvergenceError("numeric_bifurcation_root: eigenvalue does not depend on Gamma");
        const double g2 = g1 - f1 * (g1 - g0) / (f1 - f0);
        if (std::abs(g2 - g1) < 1e-13 * std::max(1.0, std::abs(g2))) return g2;
        g0 = g1;
        f0 = f1;
        g1 = g2;
        f1 = numeric_mode_eigenvalue(N, g1, l, step).numeric_value;
    }
    return g1;
}

SecondOrderCoefficients branch_second_order(int l) {
    if (l < 2) throw InvalidArgument("branch_second_order: mode must be at least 2");
    SecondOrderCoefficients out;
    out.mode = l;
    out.Gamma = 1.0 / (l + 1);
    out.a0_predicted = -l * l / 4.0;
    const int nodes = planar_nodes(2 * l);

    // Second-difference quotients of the constant and 2l-th residual modes.
    auto quotients = [&](double eps) {
        auto modes = [&](double e) {
            auto [g, r] = residual_on(planar_perturbation({{l, e}}), nodes, out.Gamma);
            return std::pair{detail::planar_coefficient(g, r, 0), detail::planar_coefficient(g, r, 2 * l)};
        };
        const auto [p0, p2] = modes(eps);
        const auto [m0, m2] = modes(-eps);
        // The ball itself has zero residual.
        return std::pair{(p0 + m0) / (2 * eps * eps), (p2 + m2) / (2 * eps * eps)};
    };
    const double eps[3] = {0.02, 0.01, 0.005};
    std::pair<double, double> q[3];
    for (int i = 0; i < 3; ++i) q[i] = quotients(eps[i]);

    const double d01 = q[0].first - q[1].first, d12 = q[1].first - q[2].first;
    out.richardson_ratio = d12 != 0 ? d01 / d12 : 4.0;
    const bool resolved = std::abs(d01) > 1e-9 * std::max(1.0, std::abs(q[2].first));
    if (resolved && (out.richardson_ratio < 3.5 || out.richardson_ratio > 4.5)) {
        std::ostringstream msg;
        msg << "branch_second_order: differences scale by " << out.richardson_ratio << ", expected 4";
        throw ConvergenceError(msg.str());
    }
    const double S0 = (4 * q[2].first - q[1].first) / 3;
    const double S2 = (4 * q[2].second - q[1].second) / 3;
    out.a0_numeric = -S0 / planar_mode_eigenvalue(out.Gamma, 0);
    out.a2_numeric = -S2 / planar_mode_eigenvalue(out.Gamma, 2 * l);

    // Constant correction keeping the area at pi, from the area functional itself.
    auto area_defect = [&](double e) { return (volume(planar_perturbation({{l, e}})) - pi) / (e * e); };
    const double A = (4 * area_defect(eps[2]) - area_defect(eps[1])) / 3;
    // d area / d a0 = 2 pi at the disc.
    out.a0_area = -A / (2 * pi);
    return out;
}

std::vector<ModeEigenvalue> spectrum_table(int N, std::vector<double> Gammas, std::vector<int> modes, double step) {
    std::sort(Gammas.begin(), Gammas.end());
    Gammas.erase(std::unique(Gammas.begin(), Gammas.end()), Gammas.end());
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    const int nm = static_cast<int>(modes.size());
    std::vector<ModeEigenvalue> out(Gammas.size() * modes.size());
    parallel_for(static_cast<int>(out.size()), [&](int i) {
        out[i] = numeric_mode_eigenvalue(N, Gammas[i / nm], modes[i % nm], step);
    });
    return out;
}

} // namespace exfb
