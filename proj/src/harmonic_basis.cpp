#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exfb/diagnostics.hpp"
#include "exfb/errors.hpp"
#include "exfb/harmonic.hpp"
#include "exfb/legendre.hpp"

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double condition_limit = 1e12;

struct Sample {
    double t;        // graph parameter
    double r, polar; // distance and polar coordinate around the center
};

std::vector<Sample> planar_samples(const StarDomain& d, int n, double offset) {
    std::vector<Sample> out(n);
    for (int j = 0; j < n; ++j) {
        const double t = 2 * pi * (j + offset) / n;
        out[j] = {t, d.radius(t).r, t};
    }
    return out;
}

// Row of the planar basis at (r, theta): 1, r^-k cos, r^-k sin.
void planar_row(double r, double t, int K, double* row) {
    row[0] = 1;
    double rk = 1;
    for (int k = 1; k <= K; ++k) {
        rk /= r;
        row[2 * k - 1] = rk * std::cos(k * t);
        row[2 * k] = rk * std::sin(k * t);
    }
}

void axial_row(double r, double x, int L, double* row, std::vector<double>& p) {
    legendre_values(L, x, p.data());
    double rl = 1 / r;
    for (int l = 0; l <= L; ++l) {
        row[l] = rl * p[l];
        rl /= r;
    }
}

} // namespace

ExteriorExpansion solve_dirichlet(const StarDomain& domain, int truncation, int collocation_count) {
    return solve_dirichlet(domain, truncation, collocation_count, [](double) { return 1.0; }, -1.0);
}

ExteriorExpansion solve_dirichlet(const StarDomain& domain, int truncation, int m,
                                  const BoundaryData& data, double log_coefficient) {
    const int N = domain.dimension();
    if (truncation < 4) throw InvalidArgument("solve_dirichlet: truncation must be at least 4");
    const int unknowns = N == 2 ? 2 * truncation + 1 : truncation + 1;
    if (m < 2 * unknowns)
        throw InvalidArgument("solve_dirichlet: need at least two collocation nodes per unknown");

    ExteriorExpansion e;
    e.dimension = N;
    e.method = SolverMethod::basis;
    e.center = domain.center();
    e.log_coefficient = N == 2 ? log_coefficient : 0.0;

    Eigen::MatrixXd A(m, unknowns);
    Eigen::VectorXd b(m);
    Eigen::RowVectorXd row(unknowns);
    std::vector<double> p(truncation + 1);
    if (N == 2) {
        const auto nodes = planar_samples(domain, m, 0.0);
        for (int i = 0; i < m; ++i) {
            planar_row(nodes[i].r, nodes[i].polar, truncation, row.data());
            A.row(i) = row;
            b[i] = data(nodes[i].t) - log_coefficient * std::log(nodes[i].r);
        }
    } else {
        const GaussRule& rule = gauss_legendre(m);
        for (int i = 0; i < m; ++i) {
            const double x = rule.nodes[i];
            axial_row(domain.radius_in_cos(x).r, x, truncation, row.data(), p);
            A.row(i) = row;
            b[i] = data(std::acos(x));
        }
    }

    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (int j = 0; j < unknowns; ++j) scale[j] = scale[j] > 0 ? 1 / scale[j] : 1;
    const Eigen::MatrixXd As = A * scale.asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    const Eigen::VectorXd sol = scale.asDiagonal() * qr.solve(b);

    const auto& R = qr.matrixQR();
    const double rmax = std::abs(R(0, 0)), rmin = std::abs(R(unknowns - 1, unknowns - 1));
    if (rmin == 0 || rmax / rmin > condition_limit) {
        std::ostringstream msg;
        msg << "ill-conditioned least-squares system (estimate " << (rmin == 0 ? INFINITY : rmax / rmin)
            << ")";
        e.warnings.push_back(msg.str());
        warn(msg.str());
    }

    if (N == 2) {
        e.constant_term = sol[0];
        e.decay.assign(sol.data() + 1, sol.data() + unknowns);
    } else {
        e.decay.assign(sol.data(), sol.data() + unknowns);
    }

    // Verification on twice as many points, offset by half a spacing.
    double worst = 0;
    const int mv = 2 * m;
    for (int j = 0; j < mv; ++j) {
        const double t = N == 2 ? 2 * pi * (j + 0.5) / mv : pi * (j + 0.5) / mv;
        const Eigen::Vector3d pt = [&] {
            const double r = domain.radius(t).r;
            return N == 2 ? Eigen::Vector3d(r * std::cos(t), r * std::sin(t), 0)
                          : Eigen::Vector3d(r * std::sin(t), 0, r * std::cos(t));
        }();
        worst = std::max(worst, std::abs(e.value(pt + domain.center3()) - data(t)));
    }
    e.fit_residual = worst;
    if (worst > fit_reject) {
        std::ostringstream msg;
        msg << "solve_dirichlet: fit residual " << worst << " above " << fit_reject;
        throw ConvergenceError(msg.str());
    }
    if (worst > fit_accept) {
        std::ostringstream msg;
        msg << "fit residual " << worst << " above the acceptance level " << fit_accept;
        e.warnings.push_back(msg.str());
        warn(msg.str());
    }
    return e;
}

} // namespace exfb
