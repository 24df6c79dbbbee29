#include "exfb/harmonic.hpp"

#include <cmath>
#include <numbers>

#include "exfb/errors.hpp"
#include "exfb/legendre.hpp"
#include "layer.hpp"

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::Vector3d relative(const ExteriorExpansion& e, const Eigen::Vector3d& p) {
    Eigen::Vector3d q = p;
    for (int i = 0; i < static_cast<int>(e.center.size()); ++i) q[i] -= e.center[i];
    return q;
}

// Value and gradient of the basis series at q (relative to the center).
void series_eval(const ExteriorExpansion& e, const Eigen::Vector3d& q, double* u, Eigen::Vector3d* g) {
    if (e.dimension == 2) {
        const double r = std::hypot(q.x(), q.y()), t = std::atan2(q.y(), q.x());
        const int K = static_cast<int>(e.decay.size()) / 2;
        double v = e.constant_term + e.log_coefficient * std::log(r);
        double ur = e.log_coefficient / r, ut = 0;
        double rk = 1;
        for (int k = 1; k <= K; ++k) {
            rk /= r;
            const double a = e.decay[2 * k - 2], b = e.decay[2 * k - 1];
            const double c = std::cos(k * t), s = std::sin(k * t);
            v += rk * (a * c + b * s);
            ur -= k * rk / r * (a * c + b * s);
            ut += k * rk / r * (b * c - a * s);
        }
        if (u) *u = v;
        if (g) {
            const double c = std::cos(t), s = std::sin(t);
            *g = Eigen::Vector3d(ur * c - ut * s, ur * s + ut * c, 0);
        }
        return;
    }
    const double rho = std::hypot(q.x(), q.y()), r = q.norm();
    const double x = q.z() / r, y = rho / r;
    const int L = static_cast<int>(e.decay.size()) - 1;
    std::vector<double> p(L + 1), dp(L + 1);
    legendre_values(L, x, p.data(), dp.data());
    double v = 0, ur = 0, uphi = 0;
    double rl = 1 / r;
    for (int l = 0; l <= L; ++l) {
        v += e.decay[l] * rl * p[l];
        ur -= (l + 1) * e.decay[l] * rl / r * p[l];
        uphi -= e.decay[l] * rl / r * y * dp[l];  // (1/r) du/dphi
        rl /= r;
    }
    if (u) *u = v;
    if (g) {
        // Meridian components, then rotated to the azimuth of q.
        const double grho = ur * y + uphi * x, gz = ur * x - uphi * y;
        const double cpsi = rho > 0 ? q.x() / rho : 1, spsi = rho > 0 ? q.y() / rho : 0;
        *g = Eigen::Vector3d(grho * cpsi, grho * spsi, gz);
    }
}

void evaluate(const ExteriorExpansion& e, const Eigen::Vector3d& p, double* u, Eigen::Vector3d* g) {
    const Eigen::Vector3d q = relative(e, p);
    if (e.method == SolverMethod::basis || !e.layer) {
        series_eval(e, q, u, g);
    } else if (e.dimension == 2) {
        detail::planar_eval(*e.layer, q, u, g);
        if (u) *u += e.constant_term;
    } else {
        detail::axial_eval(*e.layer, q, u, g);
    }
}

} // namespace

double ExteriorExpansion::value(const Eigen::Vector3d& p) const {
    double u;
    evaluate(*this, p, &u, nullptr);
    return u;
}

Eigen::Vector3d ExteriorExpansion::gradient(const Eigen::Vector3d& p) const {
    Eigen::Vector3d g;
    evaluate(*this, p, nullptr, &g);
    return g;
}

std::vector<double> neumann_trace(const ExteriorExpansion& e, const BoundaryGrid& grid) {
    if (grid.dimension != e.dimension) throw InvalidArgument("neumann_trace: dimension mismatch");
    if (grid.domain.center() != e.center) throw InvalidArgument("neumann_trace: expansion centered elsewhere");
    const int n = grid.size();
    std::vector<double> out(n);
    if (e.method == SolverMethod::layer && e.layer) {
        const LayerDensity& layer = *e.layer;
        if (!(layer.domain == grid.domain))
            throw InvalidArgument("neumann_trace: expansion and grid belong to different domains");
        const int m = static_cast<int>(layer.nodes.size());
        const double jump = e.dimension == 2 ? 2 * pi : -4 * pi;
        for (int i = 0; i < n; ++i) {
            double sigma;
            if (m == n) {
                sigma = e.dimension == 2 ? layer.density[i] : layer.density[m - 1 - i];
            } else {
                const double p = e.dimension == 2 ? grid.nodes[i] : std::cos(grid.nodes[i]);
                sigma = detail::density_at(layer, p);
            }
            out[i] = jump * sigma;
        }
        return out;
    }
    for (int i = 0; i < n; ++i) {
        Eigen::Vector3d g;
        series_eval(e, relative(e, grid.positions[i]), nullptr, &g);
        out[i] = g.dot(grid.normals[i]);
    }
    return out;
}

double dirichlet_energy(const ExteriorExpansion& e, const StarDomain& domain) {
    if (e.dimension != 3 || domain.dimension() != 3)
        throw UnsupportedDimension("dirichlet_energy: the planar energy diverges; N = 3 only");
    const double rout = 1.05 * domain.max_radius();

    // Tail beyond rout in closed form from the multipole series.
    std::vector<double> c = e.decay;
    if (e.method == SolverMethod::layer && e.layer) {
        const int L = static_cast<int>(std::ceil(17 * std::log(10.0) / (2 * std::log(1.05)))) + 8;
        c = detail::axial_multipoles(*e.layer, L);
    }
    double tail = 0;
    for (std::size_t l = 0; l < c.size(); ++l) {
        const double a = c[l] * std::pow(rout, -double(l));
        tail += (l + 1.0) / (2.0 * l + 1.0) * a * a / rout;
    }
    tail *= 4 * pi;

    // Shell between the boundary and the sphere of radius rout.
    const int nodes = e.layer ? static_cast<int>(e.layer->nodes.size()) : static_cast<int>(c.size());
    const GaussRule& ax = gauss_legendre(std::max(32, nodes));
    const GaussRule& rad = gauss_legendre(12);
    const Eigen::Vector3d c3 = domain.center3();
    double shell = 0;
    for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
        const double x = ax.nodes[i], y = std::sqrt(1 - x * x);
        const double r0 = domain.radius_in_cos(x).r, len = rout - r0;
        double line = 0;
        for (std::size_t k = 0; k < rad.nodes.size(); ++k) {
            const double r = r0 + 0.5 * (rad.nodes[k] + 1) * len;
            Eigen::Vector3d g;
            evaluate(e, c3 + r * Eigen::Vector3d(y, 0, x), nullptr, &g);
            line += rad.weights[k] * g.squaredNorm() * r * r;
        }
        shell += ax.weights[i] * 0.5 * len * line;
    }
    return 2 * pi * shell + tail;
}

} // namespace exfb
