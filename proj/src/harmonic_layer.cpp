#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "exfb/diagnostics.hpp"
#include "exfb/errors.hpp"
#include "exfb/harmonic.hpp"
#include "exfb/legendre.hpp"
#include "layer.hpp"

// Capacitary potentials as single layers u = c0 + S[sigma] (planar, log kernel)
// or u = S[sigma] (axisymmetric, 1/|x-y| kernel). Since u is constant inside,
// the exterior normal derivative is the jump 2 pi sigma resp. -4 pi sigma.

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;

// Planar Fourier coefficients of the nodal values (A_0..A_m, B_0..B_m) of the
// trigonometric interpolant on n = 2m equispaced nodes.
void planar_fourier(const std::vector<double>& v, std::vector<double>& A, std::vector<double>& B) {
    const int n = static_cast<int>(v.size()), m = n / 2;
    A.assign(m + 1, 0.0);
    B.assign(m + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
        for (int j = 0; j < n; ++j) {
            const double a = 2 * pi * double(k) * j / n;
            A[k] += v[j] * std::cos(a);
            B[k] += v[j] * std::sin(a);
        }
        const double f = (k == 0 || k == m) ? 1.0 / n : 2.0 / n;
        A[k] *= f;
        B[k] *= f;
    }
    B[m] = 0;
}

Eigen::Vector2d planar_point(const StarDomain& d, double t, double* speed = nullptr) {
    const RadialSample s = d.radius(t);
    if (speed) *speed = std::hypot(s.r, s.dr);
    return {s.r * std::cos(t), s.r * std::sin(t)};
}

struct PlanarSolution {
    LayerDensity layer;
    double constant = 0;
};

PlanarSolution solve_planar(const StarDomain& d, int n) {
    if (n % 2) ++n;
    const int m = n / 2;
    std::vector<double> t(n), w(n);
    std::vector<Eigen::Vector2d> x(n);
    for (int j = 0; j < n; ++j) {
        t[j] = pi * j / m;
        x[j] = planar_point(d, t[j], &w[j]);
    }
    // Quadrature weights for the logarithmic part log(4 sin^2((t - s) / 2)).
    // The first-kind system loses about log10(n) digits, so it is assembled
    // and solved in extended precision.
    using ld = long double;
    const ld lpi = std::numbers::pi_v<ld>;
    std::vector<ld> rw(n);
    for (int k = 0; k < n; ++k) {
        ld s = 0;
        for (int q = m - 1; q >= 1; --q) s += std::cos(q * k * lpi / m) / q;
        rw[k] = -2 * lpi / m * s - lpi / (ld(m) * m) * ((k % 2) ? -1.0L : 1.0L);
    }
    const ld h = 2 * lpi / n;
    Eigen::Matrix<ld, Eigen::Dynamic, Eigen::Dynamic> A(n + 1, n + 1);
    Eigen::Matrix<ld, Eigen::Dynamic, 1> b = Eigen::Matrix<ld, Eigen::Dynamic, 1>::Ones(n + 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            ld smooth;
            if (i == j) {
                smooth = std::log(ld(w[i]));
            } else {
                const ld s2 = std::sin(0.5L * (ld(t[i]) - ld(t[j])));
                const ld dx = ld(x[i].x()) - ld(x[j].x()), dy = ld(x[i].y()) - ld(x[j].y());
                smooth = 0.5L * std::log(dx * dx + dy * dy) - 0.5L * std::log(4 * s2 * s2);
            }
            A(i, j) = 0.5L * rw[std::abs(i - j)] + h * smooth;
        }
        A(i, n) = 1;
        A(n, i) = h;
    }
    A(n, n) = 0;
    b[n] = -1;
    const Eigen::Matrix<ld, Eigen::Dynamic, 1> sol = A.partialPivLu().solve(b);

    PlanarSolution out;
    out.layer.domain = d;
    out.layer.nodes = t;
    out.layer.density.resize(n);
    for (int j = 0; j < n; ++j) out.layer.density[j] = static_cast<double>(sol[j] / w[j]);
    std::vector<double> fa, fb;
    planar_fourier(out.layer.density, fa, fb);
    out.layer.modal = fa;
    out.layer.modal.insert(out.layer.modal.end(), fb.begin(), fb.end());
    out.constant = static_cast<double>(sol[n]);
    return out;
}

// Rotated-pole quadrature over the unit sphere of directions around the
// direction with z component x. Calls f(z, weight, dir) for each point, where
// z is the z component of the direction, weight the solid-angle weight folded
// over the azimuthal reflection, dir the direction itself.
template <class F>
void rotated_sphere(double x, const GaussRule& polar, int azimuth, F&& f) {
    const double s = std::sqrt(std::max(0.0, 1 - x * x));
    const Eigen::Vector3d d(s, 0, x), e1(x, 0, -s);
    const int half = azimuth / 2;
    const double hw = 2 * pi / azimuth;
    thread_local std::vector<double> cs, sn;
    cs.resize(half + 1);
    sn.resize(half + 1);
    for (int b = 0; b <= half; ++b) {
        cs[b] = std::cos(2 * pi * b / azimuth);
        sn[b] = std::sin(2 * pi * b / azimuth);
    }
    for (std::size_t a = 0; a < polar.nodes.size(); ++a) {
        const double th = polar.nodes[a];
        const double ct = std::cos(th), st = std::sin(th);
        for (int b = 0; b <= half; ++b) {
            const double wb = (b == 0 || b == half) ? hw : 2 * hw;
            const Eigen::Vector3d dir(ct * d.x() + st * cs[b] * e1.x(), st * sn[b], ct * d.z() + st * cs[b] * e1.z());
            f(dir.z(), polar.weights[a] * wb * st, dir, th);
        }
    }
}

// Legendre coefficients of the polynomial interpolating values on the Gauss nodes.
std::vector<double> legendre_modal(const std::vector<double>& values) {
    const int M = static_cast<int>(values.size());
    const GaussRule& rule = gauss_legendre(M);
    std::vector<double> c(M, 0.0), p(M);
    for (int j = 0; j < M; ++j) {
        legendre_values(M - 1, rule.nodes[j], p.data());
        for (int l = 0; l < M; ++l) c[l] += (2 * l + 1) / 2.0 * rule.weights[j] * values[j] * p[l];
    }
    return c;
}

double surface_jacobian(const StarDomain& d, double z, double* radius) {
    const RadialSample r = d.radius_in_cos(z);
    *radius = r.r;
    return r.r * std::hypot(r.r, std::sqrt(std::max(0.0, 1 - z * z)) * r.dr);
}

GaussRule polar_rule(int n) { return gauss_legendre(n, 0.0, pi); }

struct AxialSolution {
    LayerDensity layer;
};

AxialSolution solve_axial(const StarDomain& d, int M, int nt, int np) {
    const GaussRule& rule = gauss_legendre(M);
    const GaussRule polar = polar_rule(nt);
    // Rows are accumulated against Legendre polynomials, then mapped to nodal
    // unknowns with the interpolation transform T.
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(M, M);
    std::vector<double> p(M);
    for (int i = 0; i < M; ++i) {
        const double ri = d.radius_in_cos(rule.nodes[i]).r;
        rotated_sphere(rule.nodes[i], polar, np, [&](double z, double wq, const Eigen::Vector3d&, double th) {
            double rz;
            const double J = surface_jacobian(d, z, &rz);
            const double k = wq * J / std::sqrt(ri * ri + rz * rz - 2 * ri * rz * std::cos(th));
            legendre_values(M - 1, z, p.data());
            for (int l = 0; l < M; ++l) B(i, l) += k * p[l];
        });
    }
    Eigen::MatrixXd T(M, M);
    for (int j = 0; j < M; ++j) {
        legendre_values(M - 1, rule.nodes[j], p.data());
        for (int l = 0; l < M; ++l) T(l, j) = (2 * l + 1) / 2.0 * rule.weights[j] * p[l];
    }
    const Eigen::MatrixXd A = B * T;
    const Eigen::VectorXd sigma = A.partialPivLu().solve(Eigen::VectorXd::Ones(M));
    AxialSolution out;
    out.layer.domain = d;
    out.layer.nodes = rule.nodes;
    out.layer.density.assign(sigma.data(), sigma.data() + M);
    out.layer.modal = legendre_modal(out.layer.density);
    out.layer.polar_points = nt;
    out.layer.azimuth_points = np;
    return out;
}

ExteriorExpansion finish(LayerDensity layer, double constant, double fit) {
    ExteriorExpansion e;
    e.dimension = layer.domain.dimension();
    e.method = SolverMethod::layer;
    e.center = layer.domain.center();
    e.fit_residual = fit;
    if (e.dimension == 2) {
        e.log_coefficient = -1;
        e.constant_term = constant;
        e.decay = detail::planar_multipoles(layer, static_cast<int>(layer.nodes.size()) / 2);
    } else {
        e.log_coefficient = 0;
        e.decay = detail::axial_multipoles(layer, static_cast<int>(layer.nodes.size()));
    }
    e.layer = std::make_shared<const LayerDensity>(std::move(layer));
    return e;
}

ExteriorExpansion solve_fixed(const StarDomain& d, const LayerOptions& opt, int nodes, bool verify) {
    const double unmeasured = std::numeric_limits<double>::quiet_NaN();
    if (d.dimension() == 2) {
        PlanarSolution s = solve_planar(d, nodes);
        double fit = unmeasured;
        if (verify) {
            const int n = static_cast<int>(s.layer.nodes.size());
            std::vector<double> mid(n);
            for (int j = 0; j < n; ++j) mid[j] = 2 * pi * (j + 0.5) / n;
            fit = 0;
            for (double v : detail::planar_boundary_values(s.layer, s.constant, mid))
                fit = std::max(fit, std::abs(v - 1));
        }
        return finish(std::move(s.layer), s.constant, fit);
    }
    const int nt = opt.polar_points > 0 ? opt.polar_points : std::max(8, (3 * nodes + 3) / 4);
    const int np = opt.azimuth_points > 0 ? opt.azimuth_points : 2 * nt;
    AxialSolution s = solve_axial(d, nodes, nt, np + np % 2);
    double fit = unmeasured;
    if (verify) {
        // Offset points equispaced in the polar angle reach closer to the poles
        // than any Gauss node.
        fit = 0;
        for (int j = 0; j < nodes; ++j) {
            const double x = std::cos(pi * (j + 0.5) / nodes);
            fit = std::max(fit, std::abs(detail::axial_boundary_value(s.layer, x) - 1));
        }
    }
    return finish(std::move(s.layer), 0.0, fit);
}

const std::vector<int>& ladder(int N) {
    static const std::vector<int> planar{64, 96, 128, 192, 256, 384, 512, 768, 1024};
    static const std::vector<int> axial{24, 32, 48, 64, 80, 96, 128};
    return N == 2 ? planar : axial;
}

} // namespace

namespace detail {

ExteriorExpansion solve_capacitary_unchecked(const StarDomain& d, const LayerOptions& opt) {
    ExteriorExpansion e;
    if (opt.nodes > 0) {
        if (opt.nodes < 8) throw InvalidArgument("solve_capacitary: at least 8 nodes");
        e = solve_fixed(d, opt, opt.nodes, opt.verify);
    } else {
        bool have = false;
        int worse = 0;
        for (int n : ladder(d.dimension())) {
            ExteriorExpansion trial = solve_fixed(d, opt, n, true);
            if (!have || trial.fit_residual < e.fit_residual) {
                e = std::move(trial);
                have = true;
                worse = 0;
            } else if (++worse >= 2) {
                break;
            }
            if (e.fit_residual <= opt.target) break;
        }
    }
    return e;
}

} // namespace detail

ExteriorExpansion solve_capacitary(const StarDomain& d, const LayerOptions& opt) {
    ExteriorExpansion e = detail::solve_capacitary_unchecked(d, opt);
    if (std::isnan(e.fit_residual)) return e;
    if (e.fit_residual > fit_reject) {
        std::ostringstream msg;
        msg << "solve_capacitary: fit residual " << e.fit_residual << " above " << fit_reject;
        throw ConvergenceError(msg.str());
    }
    if (e.fit_residual > fit_accept) {
        std::ostringstream msg;
        msg << "fit residual " << e.fit_residual << " above the acceptance level " << fit_accept;
        e.warnings.push_back(msg.str());
        warn(msg.str());
    }
    return e;
}

int capacitary_node_count(const StarDomain& d, double target) {
    LayerOptions opt;
    opt.target = target;
    return static_cast<int>(solve_capacitary(d, opt).layer->nodes.size());
}

namespace detail {

double density_at(const LayerDensity& layer, double p) {
    if (layer.domain.dimension() == 3) return legendre_sum(layer.modal, p);
    const std::size_t m1 = layer.modal.size() / 2;
    double v = layer.modal[0];
    for (std::size_t k = 1; k < m1; ++k)
        v += layer.modal[k] * std::cos(k * p) + layer.modal[m1 + k] * std::sin(k * p);
    return v;
}

std::vector<double> planar_boundary_values(const LayerDensity& layer, double constant,
                                           const std::vector<double>& params) {
    const StarDomain& d = layer.domain;
    const int n = static_cast<int>(layer.nodes.size()), m = n / 2;
    std::vector<double> psi(n), w(n);
    std::vector<Eigen::Vector2d> x(n);
    for (int j = 0; j < n; ++j) {
        x[j] = planar_point(d, layer.nodes[j], &w[j]);
        psi[j] = layer.density[j] * w[j];
    }
    std::vector<double> A, B;
    planar_fourier(psi, A, B);
    const double h = 2 * pi / n;
    std::vector<double> out;
    out.reserve(params.size());
    for (double s : params) {
        double u = constant;
        // Exact integral of the logarithmic part against the interpolant of psi.
        for (int k = 1; k <= m; ++k) u -= pi * (A[k] * std::cos(k * s) + B[k] * std::sin(k * s)) / k;
        const Eigen::Vector2d xs = planar_point(d, s);
        for (int j = 0; j < n; ++j) {
            const double s2 = std::sin(0.5 * (s - layer.nodes[j]));
            u += h * psi[j] * (std::log((xs - x[j]).norm()) - 0.5 * std::log(4 * s2 * s2));
        }
        out.push_back(u);
    }
    return out;
}

void planar_eval(const LayerDensity& layer, const Eigen::Vector3d& q, double* u, Eigen::Vector3d* grad) {
    // Trapezoid rule on an eightfold refined copy of the density.
    const int n = static_cast<int>(layer.nodes.size()), nu = 8 * n;
    double su = 0;
    Eigen::Vector2d sg = Eigen::Vector2d::Zero();
    const Eigen::Vector2d p(q.x(), q.y());
    for (int j = 0; j < nu; ++j) {
        const double t = 2 * pi * j / nu;
        double w;
        const Eigen::Vector2d y = planar_point(layer.domain, t, &w);
        const double c = density_at(layer, t) * w * 2 * pi / nu;
        const Eigen::Vector2d r = p - y;
        su += c * std::log(r.norm());
        sg += c * r / r.squaredNorm();
    }
    if (u) *u = su;
    if (grad) *grad = Eigen::Vector3d(sg.x(), sg.y(), 0);
}

double axial_boundary_value(const LayerDensity& layer, double x) {
    const StarDomain& d = layer.domain;
    const GaussRule polar = polar_rule(layer.polar_points);
    const double ri = d.radius_in_cos(x).r;
    double u = 0;
    rotated_sphere(x, polar, layer.azimuth_points, [&](double z, double wq, const Eigen::Vector3d&, double th) {
        double rz;
        const double J = surface_jacobian(d, z, &rz);
        const double dist2 = ri * ri + rz * rz - 2 * ri * rz * std::cos(th);
        u += wq * J * legendre_sum(layer.modal, z) / std::sqrt(dist2);
    });
    return u;
}

void axial_eval(const LayerDensity& layer, const Eigen::Vector3d& q0, double* u, Eigen::Vector3d* grad) {
    const StarDomain& d = layer.domain;
    // Rotate the target into the meridian half plane y = 0, x >= 0.
    const double rho = std::hypot(q0.x(), q0.y());
    const double cpsi = rho > 0 ? q0.x() / rho : 1, spsi = rho > 0 ? q0.y() / rho : 0;
    const Eigen::Vector3d q(rho, 0, q0.z());
    const double r = q.norm();
    const double xq = q.z() / r;
    const double gap = r - d.radius_in_cos(xq).r;
    if (!(gap > 0)) throw InvalidArgument("layer evaluation point is not exterior to the domain");

    // Geometrically graded panels in the polar angle around the target ray.
    std::vector<double> edges{0.0};
    double h = std::clamp(gap / r, 1e-12, pi / 8);
    while (edges.back() + h < pi) {
        edges.push_back(edges.back() + h);
        h *= 2;
    }
    edges.push_back(pi);
    const int azimuth_far = std::max(32, layer.azimuth_points);
    double su = 0;
    Eigen::Vector3d sg = Eigen::Vector3d::Zero();
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const GaussRule panel = gauss_legendre(16, edges[k], edges[k + 1]);
        // Close to the target ray the integrand barely varies in azimuth.
        const int azimuth = edges[k + 1] <= 0.25 ? 32 : azimuth_far;
        rotated_sphere(xq, panel, azimuth, [&](double z, double wq, const Eigen::Vector3d& dir, double) {
            double rz;
            const double J = surface_jacobian(d, z, &rz);
            const double c = wq * J * legendre_sum(layer.modal, z);
            Eigen::Vector3d diff = q - rz * dir;
            diff.y() = 0;  // cancels between the folded azimuths
            const double dist = std::sqrt(r * r + rz * rz - 2 * r * rz * dir.dot(q / r));
            su += c / dist;
            sg -= c * diff / (dist * dist * dist);
        });
    }
    if (u) *u = su;
    if (grad) *grad = Eigen::Vector3d(cpsi * sg.x(), spsi * sg.x(), sg.z());
}

std::vector<double> axial_multipoles(const LayerDensity& layer, int L) {
    const StarDomain& d = layer.domain;
    const int n = std::max(4 * static_cast<int>(layer.nodes.size()), L + 64);
    const GaussRule& rule = gauss_legendre(n);
    std::vector<double> c(L + 1, 0.0), p(L + 1);
    for (int j = 0; j < n; ++j) {
        const double x = rule.nodes[j];
        const RadialSample r = d.radius_in_cos(x);
        const double J = r.r * std::hypot(r.r, std::sqrt(1 - x * x) * r.dr);
        const double f = 2 * pi * rule.weights[j] * J * legendre_sum(layer.modal, x);
        legendre_values(L, x, p.data());
        double rl = 1;
        for (int l = 0; l <= L; ++l) {
            c[l] += f * rl * p[l];
            rl *= r.r;
        }
    }
    return c;
}

std::vector<double> planar_multipoles(const LayerDensity& layer, int K) {
    const StarDomain& d = layer.domain;
    const int n = static_cast<int>(layer.nodes.size());
    std::vector<double> c(2 * K, 0.0);
    for (int j = 0; j < n; ++j) {
        const double t = layer.nodes[j];
        double w;
        const double r = d.radius(t).r;
        planar_point(d, t, &w);
        const double f = layer.density[j] * w * 2 * pi / n;
        double rk = 1;
        for (int k = 1; k <= K; ++k) {
            rk *= r;
            c[2 * k - 2] -= f * rk * std::cos(k * t) / k;
            c[2 * k - 1] -= f * rk * std::sin(k * t) / k;
        }
    }
    return c;
}

} // namespace detail

} // namespace exfb
