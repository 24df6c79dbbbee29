#include "exfb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "exfb/diagnostics.hpp"
#include "exfb/errors.hpp"
#include "exfb/legendre.hpp"

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;

int dense_count(const StarDomain& d) { return std::max(1024, 32 * d.mode_count() + 1); }

// Samples of R over the whole parameter range, poles included.
template <class F>
void for_dense_samples(const StarDomain& d, F&& f) {
    const int n = dense_count(d);
    if (d.dimension() == 2) {
        for (int i = 0; i < n; ++i) f(d.radius(2 * pi * i / n));
    } else {
        for (int i = 0; i <= n; ++i) f(d.radius(pi * i / n));
    }
}

void require_pde_dimension(int N) {
    if (N != 2 && N != 3)
        throw UnsupportedDimension("radial-graph domains exist for N = 2 and N = 3 only");
}

} // namespace

StarDomain::StarDomain(int dimension, std::vector<double> coefficients, std::vector<double> center)
    : dimension_(dimension), coefficients_(std::move(coefficients)), center_(std::move(center)) {
    require_pde_dimension(dimension_);
    if (coefficients_.empty()) throw InvalidDomain("empty coefficient list");
    if (dimension_ == 2 && coefficients_.size() % 2 == 0)
        throw InvalidDomain("planar coefficients must have odd length (a0, a1, b1, ...)");
    if (center_.empty()) center_.assign(dimension_, 0.0);
    if (static_cast<int>(center_.size()) != dimension_)
        throw InvalidDomain("center has the wrong dimension");
    for (double c : coefficients_)
        if (!std::isfinite(c)) throw InvalidDomain("non-finite coefficient");

    double lo = INFINITY, dev = 0;
    const double mean = mean_radius();
    for_dense_samples(*this, [&](const RadialSample& s) {
        lo = std::min(lo, s.r);
        dev = std::max(dev, std::abs(s.r - mean));
    });
    if (!(lo > 0)) {
        std::ostringstream msg;
        msg << "radius is not positive (min sample " << lo << ")";
        throw InvalidDomain(msg.str());
    }
    if (dev > 0.5 * mean) {
        std::ostringstream msg;
        msg << "large deformation: max |R - mean| = " << dev << " exceeds half the mean radius";
        warn(msg.str());
    }
}

StarDomain StarDomain::ball(int dimension, double radius, std::vector<double> center) {
    return StarDomain(dimension, {radius}, std::move(center));
}

int StarDomain::mode_count() const {
    const int n = static_cast<int>(coefficients_.size());
    return dimension_ == 2 ? (n - 1) / 2 : n - 1;
}

RadialSample StarDomain::radius(double t) const {
    RadialSample s;
    if (dimension_ == 2) {
        s.r = coefficients_[0];
        const int K = mode_count();
        for (int k = 1; k <= K; ++k) {
            const double a = coefficients_[2 * k - 1], b = coefficients_[2 * k];
            const double c = std::cos(k * t), sn = std::sin(k * t);
            s.r += a * c + b * sn;
            s.dr += k * (b * c - a * sn);
            s.ddr -= k * k * (a * c + b * sn);
        }
        return s;
    }
    const double x = std::cos(t), y = std::sin(t);
    const SeriesValue v = legendre_series(coefficients_, x);
    s.r = v.f;
    s.dr = -y * v.df;
    s.ddr = -x * v.df + y * y * v.ddf;
    return s;
}

RadialSample StarDomain::radius_in_cos(double x) const {
    const SeriesValue v = legendre_series(coefficients_, x);
    return {v.f, v.df, v.ddf};
}

double StarDomain::max_radius() const {
    double hi = 0;
    for_dense_samples(*this, [&](const RadialSample& s) { hi = std::max(hi, s.r); });
    return hi;
}

double StarDomain::min_radius() const {
    double lo = INFINITY;
    for_dense_samples(*this, [&](const RadialSample& s) { lo = std::min(lo, s.r); });
    return lo;
}

Eigen::Vector3d StarDomain::center3() const {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (int i = 0; i < dimension_; ++i) c[i] = center_[i];
    return c;
}

StarDomain StarDomain::scaled(double s) const {
    std::vector<double> c = coefficients_;
    for (double& v : c) v *= s;
    return StarDomain(dimension_, std::move(c), center_);
}

BoundaryGrid boundary_grid(const StarDomain& domain, int n) {
    if (n < 8) throw InvalidArgument("boundary_grid: node_count must be at least 8");
    BoundaryGrid g;
    g.dimension = domain.dimension();
    g.domain = domain;
    g.nodes.resize(n);
    g.positions.resize(n);
    g.normals.resize(n);
    g.weights.resize(n);
    g.curvature_normalized.resize(n);
    g.curvature_mean.resize(n);
    g.tracefree_sq.assign(n, 0.0);
    g.support.resize(n);
    g.radius.resize(n);
    g.speed.resize(n);
    const Eigen::Vector3d c = domain.center3();

    if (g.dimension == 2) {
        for (int i = 0; i < n; ++i) {
            const double t = 2 * pi * i / n;
            const RadialSample s = domain.radius(t);
            if (!(s.r > 0)) throw InvalidDomain("non-positive radius sample");
            const double w = std::hypot(s.r, s.dr);
            const Eigen::Vector3d er(std::cos(t), std::sin(t), 0), et(-std::sin(t), std::cos(t), 0);
            const double kappa = (s.r * s.r + 2 * s.dr * s.dr - s.r * s.ddr) / (w * w * w);
            g.nodes[i] = t;
            g.positions[i] = c + s.r * er;
            g.normals[i] = (s.r * er - s.dr * et) / w;
            g.weights[i] = w * 2 * pi / n;
            g.curvature_normalized[i] = -kappa;
            g.curvature_mean[i] = kappa;
            g.support[i] = g.positions[i].dot(g.normals[i]);
            g.radius[i] = s.r;
            g.speed[i] = w;
        }
        return g;
    }

    // Gauss nodes in x = cos(phi), stored with phi increasing.
    const GaussRule& rule = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        const int j = n - 1 - i;
        const double x = rule.nodes[j], y = std::sqrt(1 - x * x);
        const RadialSample sx = domain.radius_in_cos(x);
        if (!(sx.r > 0)) throw InvalidDomain("non-positive radius sample");
        const double r = sx.r, rp = -y * sx.dr, rpp = -x * sx.dr + y * y * sx.ddr;
        const double w = std::hypot(r, rp);
        const double km = (r * r + 2 * rp * rp - r * rpp) / (w * w * w);
        const double kp = (r + x * sx.dr) / (w * r);
        const Eigen::Vector3d er(y, 0, x), ephi(x, 0, -y);
        g.nodes[i] = std::acos(x);
        g.positions[i] = c + r * er;
        g.normals[i] = (r * er - rp * ephi) / w;
        g.weights[i] = 2 * pi * r * w * rule.weights[j];
        g.curvature_mean[i] = km + kp;
        g.curvature_normalized[i] = -(km + kp) / 2;
        g.tracefree_sq[i] = 0.5 * (km - kp) * (km - kp);
        // Off-axis components of the center average out around each ring.
        g.support[i] = r * er.dot(g.normals[i]) + c.z() * g.normals[i].z();
        g.radius[i] = r;
        g.speed[i] = w;
    }
    return g;
}

double volume(const StarDomain& d) {
    // Both integrands are polynomials of known degree, so these rules are exact.
    if (d.dimension() == 2) {
        const std::vector<double>& a = d.coefficients();
        double v = a[0] * a[0];
        for (std::size_t k = 1; k < a.size(); ++k) v += 0.5 * a[k] * a[k];
        return pi * v;
    }
    const GaussRule& rule = gauss_legendre(2 * d.mode_count() + 4);
    double v = 0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double r = d.radius_in_cos(rule.nodes[j]).r;
        v += rule.weights[j] * r * r * r;
    }
    return 2 * pi / 3 * v;
}

double surface_measure(const StarDomain& d) {
    auto at = [&](int n) {
        double s = 0;
        if (d.dimension() == 2) {
            for (int i = 0; i < n; ++i) {
                const RadialSample r = d.radius(2 * pi * i / n);
                s += std::hypot(r.r, r.dr);
            }
            return s * 2 * pi / n;
        }
        const GaussRule& rule = gauss_legendre(n);
        for (int j = 0; j < n; ++j) {
            const double x = rule.nodes[j];
            const RadialSample r = d.radius_in_cos(x);
            s += rule.weights[j] * r.r * std::hypot(r.r, std::sqrt(1 - x * x) * r.dr);
        }
        return 2 * pi * s;
    };
    int n = std::max(64, 8 * d.mode_count());
    double prev = at(n);
    for (int it = 0; it < 8; ++it) {
        n *= 2;
        const double cur = at(n);
        if (std::abs(cur - prev) <= 1e-15 * cur) return cur;
        prev = cur;
    }
    return prev;
}

double unit_ball_volume(int N) {
    if (N < 1) throw InvalidArgument("dimension must be positive");
    return std::pow(pi, 0.5 * N) / std::tgamma(0.5 * N + 1);
}

double unit_sphere_area(int N) { return N * unit_ball_volume(N); }

double integrate(const BoundaryGrid& g, const std::vector<double>& f) {
    double s = 0;
    for (int i = 0; i < g.size(); ++i) s += g.weights[i] * f[i];
    return s;
}

MinkowskiMoments minkowski_moments(const BoundaryGrid& g) {
    MinkowskiMoments m;
    for (int i = 0; i < g.size(); ++i) {
        const double wp = g.weights[i] * g.support[i], h = g.curvature_mean[i];
        m.m0 += wp;
        m.m1 += wp * h;
        m.m2 += wp * h * h;
        m.mA += wp * g.tracefree_sq[i];
    }
    return m;
}

namespace {

// Finds the graph parameter whose point is seen from `shift` (relative to the
// old center) at angle `target`. Planar angles are polar angles; axisymmetric
// ones are measured from the +z axis within the meridian half plane.
double ray_parameter(const StarDomain& d, const Eigen::Vector2d& shift, double target, double guess) {
    const bool planar = d.dimension() == 2;
    auto angle_and_rate = [&](double t, double& ang, double& rate) {
        const RadialSample s = d.radius(t);
        Eigen::Vector2d p, dp;
        if (planar) {
            p = {s.r * std::cos(t), s.r * std::sin(t)};
            dp = {s.dr * std::cos(t) - s.r * std::sin(t), s.dr * std::sin(t) + s.r * std::cos(t)};
        } else {
            // (rho, z) coordinates; angle from the z axis.
            p = {s.r * std::sin(t), s.r * std::cos(t)};
            dp = {s.dr * std::sin(t) + s.r * std::cos(t), s.dr * std::cos(t) - s.r * std::sin(t)};
        }
        const Eigen::Vector2d q = p - shift;
        const double n2 = q.squaredNorm();
        if (planar) {
            ang = std::atan2(q.y(), q.x());
            rate = (q.x() * dp.y() - q.y() * dp.x()) / n2;
        } else {
            ang = std::atan2(q.x(), q.y());
            rate = (q.y() * dp.x() - q.x() * dp.y()) / n2;
        }
    };
    double t = guess;
    for (int it = 0; it < 100; ++it) {
        double ang, rate;
        angle_and_rate(t, ang, rate);
        double diff = ang - target;
        if (planar) diff = std::remainder(diff, 2 * pi);
        if (!(rate > 0)) throw InvalidDomain("translation breaks the radial graph property");
        double step = diff / rate;
        step = std::clamp(step, -0.25, 0.25);
        t -= step;
        if (!planar) t = std::clamp(t, 0.0, pi);
        if (std::abs(step) < 1e-16) break;
    }
    return t;
}

void check_star_about(const StarDomain& d, const Eigen::Vector2d& shift) {
    const int n = 4 * dense_count(d);
    for (int i = 0; i <= n; ++i) {
        const double t = (d.dimension() == 2 ? 2 * pi : pi) * i / n;
        const RadialSample s = d.radius(t);
        Eigen::Vector2d p, dp;
        if (d.dimension() == 2) {
            p = {s.r * std::cos(t), s.r * std::sin(t)};
            dp = {s.dr * std::cos(t) - s.r * std::sin(t), s.dr * std::sin(t) + s.r * std::cos(t)};
        } else {
            p = {s.r * std::sin(t), s.r * std::cos(t)};
            dp = {s.dr * std::sin(t) + s.r * std::cos(t), s.dr * std::cos(t) - s.r * std::sin(t)};
            if (i == 0 || i == n) {
                // The new center must stay strictly between the two poles.
                if ((i == 0 && shift.y() >= p.y()) || (i == n && shift.y() <= p.y()))
                    throw InvalidDomain("translation moves the center outside the domain");
                continue;
            }
        }
        const Eigen::Vector2d q = p - shift;
        const double cross = d.dimension() == 2 ? q.x() * dp.y() - q.y() * dp.x()
                                                : q.y() * dp.x() - q.x() * dp.y();
        if (!(cross > 0)) throw InvalidDomain("translation breaks the radial graph property");
    }
}

StarDomain fit_planar(const StarDomain& d, const Eigen::Vector2d& shift, const std::vector<double>& center) {
    for (int n = 64;; n *= 2) {
        std::vector<double> r(n);
        double guess = 0;
        for (int j = 0; j < n; ++j) {
            const double a = 2 * pi * j / n;
            guess = ray_parameter(d, shift, a, j == 0 ? a : guess);
            const RadialSample s = d.radius(guess);
            r[j] = std::hypot(s.r * std::cos(guess) - shift.x(), s.r * std::sin(guess) - shift.y());
        }
        const int K = n / 2 - 1;
        std::vector<double> c(2 * K + 1, 0.0);
        for (int j = 0; j < n; ++j) c[0] += r[j] / n;
        for (int k = 1; k <= K; ++k)
            for (int j = 0; j < n; ++j) {
                const double a = 2 * pi * j * k / n;
                c[2 * k - 1] += 2 * r[j] * std::cos(a) / n;
                c[2 * k] += 2 * r[j] * std::sin(a) / n;
            }
        double tail = 0;
        for (int k = 3 * K / 4; k <= K; ++k)
            tail = std::max({tail, std::abs(c[2 * k - 1]), std::abs(c[2 * k])});
        if (tail < 1e-14 * c[0] || n >= 4096) {
            if (n >= 4096 && tail >= 1e-14 * c[0]) warn("translate: radial series not resolved to 1e-14");
            return trimmed(StarDomain(2, std::move(c), center), 1e-14 * c[0]);
        }
    }
}

StarDomain fit_axisymmetric(const StarDomain& d, double shift, const std::vector<double>& center) {
    for (int L = 16;; L *= 2) {
        const int n = 2 * L;
        const GaussRule& rule = gauss_legendre(n);
        std::vector<double> c(L + 1, 0.0), p(L + 1);
        double guess = pi;
        for (int j = 0; j < n; ++j) {
            const double x = rule.nodes[j], phi = std::acos(x);
            guess = ray_parameter(d, {0.0, shift}, phi, j == 0 ? phi : guess);
            const RadialSample s = d.radius(guess);
            const double r = std::hypot(s.r * std::sin(guess), s.r * std::cos(guess) - shift);
            legendre_values(L, x, p.data());
            for (int l = 0; l <= L; ++l) c[l] += (2 * l + 1) / 2.0 * rule.weights[j] * r * p[l];
        }
        double tail = 0;
        for (int l = 3 * L / 4; l <= L; ++l) tail = std::max(tail, std::abs(c[l]));
        // The (2l + 1) / 2 projection factor lifts the roundoff floor with l.
        if (tail < 1e-13 * c[0] || L >= 512) {
            if (L >= 512 && tail >= 1e-13 * c[0]) warn("translate: radial series not resolved to 1e-13");
            return trimmed(StarDomain(3, std::move(c), center), 1e-14 * c[0]);
        }
    }
}

} // namespace

StarDomain translate(const StarDomain& d, const std::vector<double>& shift) {
    if (static_cast<int>(shift.size()) != d.dimension())
        throw InvalidArgument("translate: shift has the wrong dimension");
    if (std::all_of(shift.begin(), shift.end(), [](double v) { return v == 0; })) return d;
    std::vector<double> center = d.center();
    for (int i = 0; i < d.dimension(); ++i) center[i] += shift[i];
    if (d.dimension() == 2) {
        const Eigen::Vector2d s(shift[0], shift[1]);
        check_star_about(d, s);
        return fit_planar(d, s, center);
    }
    if (shift[0] != 0 || shift[1] != 0)
        throw InvalidArgument("translate: an off-axis shift breaks the axial symmetry");
    check_star_about(d, {0.0, shift[2]});
    return fit_axisymmetric(d, shift[2], center);
}

StarDomain recenter(const StarDomain& domain) {
    StarDomain d = domain;
    for (int it = 0; it < 60; ++it) {
        const std::vector<double>& c = d.coefficients();
        std::vector<double> shift(d.dimension(), 0.0);
        if (d.dimension() == 2) {
            if (c.size() < 3) return d;
            shift = {c[1], c[2]};
        } else {
            if (c.size() < 2) return d;
            shift[2] = c[1];
        }
        double size = 0;
        for (double v : shift) size = std::max(size, std::abs(v));
        if (size < 1e-13 * c[0]) break;
        d = translate(d, shift);
    }
    // Remove the last roundoff-level mode-1 residue exactly.
    std::vector<double> c = d.coefficients();
    if (d.dimension() == 2 && c.size() >= 3) c[1] = c[2] = 0;
    if (d.dimension() == 3 && c.size() >= 2) c[1] = 0;
    return trimmed(StarDomain(d.dimension(), std::move(c), d.center()));
}

StarDomain trimmed(const StarDomain& d, double tol) {
    std::vector<double> c = d.coefficients();
    const int stride = d.dimension() == 2 ? 2 : 1;
    while (static_cast<int>(c.size()) > stride) {
        bool small = true;
        for (int k = 0; k < stride; ++k) small = small && std::abs(c[c.size() - 1 - k]) <= tol;
        if (!small) break;
        c.resize(c.size() - stride);
    }
    return StarDomain(d.dimension(), std::move(c), d.center());
}

} // namespace exfb
