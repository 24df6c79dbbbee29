#include "exfb/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exfb/errors.hpp"

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const char* what) {
    if (!ok) throw UnsupportedDimension(what);
}

double lp_norm(const BoundaryGrid& g, const std::vector<double>& f, double p) {
    double s = 0;
    for (int i = 0; i < g.size(); ++i) s += g.weights[i] * std::pow(std::abs(f[i]), p);
    return std::pow(s, 1 / p);
}

} // namespace

double IdentityReport::get(const std::string& key) const {
    for (const auto& [k, v] : extra)
        if (k == key) return v;
    throw InvalidArgument("IdentityReport: no entry " + key);
}

IdentityReport equality_report(std::string name, double lhs, double rhs, double tolerance) {
    IdentityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_gap = std::abs(lhs - rhs);
    r.rel_gap = r.abs_gap / std::max({1.0, std::abs(lhs), std::abs(rhs)});
    r.tolerance = tolerance;
    r.satisfied = r.rel_gap <= tolerance;
    return r;
}

IdentityReport inequality_report(std::string name, double lhs, double rhs, double tolerance) {
    IdentityReport r = equality_report(std::move(name), lhs, rhs, tolerance);
    r.inequality = true;
    r.satisfied = lhs <= rhs + tolerance * std::max(1.0, std::abs(rhs));
    return r;
}

BoundaryGrid matching_grid(const ExteriorExpansion& e, const StarDomain& d) {
    if (e.layer) return boundary_grid(d, static_cast<int>(e.layer->nodes.size()));
    const int modes = d.dimension() == 2 ? static_cast<int>(e.decay.size()) / 2
                                         : static_cast<int>(e.decay.size());
    return boundary_grid(d, std::max(64, 4 * std::max(modes, d.mode_count())));
}

BoundaryGrid geometry_grid(const StarDomain& d) {
    return boundary_grid(d, std::max(d.dimension() == 2 ? 256 : 128, 16 * d.mode_count()));
}

IdentityReport energy_identity(const ExteriorExpansion& e, const StarDomain& d) {
    require(d.dimension() == 3, "energy_identity: N = 3 only");
    const BoundaryGrid g = matching_grid(e, d);
    const double lhs = dirichlet_energy(e, d);
    const double rhs = -integrate(g, neumann_trace(e, g));
    return equality_report("energy", lhs, rhs, tol_energy);
}

IdentityReport pohozaev(const ExteriorExpansion& e, const StarDomain& d) {
    const BoundaryGrid g = matching_grid(e, d);
    const std::vector<double> dn = neumann_trace(e, g);
    double lhs = 0;
    for (int i = 0; i < g.size(); ++i) lhs += g.weights[i] * g.support[i] * dn[i] * dn[i];
    const double rhs = d.dimension() == 2 ? 2 * pi : -(d.dimension() - 2) * integrate(g, dn);
    return equality_report("pohozaev", lhs, rhs, tol_pohozaev);
}

IdentityReport am_inequality(const ExteriorExpansion& e, const StarDomain& d, double p) {
    require(d.dimension() == 3, "am_inequality: N = 3 only");
    const int N = 3;
    const double pmin = 2 - 1.0 / (N - 1);
    if (p < pmin) throw InvalidArgument("am_inequality: p below the admissible threshold 2 - 1/(N-1)");
    const BoundaryGrid g = matching_grid(e, d);
    const double lhs = lp_norm(g, neumann_trace(e, g), p);
    const double rhs = double(N - 2) / (N - 1) * lp_norm(g, g.curvature_mean, p);
    IdentityReport r = inequality_report("am_inequality", lhs, rhs, tol_inequality);
    r.extra.emplace_back("p", p);
    r.extra.emplace_back("equality_defect", rhs - lhs);
    return r;
}

IdentityReport defect_identity(const StarDomain& d, double Gamma) {
    require(d.dimension() == 3, "defect_identity: N = 3 only");
    const int N = 3;
    const BoundaryGrid g = geometry_grid(d);
    const MinkowskiMoments m = minkowski_moments(g);
    const double lambda = Gamma - (N - 2);
    const double area = integrate(g, std::vector<double>(g.size(), 1.0));
    const double intH = integrate(g, g.curvature_mean);

    // Path A: closed geometric form. N |Omega| stands where the unit-volume
    // normalization has |dB_1|, which keeps the identity valid for any volume.
    const double pathA = Gamma * Gamma / ((N - 1) * (N - 2)) * m.mA + Gamma * lambda / (N - 1) * intH -
                         lambda * (2 * Gamma - (N - 2)) * area + lambda * lambda * N * volume(d);

    // Path B: the Pohozaev difference for q = -(Gamma/(N-1)) H + lambda, by quadrature.
    double pq2 = 0, sq = 0;
    for (int i = 0; i < g.size(); ++i) {
        const double q = -Gamma / (N - 1) * g.curvature_mean[i] + lambda;
        pq2 += g.weights[i] * g.support[i] * q * q;
        sq += g.weights[i] * q;
    }
    const double pathB = pq2 + (N - 2) * sq;

    IdentityReport r = equality_report("defect_identity", pathA, pathB, tol_defect);
    r.extra.emplace_back("path_a", pathA);
    r.extra.emplace_back("path_b", pathB);
    r.extra.emplace_back("Gamma", Gamma);
    return r;
}

IdentityReport planar_flux(const ExteriorExpansion& e, const StarDomain& d) {
    require(d.dimension() == 2, "planar_flux: N = 2 only");
    const BoundaryGrid g = matching_grid(e, d);
    IdentityReport r = equality_report("planar_flux", integrate(g, neumann_trace(e, g)), -2 * pi, tol_flux);
    // The flux tolerance is absolute.
    r.satisfied = r.abs_gap <= tol_flux;
    return r;
}

IdentityReport planar_topological(double Gamma, int euler_char, double perimeter) {
    if (!(perimeter > 0)) throw InvalidArgument("planar_topological: perimeter must be positive");
    IdentityReport r = equality_report("planar_topological", (Gamma - 1) * perimeter,
                                       2 * pi * (Gamma * euler_char - 1), 1e-12);
    r.extra.emplace_back("euler_characteristic", euler_char);
    return r;
}

std::vector<IdentityReport> minkowski_identities(const StarDomain& d) {
    const int N = d.dimension();
    const BoundaryGrid g = geometry_grid(d);
    const MinkowskiMoments m = minkowski_moments(g);
    const double area = surface_measure(d);
    const double vol = volume(d);
    std::vector<IdentityReport> out;
    out.push_back(equality_report("minkowski_0", m.m0, N * vol, tol_minkowski));
    if (N == 2) {
        double lhs = 0;
        for (int i = 0; i < g.size(); ++i) lhs -= g.weights[i] * g.support[i] * g.curvature_normalized[i];
        out.push_back(equality_report("minkowski_1", lhs, area, 1e-9));
        return out;
    }
    const double intH = integrate(g, g.curvature_mean);
    out.push_back(equality_report("minkowski_1", m.m1, (N - 1) * area, tol_minkowski));
    out.push_back(equality_report("minkowski_2", m.m2,
                                  (N - 1) * intH + double(N - 1) / (N - 2) * m.mA, tol_minkowski));
    // Written as lhs <= rhs: the lower bound on the trace-free moment.
    out.push_back(inequality_report("weighted_cauchy_schwarz",
                                    (N - 2) * ((N - 1) * area * area / (N * vol) - intH), m.mA, 1e-8));
    return out;
}

ChainReport rigidity_chain(const ExteriorExpansion& e, const StarDomain& d, double Gamma) {
    require(d.dimension() == 3, "rigidity_chain: N = 3 only");
    const int N = 3;
    ChainReport c;
    c.Gamma = Gamma;
    c.lambda = Gamma - (N - 2);
    const double lam = c.lambda;
    const BoundaryGrid g = matching_grid(e, d);
    const std::vector<double> dn = neumann_trace(e, g);
    const double area = integrate(g, std::vector<double>(g.size(), 1.0));
    const double sphere = unit_sphere_area(N);
    const double normH = lp_norm(g, g.curvature_mean, 2);
    const double normDn = lp_norm(g, dn, 2);
    std::vector<double> q(g.size());
    for (int i = 0; i < g.size(); ++i) q[i] = Gamma / (N - 1) * g.curvature_mean[i] - lam;
    const double normQ = lp_norm(g, q, 2);
    const double intH = integrate(g, g.curvature_mean);
    const MinkowskiMoments m = minkowski_moments(geometry_grid(d));
    const double vol = volume(d);

    auto step = [&](std::string name, double lhs, double rhs) {
        c.steps.push_back({std::move(name), lhs, rhs, rhs - lhs, lhs <= rhs + 1e-10 * std::max(1.0, std::abs(rhs))});
    };
    const double k = double(N - 2) / (N - 1);
    step("am_bound: |d_nu u|_2 <= (N-2)/(N-1) |H|_2", normDn, k * normH);
    step("am_bound_on_condition: |Gamma H/(N-1) - lambda|_2 <= (N-2)/(N-1) |H|_2", normQ, k * normH);
    step("triangle: Gamma/(N-1) |H|_2 - lambda |Sigma|^1/2 <= |Gamma H/(N-1) - lambda|_2",
         Gamma / (N - 1) * normH - lam * std::sqrt(area), normQ);
    step("combined: lambda/(N-1) |H|_2 <= lambda |Sigma|^1/2", lam / (N - 1) * normH, lam * std::sqrt(area));
    step("l2_bound: |H|_2 <= (N-1) |Sigma|^1/2", normH, (N - 1) * std::sqrt(area));
    step("holder: int H <= |Sigma|^1/2 |H|_2", intH, std::sqrt(area) * normH);
    step("mean_curvature_bound: int H <= (N-1) |Sigma|", intH, (N - 1) * area);
    step("weighted_cauchy_schwarz: (N-2)((N-1)|Sigma|^2/(N|Omega|) - int H) <= int (x.nu)|A0|^2",
         (N - 2) * ((N - 1) * area * area / (N * vol) - intH), m.mA);
    const double afterU = Gamma * Gamma * area * area / sphere - Gamma * (N - 2) / (N - 1) * intH -
                          lam * (2 * Gamma - (N - 2)) * area + lam * lam * sphere;
    step("defect_lower_bound <= 0", afterU, 0.0);
    const double afterM = Gamma * Gamma * area * area / sphere - Gamma * (N - 2) * area -
                          lam * (2 * Gamma - (N - 2)) * area + lam * lam * sphere;
    step("after_mean_curvature_bound <= 0", afterM, 0.0);
    c.factored_product = (area - sphere) / sphere * (Gamma * Gamma * area - lam * lam * sphere);
    step("factored: (|Sigma|-|dB1|)/|dB1| (Gamma^2|Sigma| - lambda^2|dB1|) <= 0", c.factored_product, 0.0);
    step("isoperimetric: |dB1| (|Omega|/omega_N)^((N-1)/N) <= |Sigma|",
         sphere * std::pow(vol / unit_ball_volume(N), double(N - 1) / N), area);
    step("positivity: 0 <= Gamma^2|Sigma| - lambda^2|dB1|", 0.0, Gamma * Gamma * area - lam * lam * sphere);
    return c;
}

std::vector<IdentityReport> identity_suite(const ExteriorExpansion& e, const StarDomain& d, double Gamma) {
    std::vector<IdentityReport> out = minkowski_identities(d);
    out.push_back(pohozaev(e, d));
    if (d.dimension() == 2) {
        out.push_back(planar_flux(e, d));
    } else {
        out.push_back(energy_identity(e, d));
        out.push_back(am_inequality(e, d, 2));
        out.push_back(defect_identity(d, Gamma));
    }
    return out;
}

} // namespace exfb
