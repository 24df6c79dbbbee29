#include "exfb/overdet.hpp"

#include <cmath>

#include "exfb/errors.hpp"

namespace exfb {

void validate(const ProblemData& d) {
    if (d.dimension < 2) throw InvalidArgument("dimension must be at least 2");
    if (!(d.R0 > 0)) throw InvalidArgument("R0 must be positive");
    if (d.dimension == 2) {
        if (d.alpha == 0) throw InvalidArgument("alpha must be nonzero for N = 2");
    } else if (d.u0 == 0) {
        throw InvalidArgument(
            "u0 = 0: the overdetermined problem reduces to constant mean curvature, "
            "so Omega is a ball by Alexandrov's theorem; no normalization needed");
    }
}

double compatibility_constant(const ProblemData& d) {
    validate(d);
    if (d.dimension == 2) return (d.gamma - d.alpha) / d.R0;
    return (d.gamma - (d.dimension - 2) * d.u0) / d.R0;
}

NormalizedProblem normalize(const ProblemData& d) {
    validate(d);
    NormalizedProblem p;
    p.dimension = d.dimension;
    p.Gamma = d.dimension == 2 ? d.gamma / d.alpha : d.gamma / d.u0;
    p.target_volume = unit_ball_volume(d.dimension);
    return p;
}

ResidualSamples residual_from_trace(const BoundaryGrid& grid, const std::vector<double>& trace, double Gamma) {
    if (static_cast<int>(trace.size()) != grid.size()) throw InvalidArgument("residual: trace size mismatch");
    // The planar condition carries Gamma - 1 where the general one has Gamma - (N - 2).
    const double constant = grid.dimension == 2 ? Gamma - 1 : Gamma - (grid.dimension - 2);
    ResidualSamples r;
    r.values.resize(trace.size());
    double acc = 0;
    for (int i = 0; i < grid.size(); ++i) {
        r.values[i] = trace[i] - Gamma * grid.curvature_normalized[i] - constant;
        acc += grid.weights[i] * r.values[i] * r.values[i];
    }
    r.l2_norm = std::sqrt(acc);
    return r;
}

ResidualSamples residual(const StarDomain& domain, const ExteriorExpansion& e, const BoundaryGrid& grid,
                         double Gamma) {
    if (!(grid.domain == domain)) throw InvalidArgument("residual: grid was built on a different domain");
    if (e.dimension != domain.dimension() || e.center != domain.center())
        throw InvalidArgument("residual: expansion does not belong to this domain");
    if (e.layer && !(e.layer->domain == domain))
        throw InvalidArgument("residual: expansion was solved on a different domain");
    if (e.fit_residual > fit_accept)
        throw InvalidArgument("residual: expansion is not certified (fit residual above 1e-9)");
    return residual_from_trace(grid, neumann_trace(e, grid), Gamma);
}

ConformalScalars conformal_scalars(double Gamma, int N) {
    if (N < 3) throw UnsupportedDimension("conformal_scalars: N >= 3 required");
    if (Gamma == 0) throw InvalidArgument("conformal_scalars: the conformal metric is undefined for Gamma = 0");
    ConformalScalars s;
    s.H_conformal = (N - 1) / Gamma * (Gamma - (N - 2));
    s.scalar_threshold = 0.5 * (N - 2);
    const double v = 2 * Gamma - (N - 2);
    s.scalar_sign = (v > 0) - (v < 0);
    return s;
}

} // namespace exfb
