#include "exfb/search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "exfb/errors.hpp"
#include "exfb/harmonic.hpp"
#include "exfb/legendre.hpp"
#include "exfb/overdet.hpp"
#include "exfb/parallel.hpp"
#include "exfb/spectrum.hpp"
#include "projection.hpp"

namespace exfb {

namespace {

constexpr double pi = std::numbers::pi;

// Position of the cosine (or Legendre) coefficient of a mode.
int cos_index(int N, int mode) { return N == 2 && mode > 0 ? 2 * mode - 1 : mode; }

std::vector<double> padded(const StarDomain& d, int modes) {
    std::vector<double> c = d.coefficients();
    const std::size_t n = d.dimension() == 2 ? 2 * modes + 1 : modes + 1;
    if (c.size() < n) c.resize(n, 0.0);
    return c;
}

struct Evaluation {
    BoundaryGrid grid;
    std::vector<double> trace;
    std::vector<double> residual;
    double residual_norm = 0;  // surface L2
    double volume = 0;
};

// Residual of the overdetermined condition with the layer solver at a fixed
// node count, or adaptively (and certified) when nodes == 0.
Evaluation evaluate(const StarDomain& d, double Gamma, int nodes, bool verify) {
    LayerOptions opt;
    opt.nodes = nodes;
    opt.verify = verify;
    const ExteriorExpansion e = solve_capacitary(d, opt);
    Evaluation ev{boundary_grid(d, static_cast<int>(e.layer->nodes.size())), {}, {}, 0, volume(d)};
    ev.trace = neumann_trace(e, ev.grid);
    ev.residual = residual_from_trace(ev.grid, ev.trace, Gamma).values;
    double s = 0;
    for (int i = 0; i < ev.grid.size(); ++i) s += ev.grid.weights[i] * ev.residual[i] * ev.residual[i];
    ev.residual_norm = std::sqrt(s);
    return ev;
}

Eigen::VectorXd stacked(const Evaluation& ev, double volume_weight, double target) {
    const int n = ev.grid.size();
    Eigen::VectorXd F(n + 1);
    for (int i = 0; i < n; ++i) F[i] = std::sqrt(ev.grid.weights[i]) * ev.residual[i];
    F[n] = volume_weight * (ev.volume - target);
    return F;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

void SolveOptions::validate() const {
    if (max_iterations < 0) throw InvalidArgument("SolveOptions: max_iterations must be non-negative");
    if (!(residual_tolerance >= 1e-12)) throw InvalidArgument("SolveOptions: residual_tolerance must be at least 1e-12");
    if (!(step_damping > 0 && step_damping <= 1)) throw InvalidArgument("SolveOptions: step_damping must lie in (0, 1]");
    if (!(volume_weight > 0)) throw InvalidArgument("SolveOptions: volume_weight must be positive");
    if (truncation < 0 || collocation_count < 0) throw InvalidArgument("SolveOptions: negative size");
    if (!(fd_step > 0)) throw InvalidArgument("SolveOptions: fd_step must be positive");
}

double distance_to_ball(const StarDomain& domain) {
    StarDomain d = recenter(domain);
    const int N = d.dimension();
    d = d.scaled(std::pow(unit_ball_volume(N) / volume(d), 1.0 / N));
    const std::vector<double>& c = d.coefficients();
    double s = 0;
    if (N == 2) {
        s = 2 * pi * (c[0] - 1) * (c[0] - 1);
        for (std::size_t i = 1; i < c.size(); ++i) s += pi * c[i] * c[i];
    } else {
        for (std::size_t l = 0; l < c.size(); ++l) {
            const double a = c[l] - (l == 0 ? 1.0 : 0.0);
            s += 2 * pi * a * a * 2.0 / (2.0 * l + 1.0);
        }
    }
    return std::sqrt(s);
}

SolveReport solve_shape(int N, double Gamma, const StarDomain& initial, const SolveOptions& opt) {
    opt.validate();
    if (initial.dimension() != N) throw InvalidArgument("solve_shape: initial domain has the wrong dimension");
    const double target = unit_ball_volume(N);
    const StarDomain start = recenter(initial);
    const int modes = opt.truncation > 0 ? std::max(opt.truncation, start.mode_count())
                                         : std::max(8, start.mode_count());
    std::vector<double> x = padded(start, modes);
    const std::vector<double> center = start.center();
    std::vector<int> free;
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        const bool mode1 = N == 2 ? (i == 1 || i == 2) : i == 1;
        if (mode1) x[i] = 0;
        else free.push_back(i);
    }
    const int p = static_cast<int>(free.size());
    const int nodes = opt.collocation_count > 0 ? opt.collocation_count : capacitary_node_count(start);

    SolveReport rep;
    rep.nodes = nodes;
    Evaluation ev = evaluate(StarDomain(N, x, center), Gamma, nodes, false);
    Eigen::VectorXd F = stacked(ev, opt.volume_weight, target);
    double norm = F.norm();
    double mu = 1e-3;
    double previous = INFINITY;
    // Difference step; shrinks with the Newton steps so that quadratic
    // (degenerate) directions keep an accurate derivative near the solution.
    double fd = opt.fd_step;

    for (int it = 0; it < opt.max_iterations; ++it) {
        // Once below tolerance, keep polishing only while steps still pay off.
        if (norm <= opt.residual_tolerance && (it == 0 || norm > 0.9 * previous)) break;

        Eigen::MatrixXd J(F.size(), p);
        for (int j = 0; j < p; ++j) {
            double h = fd;
            Eigen::VectorXd Fj;
            for (int attempt = 0; attempt < 2; ++attempt, h = -h) {
                std::vector<double> xj = x;
                xj[free[j]] += h;
                try {
                    Fj = stacked(evaluate(StarDomain(N, xj, center), Gamma, nodes, false), opt.volume_weight, target);
                    break;
                } catch (const Error&) {
                    if (attempt == 1) throw;
                }
            }
            J.col(j) = (Fj - F) / h;
        }
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * F;
        const Eigen::VectorXd diag = JtJ.diagonal().cwiseMax(1e-12 * std::max(1.0, JtJ.diagonal().maxCoeff()));

        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::MatrixXd A = JtJ;
            A.diagonal() += mu * diag;
            const Eigen::VectorXd delta = -opt.step_damping * A.ldlt().solve(g);
            if (!delta.allFinite()) {
                mu *= 10;
                continue;
            }
            std::vector<double> xt = x;
            for (int j = 0; j < p; ++j) xt[free[j]] += delta[j];
            try {
                Evaluation et = evaluate(StarDomain(N, xt, center), Gamma, nodes, false);
                Eigen::VectorXd Ft = stacked(et, opt.volume_weight, target);
                if (Ft.norm() < norm) {
                    x = std::move(xt);
                    ev = std::move(et);
                    F = std::move(Ft);
                    previous = norm;
                    norm = F.norm();
                    mu = std::max(mu / 10, 1e-12);
                    accepted = true;
                    ++rep.iterations;
                    fd = std::clamp(0.25 * max_abs(delta), 1e-8, opt.fd_step);
                    if (max_abs(delta) < 1e-13) it = opt.max_iterations;  // nothing left to gain
                    break;
                }
            } catch (const Error&) {
                // Invalid intermediate shape: damp harder.
            }
            mu *= 10;
        }
        if (!accepted) {
            rep.message = "no decreasing step";
            break;
        }
    }

    // Certify the final shape with the adaptive, verified solver.
    rep.final_domain = trimmed(StarDomain(N, x, center));
    try {
        const Evaluation fin = evaluate(rep.final_domain, Gamma, 0, true);
        const Eigen::VectorXd Ff = stacked(fin, opt.volume_weight, target);
        rep.residual_norm = Ff.norm();
        rep.volume_gap = std::abs(fin.volume - target);
    } catch (const Error& err) {
        rep.residual_norm = norm;
        rep.volume_gap = std::abs(ev.volume - target);
        rep.message = std::string("final verification failed: ") + err.what();
        rep.distance_to_ball = distance_to_ball(rep.final_domain);
        return rep;
    }
    rep.converged = rep.residual_norm <= opt.residual_tolerance && rep.volume_gap <= 1e-9;
    if (!rep.converged && rep.message.empty()) rep.message = "tolerance not reached";
    rep.distance_to_ball = distance_to_ball(rep.final_domain);
    return rep;
}

std::vector<int> symmetric_modes(int N, int l, int highest) {
    std::vector<int> out{0};
    for (int k = 2; k <= highest; ++k) {
        bool keep;
        if (N == 2) keep = k % l == 0;
        else keep = l % 2 == 0 ? k % 2 == 0 : true;
        if (keep) out.push_back(k);
    }
    return out;
}

BranchResult continue_branch(int N, int l, int steps, double ds, const SolveOptions& opt, VolumeMode volume_mode) {
    opt.validate();
    if (N != 2 && N != 3) throw UnsupportedDimension("continue_branch: N must be 2 or 3");
    if (l < 2) throw InvalidArgument("continue_branch: mode must be at least 2");
    if (!(ds > 0 && ds <= 0.05)) throw InvalidArgument("continue_branch: ds must lie in (0, 0.05]");
    if (steps < 0) throw InvalidArgument("continue_branch: steps must be non-negative");

    const int highest = opt.truncation > 0 ? opt.truncation : (N == 2 ? 8 * l : std::max(16, 4 * l));
    const std::vector<int> modes = symmetric_modes(N, l, highest);
    const int k = static_cast<int>(modes.size());
    const int size = N == 2 ? 2 * highest + 1 : highest + 1;
    const int amp_slot = static_cast<int>(std::find(modes.begin(), modes.end(), l) - modes.begin());
    const double target = unit_ball_volume(N);
    const bool fixed = volume_mode == VolumeMode::fixed;

    // Unknowns y = (Gamma, coefficients of the symmetric modes).
    auto domain_of = [&](const Eigen::VectorXd& y) {
        std::vector<double> c(size, 0.0);
        for (int i = 0; i < k; ++i) c[cos_index(N, modes[i])] = y[1 + i];
        return StarDomain(N, c);
    };
    auto point_of = [&](const Eigen::VectorXd& y, double residual_norm) {
        BranchPoint b;
        b.Gamma = y[0];
        b.amplitude = y[1 + amp_slot];
        b.domain = trimmed(domain_of(y));
        b.residual_norm = residual_norm;
        return b;
    };
    // Galerkin equations (plus the volume row when fixed) at a fixed node count.
    const int rows = k + (fixed ? 1 : 0);
    auto equations = [&](const Evaluation& ev, const std::vector<double>& r) {
        Eigen::VectorXd G(rows);
        for (int i = 0; i < k; ++i) G[i] = detail::mode_coefficient(ev.grid, r, modes[i]);
        if (fixed) G[k] = opt.volume_weight * (ev.volume - target);
        return G;
    };

    BranchResult out;
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(k + 1);
    y0[0] = bifurcation_value(N, l);
    y0[1] = 1;
    out.points.push_back(point_of(y0, 0.0));
    {
        const Evaluation ev = evaluate(domain_of(y0), y0[0], 0, true);
        out.points.back().residual_norm = ev.residual_norm;
    }
    Eigen::VectorXd tangent = Eigen::VectorXd::Zero(k + 1);
    tangent[1 + amp_slot] = 1;

    Eigen::VectorXd y = y0, prev = y0;
    for (int step = 1; step <= steps; ++step) {
        if (step > 1) tangent = (y - prev).normalized();
        double h = ds;
        bool ok = false;
        std::string why;
        Eigen::VectorXd ynew;
        double res_norm = 0;
        for (int attempt = 0; attempt <= 5 && !ok; ++attempt, h /= 2) {
            const Eigen::VectorXd pred = y + h * tangent;
            try {
                const int nodes = opt.collocation_count > 0 ? opt.collocation_count
                                                            : capacitary_node_count(domain_of(pred));
                Eigen::VectorXd z = pred;
                for (int it = 0; it < 15; ++it) {
                    const Evaluation ev = evaluate(domain_of(z), z[0], nodes, false);
                    Eigen::VectorXd G(rows + 1);
                    G.head(rows) = equations(ev, ev.residual);
                    G[rows] = tangent.dot(z - pred);
                    Eigen::MatrixXd J(rows + 1, k + 1);
                    // Gamma enters affinely; reuse the trace.
                    const std::vector<double> rg = residual_from_trace(ev.grid, ev.trace, z[0] + 1).values;
                    J.col(0).head(rows) = equations(ev, rg) - G.head(rows);
                    for (int j = 0; j < k; ++j) {
                        Eigen::VectorXd zj = z;
                        zj[1 + j] += opt.fd_step;
                        const Evaluation ej = evaluate(domain_of(zj), z[0], nodes, false);
                        J.col(1 + j).head(rows) = (equations(ej, ej.residual) - G.head(rows)) / opt.fd_step;
                    }
                    J.row(rows) = tangent.transpose();
                    const Eigen::VectorXd delta = -J.colPivHouseholderQr().solve(G);
                    z += opt.step_damping * delta;
                    if (max_abs(delta) < 1e-12) break;
                }
                const Evaluation fin = evaluate(domain_of(z), z[0], 0, true);
                res_norm = fin.residual_norm;
                if (fixed) res_norm = std::hypot(res_norm, opt.volume_weight * (fin.volume - target));
                if (res_norm <= opt.residual_tolerance) {
                    ok = true;
                    ynew = z;
                } else {
                    std::ostringstream msg;
                    msg << "corrector stalled at residual " << res_norm;
                    why = msg.str();
                }
            } catch (const Error& err) {
                why = err.what();
            }
        }
        if (!ok) {
            out.truncated = true;
            std::ostringstream msg;
            msg << "step " << step << " failed after halving ds: " << why;
            out.diagnostic = msg.str();
            break;
        }
        prev = y;
        y = ynew;
        out.points.push_back(point_of(y, res_norm));
    }
    return out;
}

StarDomain random_shape(int N, std::uint64_t seed, double amplitude) {
    if (N != 2 && N != 3) throw UnsupportedDimension("random_shape: N must be 2 or 3");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), size(0.3, 0.9);
    const int top = 6;
    std::vector<double> c(N == 2 ? 2 * top + 1 : top + 1, 0.0);
    for (int m = 2; m <= top; ++m) {
        if (N == 2) {
            c[2 * m - 1] = coef(rng);
            c[2 * m] = coef(rng);
        } else {
            c[m] = coef(rng);
        }
    }
    const double want = amplitude * size(rng);
    double dev = 0, big = 0;
    for (std::size_t i = 1; i < c.size(); ++i) big = std::max(big, std::abs(c[i]));
    for (int j = 0; j < 2048; ++j) {
        double r;
        if (N == 2) {
            const double t = 2 * pi * j / 2048;
            r = 0;
            for (int m = 2; m <= top; ++m) r += c[2 * m - 1] * std::cos(m * t) + c[2 * m] * std::sin(m * t);
        } else {
            r = legendre_sum(c, std::cos(pi * (j + 0.5) / 2048));
        }
        dev = std::max(dev, std::abs(r));
    }
    const double s = want / std::max(dev, big);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] *= s;
    c[0] = 1;
    StarDomain d = recenter(StarDomain(N, c));
    return d.scaled(std::pow(unit_ball_volume(N) / volume(d), 1.0 / N));
}

std::vector<SweepRow> rigidity_sweep(int N, const std::vector<double>& Gammas, int seeds, const SolveOptions& opt) {
    opt.validate();
    if (seeds < 0) throw InvalidArgument("rigidity_sweep: seeds must be non-negative");
    std::vector<double> gs = Gammas;
    std::sort(gs.begin(), gs.end());
    std::vector<SweepRow> rows(gs.size() * seeds);
    parallel_for(static_cast<int>(rows.size()), [&](int i) {
        SweepRow& row = rows[i];
        row.Gamma = gs[i / seeds];
        row.seed = i % seeds;
        try {
            row.report = solve_shape(N, row.Gamma, random_shape(N, opt.seed + row.seed), opt);
        } catch (const Error& err) {
            row.report.converged = false;
            row.report.message = err.what();
        }
    });
    return rows;
}

} // namespace exfb
