#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exfb/geometry.hpp"

namespace exfb {

struct SolveOptions {
    int max_iterations = 50;
    double residual_tolerance = 1e-9;
    double step_damping = 1.0;   // scales every accepted step, in (0, 1]
    double volume_weight = 10.0;
    int truncation = 0;          // highest shape mode; 0 = max(8, modes of the initial shape)
    int collocation_count = 0;   // layer nodes; 0 = chosen from the initial shape
    std::uint64_t seed = 0;
    double fd_step = 1e-6;       // forward-difference step in the shape coefficients

    void validate() const;
};

struct SolveReport {
    bool converged = false;
    StarDomain final_domain{2, {1.0}};
    double residual_norm = 0;  // stacked norm, volume row included
    double volume_gap = 0;
    double distance_to_ball = 0;
    int iterations = 0;
    int nodes = 0;
    std::string message;
};

// L2 distance of R - 1 over the parameter domain after recentering and
// rescaling to the volume of the unit ball.
double distance_to_ball(const StarDomain& domain);

// Damped Gauss-Newton (Levenberg-Marquardt) on
// [sqrt(w) * residual samples ; volume_weight * (|Omega| - omega_N)],
// mode 1 pinned to zero.
SolveReport solve_shape(int N, double Gamma, const StarDomain& initial, const SolveOptions& options = {});

struct BranchPoint {
    double Gamma = 0;
    double amplitude = 0;  // coefficient of the bifurcating mode
    StarDomain domain{2, {1.0}};
    double residual_norm = 0;  // surface L2 norm of the overdetermined residual
};

enum class VolumeMode { free, fixed };

struct BranchResult {
    std::vector<BranchPoint> points;
    bool truncated = false;
    std::string diagnostic;
};

// Pseudo-arclength continuation from (bifurcation_value(N, l), ball) along
// mode l, in the space of shapes sharing the symmetry of that mode. With
// VolumeMode::free the radial mode is an unknown; with VolumeMode::fixed a
// volume row is added and Gamma still moves along the branch.
BranchResult continue_branch(int N, int l, int steps, double ds, const SolveOptions& options = {},
                             VolumeMode volume = VolumeMode::free);

// Modes that share the symmetry of mode l: multiples of l in the plane,
// even modes (even l) or all modes but 1 (odd l) on the axis. Mode 0 included.
std::vector<int> symmetric_modes(int N, int l, int highest);

// Random recentered unit-volume shape on modes 2..6. Both the largest
// coefficient and the largest deviation |R - R_mean| are at most 0.15.
StarDomain random_shape(int N, std::uint64_t seed, double amplitude = 0.15);

struct SweepRow {
    double Gamma = 0;
    int seed = 0;
    SolveReport report;
};

// One solve per (Gamma, seed) from random_shape(N, options.seed + seed),
// run in parallel and returned ordered by (Gamma, seed).
std::vector<SweepRow> rigidity_sweep(int N, const std::vector<double>& Gammas, int seeds,
                                     const SolveOptions& options = {});

} // namespace exfb
