#include "doctest.h"

#include <cmath>

#include "exfb/errors.hpp"
#include "exfb/identities.hpp"
#include "exfb/search.hpp"
#include "exfb/spectrum.hpp"
#include "oracles.hpp"

using namespace exfb;
using oracle::pi;

TEST_CASE("distance to the ball") {
    CHECK(distance_to_ball(StarDomain::ball(2)) == 0);
    CHECK(distance_to_ball(StarDomain::ball(3)) <= 1e-15);
    CHECK(distance_to_ball(StarDomain::ball(3, 2.0)) <= 1e-15);
    CHECK(distance_to_ball(translate(StarDomain::ball(2), {0.3, 0})) <= 1e-10);
    CHECK(distance_to_ball(translate(StarDomain::ball(3), {0, 0, -0.2})) <= 1e-10);

    const StarDomain d(2, {1, 0, 0, 0.1, 0});
    auto R = [&](double t) { return oracle::planar_radius(d.coefficients(), t); };
    const double s = std::sqrt(pi / oracle::planar_area(R));
    const int n = 100000;
    double acc = 0;
    for (int i = 0; i < n; ++i) {
        const double v = s * R(2 * pi * i / n) - 1;
        acc += v * v * 2 * pi / n;
    }
    const double dist = distance_to_ball(d);
    CHECK(dist > 0.1);
    CHECK(std::abs(dist - std::sqrt(acc)) <= 1e-10);

    const StarDomain a(3, {1, 0, 0.1, 0.05});
    auto Ra = [&](double p) { return oracle::axial_radius(a.coefficients(), p); };
    const double sa = std::cbrt(4 * pi / 3 / oracle::axial_volume(Ra));
    const double h = pi / n;
    acc = 0;
    for (int i = 0; i < n; ++i) {
        const double p = (i + 0.5) * h, v = sa * Ra(p) - 1;
        acc += 2 * pi * v * v * std::sin(p) * h;
    }
    CHECK(std::abs(distance_to_ball(a) - std::sqrt(acc)) <= 1e-9);
}

TEST_CASE("critical Gamma in three dimensions relaxes to the ball") {
    const SolveReport r = solve_shape(3, 1, StarDomain(3, {1, 0, 0.1}));
    CHECK(r.converged);
    CHECK(r.residual_norm <= 1e-9);
    CHECK(r.volume_gap <= 1e-9);
    CHECK(r.distance_to_ball <= 1e-6);
    CHECK(r.iterations > 0);
    for (const IdentityReport& rep : identity_suite(solve_capacitary(r.final_domain), r.final_domain, 1))
        CHECK_MESSAGE(rep.satisfied, rep.name);
}

TEST_CASE("planar solve at Gamma = 2 finds the unit disc") {
    const SolveReport r = solve_shape(2, 2, StarDomain(2, {1, 0, 0, 0.1, 0}));
    CHECK(r.converged);
    CHECK(r.distance_to_ball <= 1e-6);
    CHECK(std::abs(volume(r.final_domain) - pi) <= 1e-9);
    for (const IdentityReport& rep : identity_suite(solve_capacitary(r.final_domain), r.final_domain, 2))
        CHECK_MESSAGE(rep.satisfied, rep.name);
}

TEST_CASE("the ball needs no iterations") {
    for (int N : {2, 3}) {
        const SolveReport r = solve_shape(N, 0.7, StarDomain::ball(N));
        CHECK(r.converged);
        CHECK(r.iterations == 0);
        CHECK(r.residual_norm <= 1e-9);
        CHECK(r.distance_to_ball <= 1e-15);
    }
}

TEST_CASE("gauge invariance under translation of the initial shape") {
    const StarDomain d(2, {1, 0, 0, 0.08, 0.03, 0, -0.04});
    const StarDomain moved(2, d.coefficients(), {0.4, -0.25});
    const SolveReport a = solve_shape(2, -1, d), b = solve_shape(2, -1, moved);
    CHECK(a.converged);
    CHECK(b.converged);
    CHECK(a.distance_to_ball <= 1e-6);
    CHECK(b.distance_to_ball <= 1e-6);
    CHECK(std::abs(a.distance_to_ball - b.distance_to_ball) <= 1e-8);
}

TEST_CASE("non-convergence is reported, not thrown") {
    SolveOptions o;
    o.max_iterations = 1;
    const SolveReport r = solve_shape(3, 2, StarDomain(3, {1, 0, 0.1, 0.05}), o);
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.message.empty());
    CHECK(r.iterations <= 1);
}

TEST_CASE("solve options are validated") {
    SolveOptions o;
    o.residual_tolerance = 1e-13;
    CHECK_THROWS_AS(o.validate(), InvalidArgument);
    o = {};
    o.step_damping = 0;
    CHECK_THROWS_AS(solve_shape(2, 1, StarDomain::ball(2), o), InvalidArgument);
    o = {};
    o.volume_weight = -1;
    CHECK_THROWS_AS(o.validate(), InvalidArgument);
    CHECK_THROWS_AS(solve_shape(3, 1, StarDomain::ball(2)), InvalidArgument);
}

TEST_CASE("symmetric modes") {
    CHECK(symmetric_modes(2, 3, 12) == std::vector<int>{0, 3, 6, 9, 12});
    CHECK(symmetric_modes(3, 2, 8) == std::vector<int>{0, 2, 4, 6, 8});
    CHECK(symmetric_modes(3, 3, 6) == std::vector<int>{0, 2, 3, 4, 5, 6});
}

TEST_CASE("random shapes") {
    for (int N : {2, 3})
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const StarDomain d = random_shape(N, seed);
            const auto& c = d.coefficients();
            CHECK(std::abs(volume(d) - unit_ball_volume(N)) <= 1e-12);
            if (N == 2) {
                CHECK(std::abs(c[1]) <= 1e-10);
                CHECK(std::abs(c[2]) <= 1e-10);
            } else {
                CHECK(std::abs(c[1]) <= 1e-10);
            }
            double coef = 0;
            for (std::size_t k = N == 2 ? 3 : 2; k < c.size(); ++k) coef = std::max(coef, std::abs(c[k]));
            CHECK(coef <= 0.15);
            CHECK(coef > 0);
            CHECK(std::max(d.max_radius() - d.mean_radius(), d.mean_radius() - d.min_radius()) <= 0.15);
            CHECK(random_shape(N, seed) == d);
        }
    CHECK_FALSE(random_shape(3, 1) == random_shape(3, 2));
    CHECK_THROWS_AS(random_shape(4, 1), UnsupportedDimension);
}

TEST_CASE("sweeps are ordered and reproducible") {
    const std::vector<double> Gammas{2, -1};
    const std::vector<SweepRow> a = rigidity_sweep(2, Gammas, 2), b = rigidity_sweep(2, Gammas, 2);
    REQUIRE(a.size() == 4);
    CHECK(a[0].Gamma == -1);
    CHECK(a[0].seed == 0);
    CHECK(a[1].seed == 1);
    CHECK(a[3].Gamma == 2);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].report.converged);
        CHECK(a[i].report.distance_to_ball <= 1e-6);
        CHECK(a[i].report.final_domain == b[i].report.final_domain);
        CHECK(a[i].report.residual_norm == b[i].report.residual_norm);
        CHECK(a[i].report.iterations == b[i].report.iterations);
    }
}

TEST_CASE("branch: zero steps returns the bifurcation point") {
    const BranchResult b = continue_branch(3, 2, 0, 0.01);
    REQUIRE(b.points.size() == 1);
    CHECK(b.points[0].Gamma == 0.5);
    CHECK(b.points[0].amplitude == 0);
    CHECK(b.points[0].domain == StarDomain::ball(3));
    CHECK_FALSE(b.truncated);
}

TEST_CASE("planar branch from mode 2") {
    SolveOptions o;
    const double ds = 0.01;
    const BranchResult b = continue_branch(2, 2, 2, ds, o);
    REQUIRE(b.points.size() == 3);
    CHECK_FALSE(b.truncated);
    const BranchPoint& p = b.points[1];
    CHECK(std::abs(p.amplitude - ds) <= 0.1 * ds);
    CHECK(std::abs(p.Gamma - 1.0 / 3) <= 1e-3);
    CHECK(p.residual_norm <= o.residual_tolerance);
    CHECK(b.points[2].amplitude > p.amplitude);
    for (const BranchPoint& q : b.points) {
        const auto& c = q.domain.coefficients();
        for (std::size_t k = 1; 2 * k < c.size(); ++k)
            if (k % 2 != 0) {
                CHECK(std::abs(c[2 * k - 1]) <= 1e-10);
                CHECK(std::abs(c[2 * k]) <= 1e-10);
            }
    }
}

TEST_CASE("planar branch from mode 3: quadratic radial correction") {
    const BranchResult b = continue_branch(2, 3, 3, 0.02);
    REQUIRE(b.points.size() == 4);
    const SecondOrderCoefficients s = branch_second_order(3);
    for (std::size_t i = 2; i < b.points.size(); ++i) {
        const BranchPoint& p = b.points[i];
        const double ratio = (p.domain.coefficients()[0] - 1) / (p.amplitude * p.amplitude);
        CHECK_MESSAGE(std::abs(ratio - s.a0_predicted) <= 0.05 * std::abs(s.a0_predicted), "ratio " << ratio);
    }
}

TEST_CASE("axisymmetric branch keeps the mode-2 symmetry") {
    const BranchResult b = continue_branch(3, 2, 3, 0.01);
    CHECK(b.points.size() == 4);
    for (std::size_t i = 1; i < b.points.size(); ++i) {
        const auto& c = b.points[i].domain.coefficients();
        for (std::size_t l = 1; l < c.size(); l += 2) CHECK(std::abs(c[l]) <= 1e-10);
        CHECK(b.points[i].residual_norm <= 1e-8);
        CHECK(b.points[i].amplitude > b.points[i - 1].amplitude);
    }
}

TEST_CASE("branch arguments") {
    CHECK_THROWS_AS(continue_branch(3, 1, 2, 0.01), InvalidArgument);
    CHECK_THROWS_AS(continue_branch(3, 2, 2, 0.1), InvalidArgument);
    CHECK_THROWS_AS(continue_branch(3, 2, 2, 0), InvalidArgument);
    CHECK_THROWS_AS(continue_branch(4, 2, 2, 0.01), UnsupportedDimension);
}
