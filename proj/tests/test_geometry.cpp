#include "doctest.h"

#include <cmath>
#include <random>

#include "exfb/diagnostics.hpp"
#include "exfb/errors.hpp"
#include "exfb/geometry.hpp"
#include "oracles.hpp"

using namespace exfb;
using oracle::pi;

namespace {

StarDomain random_planar(std::mt19937_64& rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    std::vector<double> c{1.0, 0, 0};
    for (int k = 2; k <= 5; ++k) {
        c.push_back(u(rng) / k);
        c.push_back(u(rng) / k);
    }
    return StarDomain(2, c);
}

StarDomain random_axial(std::mt19937_64& rng, double amp) {
    std::uniform_real_distribution<double> u(-amp, amp);
    std::vector<double> c{1.0, 0};
    for (int l = 2; l <= 6; ++l) c.push_back(u(rng) / l);
    return StarDomain(3, c);
}

} // namespace

TEST_CASE("unit circle grid") {
    const BoundaryGrid g = boundary_grid(StarDomain::ball(2), 64);
    double total = 0;
    for (int i = 0; i < g.size(); ++i) {
        CHECK(g.curvature_normalized[i] == doctest::Approx(-1).epsilon(1e-14));
        CHECK(g.curvature_mean[i] == doctest::Approx(1).epsilon(1e-14));
        CHECK(g.tracefree_sq[i] == 0);
        CHECK(std::abs(g.normals[i].norm() - 1) <= 1e-12);
        total += g.weights[i];
    }
    CHECK(std::abs(total - 2 * pi) <= 1e-13);
}

TEST_CASE("unit sphere grid") {
    const BoundaryGrid g = boundary_grid(StarDomain::ball(3), 32);
    double total = 0;
    for (int i = 0; i < g.size(); ++i) {
        CHECK(std::abs(g.curvature_normalized[i] + 1) <= 1e-13);
        CHECK(std::abs(g.curvature_mean[i] - 2) <= 1e-13);
        CHECK(std::abs(g.tracefree_sq[i]) <= 1e-13);
        CHECK(std::abs(g.normals[i].norm() - 1) <= 1e-12);
        total += g.weights[i];
    }
    CHECK(std::abs(total - 4 * pi) <= 1e-12);
}

TEST_CASE("ball of radius R has normalized curvature -1/R") {
    for (int N : {2, 3}) {
        const BoundaryGrid g = boundary_grid(StarDomain::ball(N, 2.5), 32);
        for (int i = 0; i < g.size(); ++i) {
            CHECK(std::abs(g.curvature_normalized[i] + 0.4) <= 1e-13);
            CHECK(std::abs(g.curvature_mean[i] - (N - 1) * 0.4) <= 1e-13);
        }
    }
}

TEST_CASE("planar weights sum to the dense arc length") {
    const StarDomain d(2, {1, 0, 0, 0.1, 0});
    const double L = oracle::arc_length([&](double t) { return oracle::planar_radius(d.coefficients(), t); });
    const BoundaryGrid g = boundary_grid(d, 128);
    double total = 0;
    for (double w : g.weights) total += w;
    CHECK(std::abs(total - L) <= 1e-10);
    CHECK(std::abs(surface_measure(d) - L) <= 1e-10);
}

TEST_CASE("volume") {
    CHECK(std::abs(volume(StarDomain::ball(2)) - pi) <= 1e-14);
    CHECK(std::abs(volume(StarDomain::ball(3)) - 4 * pi / 3) <= 1e-14);
    const StarDomain d(2, {1, 0, 0, 0, 0, 0.2, 0});
    const double A = oracle::planar_area([&](double t) { return oracle::planar_radius(d.coefficients(), t); });
    CHECK(std::abs(volume(d) - A) <= 1e-10);

    const StarDomain a(3, {1, 0.02, 0.1, -0.03});
    const double V = oracle::axial_volume([&](double p) { return oracle::axial_radius(a.coefficients(), p); });
    CHECK(std::abs(volume(a) - V) <= 1e-10);
}

TEST_CASE("surface measure") {
    CHECK(std::abs(surface_measure(StarDomain::ball(2)) - 2 * pi) <= 1e-13);
    CHECK(std::abs(surface_measure(StarDomain::ball(3)) - 4 * pi) <= 1e-13);
    const StarDomain a(3, {1, 0, 0.1});
    const double S = oracle::surface_of_revolution([&](double p) { return oracle::axial_radius(a.coefficients(), p); });
    CHECK(std::abs(surface_measure(a) - S) <= 1e-10);
}

TEST_CASE("unit ball dimension constants") {
    CHECK(unit_ball_volume(2) == doctest::Approx(pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4 * pi / 3));
    CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2));
    CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi));
    CHECK(unit_sphere_area(2) == doctest::Approx(2 * pi));
}

TEST_CASE("curvature matches finite differences of the embedding") {
    const StarDomain d(2, {1, 0, 0, 0.08, -0.03, 0.04, 0.02});
    const BoundaryGrid g = boundary_grid(d, 64);
    auto R = [&](double t) { return oracle::planar_radius(d.coefficients(), t); };
    for (int i = 0; i < g.size(); i += 5)
        CHECK(std::abs(-g.curvature_normalized[i] - oracle::planar_curvature(R, g.nodes[i])) <= 1e-8);

    const StarDomain a(3, {1, 0, 0.1, 0.05, -0.04});
    const BoundaryGrid ga = boundary_grid(a, 40);
    auto Ra = [&](double p) { return oracle::axial_radius(a.coefficients(), p); };
    for (int i = 0; i < ga.size(); i += 3) {
        const double phi = ga.nodes[i];
        const auto [k1, k2] = oracle::axial_curvatures(Ra, phi);
        CHECK(std::abs(ga.curvature_mean[i] - (k1 + k2)) <= 1e-7);
        CHECK(std::abs(ga.tracefree_sq[i] - 0.5 * (k1 - k2) * (k1 - k2)) <= 1e-7);
    }
}

TEST_CASE("Minkowski moments of balls") {
    const MinkowskiMoments s = minkowski_moments(boundary_grid(StarDomain::ball(3), 32));
    CHECK(std::abs(s.m0 - 4 * pi) <= 1e-12);
    CHECK(std::abs(s.m1 - 8 * pi) <= 1e-12);
    CHECK(std::abs(s.m2 - 16 * pi) <= 1e-12);
    CHECK(std::abs(s.mA) <= 1e-12);
    const MinkowskiMoments c = minkowski_moments(boundary_grid(StarDomain::ball(2), 64));
    CHECK(std::abs(c.m0 - 2 * pi) <= 1e-12);
    CHECK(std::abs(c.m1 - 2 * pi) <= 1e-12);
    CHECK(std::abs(c.mA) <= 1e-12);
}

TEST_CASE("Minkowski 0 cross-checks the volume") {
    const StarDomain a(3, {1, 0, 0.1});
    CHECK(std::abs(minkowski_moments(boundary_grid(a, 64)).m0 - 3 * volume(a)) <= 1e-9);
}

TEST_CASE("Minkowski formulas on random domains") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const StarDomain d = random_planar(rng, 0.15);
        const BoundaryGrid g = boundary_grid(d, 256);
        const MinkowskiMoments m = minkowski_moments(g);
        CHECK(std::abs(m.m0 - 2 * volume(d)) <= 1e-9);
        std::vector<double> xh(g.size());
        for (int i = 0; i < g.size(); ++i) xh[i] = -g.support[i] * g.curvature_normalized[i];
        CHECK(std::abs(integrate(g, xh) - surface_measure(d)) <= 1e-9);
    }
    for (int trial = 0; trial < 10; ++trial) {
        const StarDomain d = random_axial(rng, 0.15);
        const BoundaryGrid g = boundary_grid(d, 128);
        const MinkowskiMoments m = minkowski_moments(g);
        const double S = surface_measure(d), V = volume(d);
        const double intH = integrate(g, g.curvature_mean);
        CHECK(std::abs(m.m0 - 3 * V) <= 1e-9);
        CHECK(std::abs(m.m1 - 2 * S) <= 1e-8);
        CHECK(std::abs(m.m2 - 2 * intH - 2 * m.mA) <= 1e-7);
        // Weighted Cauchy-Schwarz lower bound on the trace-free moment.
        CHECK(m.mA >= (2 * S * S / (3 * V) - intH) - 1e-8);
    }
}

TEST_CASE("quadrature converges geometrically under refinement") {
    const StarDomain d(3, {1, 0, 0.12, -0.05, 0.03});
    auto gap = [&](int n) {
        const BoundaryGrid g = boundary_grid(d, n);
        const MinkowskiMoments m = minkowski_moments(g);
        return std::abs(m.m2 - 2 * integrate(g, g.curvature_mean) - 2 * m.mA);
    };
    double prev = gap(8);
    for (int n = 16; n <= 128; n *= 2) {
        const double cur = gap(n);
        CHECK((prev <= 1e-11 || cur <= prev / 10 || cur <= 1e-11));
        prev = cur;
    }
    CHECK(prev <= 1e-11);

    const StarDomain p(2, {1, 0, 0, 0.1, 0.05, 0, 0.04});
    auto pgap = [&](int n) { return std::abs(minkowski_moments(boundary_grid(p, n)).m0 - 2 * volume(p)); };
    double pp = pgap(8);
    for (int n = 16; n <= 128; n *= 2) {
        const double cur = pgap(n);
        CHECK((pp <= 1e-11 || cur <= pp / 10 || cur <= 1e-11));
        pp = cur;
    }
}

TEST_CASE("translate and recenter") {
    const StarDomain moved = translate(StarDomain::ball(2), {0.3, 0});
    CHECK(moved.center()[0] == doctest::Approx(0.3));
    const StarDomain back = recenter(moved);
    CHECK(std::abs(back.coefficients()[0] - 1) <= 1e-10);
    for (std::size_t i = 1; i < back.coefficients().size(); ++i) CHECK(std::abs(back.coefficients()[i]) <= 1e-10);

    // A unit circle seen from an off-center point.
    const StarDomain off(2, {1, 0, 0}, {0, 0});
    const StarDomain shifted = translate(off, {0.2, -0.1});
    CHECK(shifted.coefficients().size() > 3);
    const StarDomain round = recenter(shifted);
    CHECK(std::abs(round.coefficients()[0] - 1) <= 1e-10);
    for (std::size_t i = 1; i < round.coefficients().size(); ++i) CHECK(std::abs(round.coefficients()[i]) <= 1e-10);

    const StarDomain d(2, {1, 0, 0, 0.1, 0});
    CHECK(translate(d, {0, 0}) == d);
}

TEST_CASE("recenter preserves the point set") {
    const StarDomain d(2, {1, 0.05, 0});
    const StarDomain r = recenter(d);
    const auto& c = r.coefficients();
    CHECK(std::abs(c[1]) <= 1e-10);
    CHECK(std::abs(c[2]) <= 1e-10);
    auto A = [&](double t) { return oracle::planar_radius(d.coefficients(), t); };
    auto B = [&](double t) { return oracle::planar_radius(c, t); };
    CHECK(oracle::hausdorff(A, d.center(), B, r.center()) < 1e-8);
    CHECK(oracle::hausdorff(B, r.center(), A, d.center()) < 1e-8);
}

TEST_CASE("axisymmetric recenter") {
    const StarDomain d(3, {1, 0.04, 0.1});
    const StarDomain r = recenter(d);
    CHECK(std::abs(r.coefficients()[1]) <= 1e-10);
    CHECK(std::abs(volume(r) - volume(d)) <= 1e-10);
    CHECK(std::abs(surface_measure(r) - surface_measure(d)) <= 1e-10);
    CHECK(r.center()[2] != 0);
}

TEST_CASE("invalid domains") {
    CHECK_THROWS_AS(StarDomain(2, {1, 0}), InvalidDomain);
    CHECK_THROWS_AS(StarDomain(2, {}), InvalidDomain);
    CHECK_THROWS_AS(StarDomain(3, {1, 0, 2}), InvalidDomain);
    CHECK_THROWS_AS(StarDomain(4, {1}), UnsupportedDimension);
    CHECK_THROWS_AS(StarDomain(2, {1, 0, 0}, {0}), InvalidDomain);
    CHECK_THROWS_AS(boundary_grid(StarDomain::ball(2), 4), InvalidArgument);
    CHECK_THROWS_AS(translate(StarDomain::ball(3), {0.1, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(translate(StarDomain::ball(2), {1.5, 0}), InvalidDomain);
    // A strongly non-convex star domain loses the graph property about a shifted point.
    CHECK_THROWS_AS(translate(StarDomain(2, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0.4, 0}), {0.55, 0}), InvalidDomain);
}

TEST_CASE("amplitude guard warns on large deformations") {
    std::vector<std::string> seen;
    const WarningSink old = set_warning_sink([&](const std::string& m) { seen.push_back(m); });
    StarDomain(2, {1, 0, 0, 0.3, 0});
    CHECK(seen.empty());
    StarDomain(2, {1, 0, 0, 0.6, 0});
    CHECK(seen.size() == 1);
    set_warning_sink(old);
}

TEST_CASE("trimmed drops negligible trailing modes") {
    const StarDomain d(3, {1, 0, 0.1, 1e-17, 0});
    CHECK(trimmed(d).coefficients().size() == 3);
}
