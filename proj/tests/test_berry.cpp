#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pointline/pointline.hpp"

using namespace pointline;

namespace {

double expected_latitude(double th) { return wrap_pi(-kPi * (1.0 - std::cos(th))); }

}  // namespace

TEST_CASE("sphere map") {
    auto U = sphere_to_characteristic({0.0, 0.0});
    CHECK(std::abs(U.alpha - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(U.beta) < 1e-15);
    auto f = classify(U);
    CHECK(f.weyl);
    CHECK(f.separated);

    U = sphere_to_characteristic({kPi / 2, 0.0});
    CHECK(std::abs(U.alpha) < 1e-15);
    CHECK(std::abs(U.beta - 1.0) < 1e-15);

    U = sphere_to_characteristic({kPi / 2, kPi / 2});
    CHECK(std::abs(U.beta - cplx(0, 1)) < 1e-15);
    CHECK(classify(U).parity);

    std::mt19937_64 rng(61);
    for (int n = 0; n < 100; ++n) CHECK(classify(sphere_to_characteristic(oracle::random_sphere(rng))).weyl);
}

TEST_CASE("eigenstate coefficients") {
    auto c = eigenstate_coefficients({0.0, 1.0});
    CHECK(std::abs(c.c_plus - 1.0) < 1e-15);
    CHECK(std::abs(c.c_minus) < 1e-15);
    c = eigenstate_coefficients({kPi, 0.3});
    CHECK(std::abs(c.c_plus) < 1e-15);
    CHECK(std::abs(c.c_minus - std::polar(1.0, 0.3 + kPi / 2)) < 1e-15);
    c = eigenstate_coefficients({kPi / 2, 0.0});
    CHECK(std::abs(c.c_plus - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(c.c_minus - cplx(0, std::sqrt(0.5))) < 1e-15);
}

TEST_CASE("connection and curvature") {
    CHECK(connection({0.0, 0.0}).second == 0.0);
    CHECK(connection({kPi / 2, 0.0}).second == doctest::Approx(-0.5));
    CHECK(connection({kPi, 0.0}).second == doctest::Approx(-1.0));
    CHECK(connection({1.0, 2.0}).first == 0.0);
    CHECK(curvature(kPi / 2) == doctest::Approx(-0.5));
    CHECK(curvature(0.0) == 0.0);

    // Total flux through the sphere: midpoint rule in theta.
    const int n = 20000;
    double flux = 0.0;
    for (int j = 0; j < n; ++j) flux += curvature((j + 0.5) * kPi / n) * (kPi / n) * kTwoPi;
    CHECK(flux == doctest::Approx(-kTwoPi).epsilon(1e-8));

    // F = dA: d(A_phi)/dtheta by central difference.
    for (double th : {0.3, 1.0, 2.5}) {
        const double h = 1e-6;
        const double d = (connection({th + h, 0}).second - connection({th - h, 0}).second) / (2 * h);
        CHECK(d == doctest::Approx(curvature(th)).epsilon(1e-8));
    }
}

TEST_CASE("latitude loops") {
    const auto eq = latitude_loop(kPi / 2, 2000);
    CHECK(eq.vertices.size() == 2001);
    CHECK(std::abs(std::abs(loop_phase(eq, PhaseMethod::discrete)) - kPi) < 1e-6);
    CHECK(std::abs(std::abs(loop_phase(eq, PhaseMethod::analytic)) - kPi) < 1e-6);

    for (double th : {kPi / 6, kPi / 3, 2 * kPi / 3}) {
        const auto loop = latitude_loop(th, 2000);
        CHECK(oracle::angle_diff(loop_phase(loop, PhaseMethod::discrete), expected_latitude(th)) < 1e-6);
        // The geodesic chords cut the circle; the analytic value follows the chords.
        CHECK(oracle::angle_diff(loop_phase(loop, PhaseMethod::analytic), expected_latitude(th)) < 1e-5);
    }
}

TEST_CASE("constant loop") {
    SphereLoop loop{{{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}}};
    CHECK(loop_phase(loop, PhaseMethod::discrete) == 0.0);
    CHECK(loop_phase(loop, PhaseMethod::analytic) == 0.0);
}

TEST_CASE("Stokes on spherical triangles") {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> th(0.1, 2.6), ph(0.0, kTwoPi);
    int used = 0;
    for (int n = 0; n < 60; ++n) {
        const SpherePoint a{th(rng), ph(rng)}, b{th(rng), ph(rng)}, c{th(rng), ph(rng)};
        const auto va = oracle::cart(a), vb = oracle::cart(b), vc = oracle::cart(c);
        if (va.dot(vb) < -0.9 || vb.dot(vc) < -0.9 || vc.dot(va) < -0.9) continue;
        // Keep the south pole well outside the triangle and away from the edges.
        const double omega = oracle::triangle_solid_angle(va, vb, vc);
        const Eigen::Vector3d south(0, 0, -1);
        const double with_south = std::abs(oracle::triangle_solid_angle(va, vb, south)) +
                                  std::abs(oracle::triangle_solid_angle(vb, vc, south)) +
                                  std::abs(oracle::triangle_solid_angle(vc, va, south));
        if (std::abs(with_south - std::abs(omega)) < 1e-3) continue;
        try {
            const auto loop = geodesic_polygon({a, b, c}, 1);
            const double got = loop_phase(loop, PhaseMethod::analytic);
            CHECK(oracle::angle_diff(got, -0.5 * omega) < 1e-8);
            ++used;
        } catch (const GaugeSingularity&) {
        }
    }
    CHECK(used > 30);
}

// Circle of angular radius r around the axis at (theta, phi) = (t0, p0), n segments.
SphereLoop tilted_circle(double t0, double p0, double r, int n) {
    const Eigen::Vector3d c = oracle::cart({t0, p0});
    const Eigen::Vector3d e1 = c.unitOrthogonal(), e2 = c.cross(e1);
    SphereLoop loop;
    for (int j = 0; j <= n; ++j) {
        const double u = kTwoPi * double(j % n) / n;
        const Eigen::Vector3d v = std::cos(r) * c + std::sin(r) * (std::cos(u) * e1 + std::sin(u) * e2);
        loop.vertices.push_back({std::acos(std::clamp(v.z(), -1.0, 1.0)), std::atan2(v.y(), v.x())});
    }
    return loop;
}

TEST_CASE("discrete phase converges at least linearly") {
    const double r = 0.7;
    // Counterclockwise about the axis, which points away from the south pole.
    const double exact = wrap_pi(-kPi * (1.0 - std::cos(r)));
    double prev = INFINITY;
    for (int n : {25, 50, 100, 200, 400}) {
        const double err =
            oracle::angle_diff(loop_phase(tilted_circle(0.9, 0.4, r, n), PhaseMethod::discrete), exact);
        if (std::isfinite(prev)) CHECK(err <= 0.55 * prev);
        prev = err;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("discrete and analytic agree on geodesic polygons") {
    const std::vector<SpherePoint> corners{{0.6, 0.2}, {1.4, 1.9}, {2.0, 4.0}, {1.0, 5.0}};
    for (int n : {1, 3, 20}) {
        const auto loop = geodesic_polygon(corners, n);
        CHECK(oracle::angle_diff(loop_phase(loop, PhaseMethod::discrete),
                                 loop_phase(loop, PhaseMethod::analytic)) < 1e-10);
    }
}

TEST_CASE("discrete phase is gauge invariant") {
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> g(0.0, kTwoPi);
    const auto loop = latitude_loop(1.1, 300);
    std::vector<EigenstateCoefficients> chain;
    for (const auto& p : loop.vertices) chain.push_back(eigenstate_coefficients(p));
    chain.back() = chain.front();
    const double base = discrete_phase(chain);
    for (int trial = 0; trial < 10; ++trial) {
        auto gauged = chain;
        for (std::size_t j = 0; j + 1 < gauged.size(); ++j) {
            const cplx ph = std::polar(1.0, g(rng));
            gauged[j].c_plus *= ph;
            gauged[j].c_minus *= ph;
        }
        gauged.back() = gauged.front();
        CHECK(oracle::angle_diff(discrete_phase(gauged), base) < 1e-10);
    }
}

TEST_CASE("singular loops") {
    // Consecutive antipodal vertices.
    SphereLoop anti{{{0.5, 0.0}, {kPi - 0.5, kPi}, {1.0, 2.0}, {0.5, 0.0}}};
    CHECK_THROWS_AS(loop_phase(anti, PhaseMethod::discrete), GaugeSingularity);
    CHECK_THROWS_AS(loop_phase(anti, PhaseMethod::analytic), GaugeSingularity);

    // A great-circle edge through the south pole.
    SphereLoop south{{{2.5, 0.0}, {2.5, kPi * 0.999999999999}, {1.0, 1.0}, {2.5, 0.0}}};
    CHECK_THROWS_AS(loop_phase(south, PhaseMethod::analytic), GaugeSingularity);

    SphereLoop open{{{0.5, 0.0}, {0.6, 0.1}, {0.7, 0.3}}};
    CHECK_THROWS_AS(loop_phase(open, PhaseMethod::discrete), InvalidArgument);
    SphereLoop pole{{{0.0, 0.0}, {0.6, 0.1}, {0.7, 0.3}, {0.0, 0.0}}};
    CHECK_THROWS_AS(loop_phase(pole, PhaseMethod::analytic), InvalidArgument);
    SphereLoop two{{{0.5, 0.0}, {0.6, 0.1}, {0.5, 0.0}}};
    CHECK_THROWS_AS(loop_phase(two, PhaseMethod::discrete), InvalidArgument);
}

TEST_CASE("the sphere spectrum does not move") {
    std::mt19937_64 rng(64);
    BoxConfig cfg;
    cfg.k_max = 16.0;
    for (int n = 0; n < 20; ++n) {
        const auto s = box_spectrum(sphere_to_characteristic(oracle::random_sphere(rng)), cfg);
        REQUIRE(s.levels.size() == 10);
        for (std::size_t j = 0; j < s.levels.size(); ++j)
            CHECK(s.levels[j].k == doctest::Approx((j + 1) * kPi / 2).epsilon(1e-12));
    }
}
