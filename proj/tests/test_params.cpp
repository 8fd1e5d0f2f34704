#include <doctest.h>

#include <limits>

#include "oracles.hpp"

using namespace pointline;

namespace {

const cplx I(0.0, 1.0);

bool near(const Mat2& a, const Mat2& b, double tol) { return matrix_distance(a, b) <= tol; }

}  // namespace

TEST_CASE("make_characteristic: identity, free point, norm violation") {
    CHECK(near(make_characteristic(0, 1, 0).matrix(), Mat2::Identity(), 1e-15));
    CHECK(near(make_characteristic(kPi / 2, 0, -I).matrix(), pauli(1), 1e-15));
    CHECK_THROWS_AS(make_characteristic(0, 1 + 1e-6, 0), NormViolation);
}

TEST_CASE("make_characteristic: renormalizes small drift and folds xi into [0, pi)") {
    const auto U = make_characteristic(0.3, cplx(0.6, 0.0) * (1 + 1e-11), 0.8);
    CHECK(std::abs(std::norm(U.alpha) + std::norm(U.beta) - 1) < 1e-15);

    const auto V = make_characteristic(0.3 + kPi, cplx(0.6, 0.1), cplx(0.0, std::sqrt(1 - 0.37)));
    CHECK(V.xi == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(V.alpha.real() == doctest::Approx(-0.6));
    const auto W = make_characteristic(0.3, -cplx(0.6, 0.1), -cplx(0.0, std::sqrt(1 - 0.37)));
    CHECK(near(V.matrix(), W.matrix(), 1e-15));

    const auto N = make_characteristic(-0.2, cplx(0, 1), 0);
    CHECK(N.xi >= 0.0);
    CHECK(N.xi < kPi);
}

TEST_CASE("characteristic_from_matrix inverts matrix()") {
    std::mt19937_64 rng(11);
    for (int j = 0; j < 200; ++j) {
        const auto U = oracle::random_U(rng);
        const auto V = characteristic_from_matrix(U.matrix());
        CHECK(near(U.matrix(), V.matrix(), 1e-14));
        CHECK(V.xi == doctest::Approx(U.xi).epsilon(1e-12));
    }
    Mat2 bad;
    bad << 1, 1, 0, 1;
    CHECK_THROWS_AS(characteristic_from_matrix(bad), NormViolation);
}

TEST_CASE("ScaleParameter rejects non-positive lengths") {
    CHECK_THROWS_AS(ScaleParameter{0.0}, InvalidArgument);
    CHECK_THROWS_AS(ScaleParameter{-1.0}, InvalidArgument);
    CHECK_THROWS_AS(ScaleParameter{std::numeric_limits<double>::infinity()}, InvalidArgument);
    CHECK(ScaleParameter(2.5).value() == 2.5);
}

TEST_CASE("to_transfer: free point gives the identity") {
    const auto L = to_transfer(free_point(), ScaleParameter(1.0));
    CHECK(L.chi == doctest::Approx(0.0));
    CHECK(L.a == doctest::Approx(1.0));
    CHECK(L.d == doctest::Approx(1.0));
    CHECK(std::abs(L.b) < 1e-15);
    CHECK(std::abs(L.c) < 1e-15);
}

TEST_CASE("to_transfer: delta interaction is a jump in phi'") {
    for (double L0v : {1.0, 0.5, 3.0}) {
        for (double tp : {0.4, 1.3, 2.0, 4.0}) {
            const double g = std::tan(tp / 2);
            const auto L = to_transfer(parity_point(tp, kPi), ScaleParameter(L0v));
            const Mat2 m = L.matrix();
            Mat2 want;
            want << 1, 0, -2 * g / L0v, 1;
            CHECK(near(m, want, 1e-12));
        }
    }
}

TEST_CASE("to_transfer: separated interactions have no transfer matrix") {
    CHECK_THROWS_AS(to_transfer(make_characteristic(0.4, std::polar(1.0, 0.3), 0), ScaleParameter(1)),
                    SeparatedInteraction);
    CHECK_THROWS_AS(to_transfer(identity_point(), ScaleParameter(1)), SeparatedInteraction);
}

TEST_CASE("to_transfer connects the boundary values of an admitted solution") {
    // Build an admitted (Phi, Phi') from ker of the boundary matrix and check the transfer law.
    std::mt19937_64 rng(5);
    for (int j = 0; j < 100; ++j) {
        const auto Uc = oracle::random_U(rng);
        if (std::abs(Uc.beta) < 1e-3) continue;
        const double L0 = 0.7;
        const auto L = to_transfer(Uc, ScaleParameter(L0));
        CHECK(std::abs(L.a * L.d - L.b * L.c - 1.0) < 1e-12);
        // Left data (phi, phi') = (1, 0.3): right data by Lambda.
        const Vec2 left(1.0, 0.3);
        const Vec2 right = L.matrix() * left;
        BoundaryVectors bv;
        bv.phi = Vec2(right(0), left(0));
        bv.dphi = Vec2(right(1), -left(1));
        CHECK(boundary_residual(Uc, ScaleParameter(L0), bv) < 1e-12);
    }
}

TEST_CASE("from_transfer: worked examples") {
    CHECK(near(from_transfer(make_transfer(0, 1, 0, 0, 1, ScaleParameter(1))).matrix(), pauli(1),
               1e-14));
    const auto d = from_transfer(make_transfer(0, 1, 0, -2, 1, ScaleParameter(1)));
    CHECK(near(d.matrix(), parity_point(kPi / 2, kPi).matrix(), 1e-14));
    const auto e = from_transfer(make_transfer(0, 1, -2, 0, 1, ScaleParameter(1)));
    CHECK(near(e.matrix(), parity_point(0, kPi / 2).matrix(), 1e-14));
    const auto [tp, tm] = chiral_angles(e, 1);
    CHECK(std::abs(tp) < 1e-12);
    CHECK(tm == doctest::Approx(kPi / 2));
}

TEST_CASE("transfer round trip, 1000 samples") {
    std::mt19937_64 rng(2024);
    int tested = 0;
    for (int j = 0; j < 1000; ++j) {
        const auto U = oracle::random_U(rng);
        if (std::abs(U.beta) <= 1e-6) continue;
        const double L0 = 0.2 + 0.1 * (j % 17);
        const auto back = from_transfer(to_transfer(U, ScaleParameter(L0)));
        CHECK(near(back.matrix(), U.matrix(), 1e-10));
        ++tested;
    }
    CHECK(tested > 990);
}

TEST_CASE("make_transfer validates the determinant") {
    CHECK_THROWS_AS(make_transfer(0, 1, 1, 1, 1, ScaleParameter(1)), InvalidArgument);
    const auto L = make_transfer(4.0, 2, 1, 1, 1, ScaleParameter(1));
    CHECK(L.chi < kPi);
    CHECK(L.a == doctest::Approx(-2.0));
}

TEST_CASE("classify: worked examples") {
    const auto f = classify(free_point());
    CHECK(f.parity);
    CHECK(f.time_reversal);
    CHECK(f.pt);
    CHECK(f.weyl);
    CHECK_FALSE(f.separated);
    CHECK(f.free_point);

    const auto s = classify(self_dual_point(kPi / 3));
    CHECK(s.self_dual);
    CHECK(s.parity);
    CHECK(s.q);
    CHECK(s.separated);
    CHECK(s.time_reversal);
    CHECK(s.pt);
    CHECK_FALSE(s.weyl);

    const auto r = classify(make_characteristic(0, std::polar(1.0, kPi / 4), 0));
    CHECK(r.separated);
    CHECK(r.time_reversal);
    // alpha_I = sin(pi/4) != 0, so sigma_1 U^T sigma_1 swaps the diagonal: not PT-invariant.
    CHECK_FALSE(r.pt);
    CHECK_FALSE(r.parity);
    CHECK(classify(make_characteristic(0.4, 0.6, cplx(0.3, std::sqrt(1 - 0.45)))).pt);

    const auto id = classify(identity_point());
    CHECK(id.weyl);
    CHECK(id.weyl_isolated);
    const auto mid = classify(self_dual_point(kPi));
    CHECK(mid.weyl_isolated);
}

TEST_CASE("classify: self-dual samples satisfy P, Q and R; phase-free stability") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(0, 2 * kPi);
    for (int j = 0; j < 50; ++j) {
        const auto f = classify(self_dual_point(th(rng)));
        CHECK(f.self_dual);
        CHECK(f.parity);
        CHECK(f.q);
        CHECK(f.separated);
    }
    for (int j = 0; j < 100; ++j) {
        const auto U = oracle::random_U(rng);
        const auto V = characteristic_from_matrix(U.matrix());
        const auto a = classify(U), b = classify(V);
        CHECK(a.parity == b.parity);
        CHECK(a.weyl == b.weyl);
        CHECK(a.separated == b.separated);
    }
}

TEST_CASE("chiral_angles: examples and inverse construction") {
    const auto [tp, tm] = chiral_angles(free_point(), 1);
    CHECK(std::abs(tp) < 1e-14);
    CHECK(tm == doctest::Approx(kPi));

    Mat2 m = Mat2::Zero();
    m(0, 0) = I * std::polar(1.0, kPi / 2);
    m(1, 1) = I * std::polar(1.0, -kPi / 2);
    const auto [fp, fm] = chiral_angles(characteristic_from_matrix(m), 3);
    CHECK(fp == doctest::Approx(kPi));
    CHECK(std::abs(oracle::angle_diff(fm, 0.0)) < 1e-14);

    CHECK_THROWS_AS(chiral_angles(make_characteristic(0, std::polar(1.0, kPi / 4), 0), 1),
                    NotInSubfamily);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> th(0, 2 * kPi);
    for (int axis = 1; axis <= 3; ++axis) {
        for (int j = 0; j < 50; ++j) {
            const double a = th(rng), b = th(rng);
            const auto U = from_chiral(a, b, axis);
            const auto [x, y] = chiral_angles(U, axis);
            CHECK(oracle::angle_diff(x, a) < 1e-12);
            CHECK(oracle::angle_diff(y, b) < 1e-12);
        }
    }
}

TEST_CASE("decompose_WR: examples and random reconstruction") {
    const auto [W, R] = decompose_WR(free_point());
    CHECK(near(W.matrix(), pauli(1), 1e-14));
    CHECK(near(R.matrix(), Mat2::Identity(), 1e-14));

    const auto U = make_characteristic(kPi / 2, cplx(0, 0.6), 0.8);
    const auto [W2, R2] = decompose_WR(U);
    CHECK(std::abs(W2.alpha - cplx(0, 0.6)) < 1e-14);
    CHECK(std::abs(W2.beta - cplx(0.8, 0)) < 1e-14);
    CHECK(near(R2.matrix(), Mat2::Identity(), 1e-14));

    std::mt19937_64 rng(99);
    for (int j = 0; j < 300; ++j) {
        const auto V = oracle::random_U(rng);
        const auto [w, r] = decompose_WR(V);
        CHECK(near(w.matrix() * r.matrix(), V.matrix(), 1e-12));
        CHECK(classify(w).weyl);
        CHECK(classify(r).separated);
        CHECK(w.alpha.imag() >= 0.0);
    }

    const auto [Wi, Ri] = decompose_WR(self_dual_point(kPi));
    CHECK(near(Wi.matrix(), -Mat2::Identity(), 1e-14));
    CHECK(near(Ri.matrix(), Mat2::Identity(), 1e-14));
}

TEST_CASE("eigenphases: examples and diagonalization") {
    const auto e0 = eigenphases(identity_point());
    CHECK(e0.mu_plus == 0.0);
    CHECK(e0.mu_minus == 0.0);
    CHECK(near(e0.V, Mat2::Identity(), 0));

    const auto U = make_characteristic(kPi / 2, cplx(std::cos(kPi / 4), 0.3),
                                       cplx(0.0, std::sqrt(0.5 - 0.09)));
    const auto e = eigenphases(U);
    CHECK(e.mu_plus == doctest::Approx(3 * kPi / 4));
    CHECK(e.mu_minus == doctest::Approx(kPi / 4));

    const auto sd = eigenphases(self_dual_point(1.1));
    CHECK(sd.mu_plus == doctest::Approx(1.1));
    CHECK(sd.mu_minus == doctest::Approx(1.1));
    CHECK(near(sd.V, Mat2::Identity(), 0));

    std::mt19937_64 rng(21);
    for (int j = 0; j < 300; ++j) {
        const auto V = oracle::random_U(rng);
        const auto d = eigenphases(V);
        Mat2 D = Mat2::Zero();
        D(0, 0) = std::polar(1.0, d.mu_plus);
        D(1, 1) = std::polar(1.0, d.mu_minus);
        CHECK(near(d.V * V.matrix() * d.V.adjoint(), D, 1e-12));
        CHECK(near(d.V * d.V.adjoint(), Mat2::Identity(), 1e-13));
        CHECK(std::cos(d.rho) == doctest::Approx(V.alpha.real()).epsilon(1e-12));
    }
}

TEST_CASE("rescale_L0: fixed points, identity rescale and bound-state invariance") {
    for (const auto& U : {make_characteristic(kPi / 2, cplx(0, 0.3), cplx(0.4, std::sqrt(1 - 0.25))),
                          identity_point(), self_dual_point(kPi)}) {
        for (double f : {0.3, 2.0, 7.0}) {
            const auto V = rescale_L0(U, ScaleParameter(1.0), ScaleParameter(f));
            CHECK(near(V.matrix(), U.matrix(), 1e-14));
        }
    }

    std::mt19937_64 rng(4);
    const auto U = oracle::random_U(rng);
    CHECK(near(rescale_L0(U, ScaleParameter(1.3), ScaleParameter(1.3)).matrix(), U.matrix(), 0));

    // Self-dual point: tan(theta'/2) / L0' = tan(theta/2) / L0.
    for (double th : {0.3, 1.0, 2.5}) {
        const auto V = rescale_L0(self_dual_point(th), ScaleParameter(1.0), ScaleParameter(2.0));
        const double thp = eigenphases(V).mu_plus;
        CHECK(std::tan(thp / 2) / 2.0 == doctest::Approx(std::tan(th / 2)).epsilon(1e-13));
    }
}

TEST_CASE("rescale_L0 composes") {
    std::mt19937_64 rng(77);
    for (int j = 0; j < 200; ++j) {
        const auto U = oracle::random_U(rng);
        const auto a = rescale_L0(rescale_L0(U, ScaleParameter(1), ScaleParameter(2.5)),
                                  ScaleParameter(2.5), ScaleParameter(0.4));
        const auto b = rescale_L0(U, ScaleParameter(1), ScaleParameter(0.4));
        CHECK(near(a.matrix(), b.matrix(), 1e-10));
    }
}

TEST_CASE("boundary vectors of the free point are continuity conditions") {
    BoundaryVectors bv;
    bv.phi = Vec2(0.7, 0.7);
    bv.dphi = Vec2(0.2, -0.2);  // phi'(0+) = phi'(0-) = 0.2
    CHECK(boundary_residual(free_point(), ScaleParameter(1), bv) < 1e-15);
    bv.phi = Vec2(0.7, 0.6);
    CHECK(boundary_residual(free_point(), ScaleParameter(1), bv) > 1e-3);
}
