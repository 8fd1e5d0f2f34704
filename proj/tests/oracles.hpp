#pragma once

// Reference computations written directly from the boundary condition
// (U - I) Phi + i L0 (U + I) Phi' = 0, independent of the library's own formulas.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pointline/pointline.hpp"

namespace oracle {

using pointline::cplx;
using pointline::kPi;
using pointline::Mat2;
using pointline::Vec2;

inline pointline::CharacteristicMatrix random_U(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> xi(0.0, kPi);
    std::normal_distribution<double> g;
    const double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    const double n = std::sqrt(a * a + b * b + c * c + d * d);
    return pointline::make_characteristic(xi(rng), cplx(a / n, b / n), cplx(c / n, d / n));
}

inline pointline::SpherePoint random_sphere(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), ph(0.0, 2 * kPi);
    return {std::acos(u(rng)), ph(rng)};
}

struct Amps {
    cplx r_l, t_l, r_r, t_r;
};

// Plane waves on each side, boundary condition solved as a 2x2 linear system.
inline Amps scattering(const pointline::CharacteristicMatrix& Uc, double L0, double k) {
    const Mat2 U = Uc.matrix();
    const Mat2 A = U - Mat2::Identity();
    const Mat2 B = cplx(0, 1) * L0 * (U + Mat2::Identity());
    const cplx ik(0, k);
    Amps out;
    {
        // x<0: e^{ikx} + r e^{-ikx}; x>0: t e^{ikx}. Unknowns (t, r).
        // Phi = (t, 1 + r), Phi' = (ik t, -ik (1 - r)).
        Mat2 M;
        Vec2 rhs;
        for (int row = 0; row < 2; ++row) {
            M(row, 0) = A(row, 0) + B(row, 0) * ik;
            M(row, 1) = A(row, 1) + B(row, 1) * ik;
            rhs(row) = -(A(row, 1) - B(row, 1) * ik);
        }
        const Vec2 x = M.lu().solve(rhs);
        out.t_l = x(0);
        out.r_l = x(1);
    }
    {
        // x>0: e^{-ikx} + r e^{ikx}; x<0: t e^{-ikx}. Unknowns (r, t).
        // Phi = (1 + r, t), Phi' = (ik (r - 1), ik t).
        Mat2 M;
        Vec2 rhs;
        for (int row = 0; row < 2; ++row) {
            M(row, 0) = A(row, 0) + B(row, 0) * ik;
            M(row, 1) = A(row, 1) + B(row, 1) * ik;
            rhs(row) = -(A(row, 0) - B(row, 0) * ik);
        }
        const Vec2 x = M.lu().solve(rhs);
        out.r_r = x(0);
        out.t_r = x(1);
    }
    return out;
}

// Outer solution data (phi(0), inward phi'(0)) for a wall at distance l.
struct Edge {
    double p, d;
};
inline Edge dirichlet(double k, double l) { return {std::sin(k * l), -k * std::cos(k * l)}; }
inline Edge neumann(double k, double l) { return {std::cos(k * l), k * std::sin(k * l)}; }

// Complex boundary determinant for Dirichlet / Neumann walls.
inline cplx box_det(const pointline::CharacteristicMatrix& Uc, double L0, Edge plus, Edge minus) {
    const Mat2 U = Uc.matrix();
    Mat2 P = Mat2::Zero(), D = Mat2::Zero();
    P(0, 0) = plus.p, P(1, 1) = minus.p;
    D(0, 0) = plus.d, D(1, 1) = minus.d;
    const Mat2 M = (U - Mat2::Identity()) * P + cplx(0, 1) * L0 * (U + Mat2::Identity()) * D;
    return M.determinant();
}

// Real secular function obtained by expanding the determinant above.
inline double box_G(const pointline::CharacteristicMatrix& U, double L0, Edge pl, Edge mi) {
    const double s = std::sin(U.xi), c = std::cos(U.xi);
    const double aR = U.alpha.real(), aI = U.alpha.imag();
    return pl.p * mi.p * (c - aR) - L0 * pl.p * mi.d * (s + aI) - L0 * pl.d * mi.p * (s - aI) -
           L0 * L0 * pl.d * mi.d * (c + aR);
}

// Ring of circumference 2l: explicit equation multiplied through by k L0.
inline double ring_F(const pointline::CharacteristicMatrix& U, double L0, double l, double k,
                     int s) {
    const double kl0 = k * L0;
    const double sx = std::sin(U.xi), cx = std::cos(U.xi), aR = U.alpha.real();
    return 2 * sx * kl0 * std::cos(2 * k * l) +
           (cx * (kl0 * kl0 + 1) + aR * (kl0 * kl0 - 1)) * std::sin(2 * k * l) +
           2 * s * U.beta.imag() * kl0;
}

// Ring determinant: A cos kx + B sin kx on (0, l), C cos kx + D sin kx on (-l, 0).
inline cplx ring_det(const pointline::CharacteristicMatrix& Uc, double L0, double l, double k,
                     int s) {
    const Mat2 U = Uc.matrix();
    const Mat2 A = U - Mat2::Identity();
    const Mat2 B = cplx(0, 1) * L0 * (U + Mat2::Identity());
    Eigen::Matrix4cd M = Eigen::Matrix4cd::Zero();
    // Phi = (A_, C_), Phi' = (k B_, -k D_) in the unknowns (A_, B_, C_, D_).
    for (int r = 0; r < 2; ++r) {
        M(r, 0) = A(r, 0);
        M(r, 1) = B(r, 0) * k;
        M(r, 2) = A(r, 1);
        M(r, 3) = -B(r, 1) * k;
    }
    const double c = std::cos(k * l), sn = std::sin(k * l);
    // phi(l) = s phi(-l), phi'(l) = s phi'(-l)
    M(2, 0) = c, M(2, 1) = sn, M(2, 2) = -s * c, M(2, 3) = s * sn;
    M(3, 0) = -k * sn, M(3, 1) = k * c, M(3, 2) = -s * k * sn, M(3, 3) = -s * k * c;
    return M.determinant();
}

// Sign-change roots of f on (lo, hi] with a fine grid and bisection; simple roots only.
inline std::vector<double> bisect_roots(const std::function<double(double)>& f, double lo,
                                        double hi, double step) {
    std::vector<double> out;
    double a = lo, fa = f(a);
    for (double b = lo + step; a < hi; b += step) {
        b = std::min(b, hi);
        const double fb = f(b);
        if (fa == 0.0) out.push_back(a);
        else if (fa * fb < 0.0) {
            double x0 = a, x1 = b, f0 = fa;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (x0 + x1);
                if (m <= x0 || m >= x1) break;
                const double fm = f(m);
                if ((fm < 0) == (f0 < 0)) x0 = m, f0 = fm;
                else x1 = m;
            }
            out.push_back(0.5 * (x0 + x1));
        }
        a = b, fa = fb;
    }
    return out;
}

// Solid angle of a spherical triangle (Van Oosterom & Strackee).
inline double triangle_solid_angle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                                   const Eigen::Vector3d& c) {
    const double num = a.dot(b.cross(c));
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    return 2.0 * std::atan2(num, den);
}

inline Eigen::Vector3d cart(const pointline::SpherePoint& p) {
    return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi),
            std::cos(p.theta)};
}

inline double angle_diff(double a, double b) { return std::abs(pointline::wrap_pi(a - b)); }

}  // namespace oracle
