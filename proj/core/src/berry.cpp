#include "pointline/berry.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace pointline {

namespace {

using Vec3 = Eigen::Vector3d;

constexpr double kOverlapTol = 1e-12;
constexpr double kPoleTol = 1e-12;

Vec3 cartesian(const SpherePoint& p) {
    return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi),
            std::cos(p.theta)};
}

SpherePoint from_cartesian(const Vec3& v) {
    const Vec3 u = v.normalized();
    return {std::acos(std::clamp(u.z(), -1.0, 1.0)), wrap_2pi(std::atan2(u.y(), u.x()))};
}

bool same_point(const SpherePoint& a, const SpherePoint& b) {
    return (cartesian(a) - cartesian(b)).norm() < kPoleTol;
}

void validate(const SphereLoop& loop) {
    const auto& v = loop.vertices;
    if (v.size() < 2 || !same_point(v.front(), v.back()))
        throw InvalidArgument("sphere loop must be closed (first vertex equal to the last)");
    for (const auto& p : v)
        if (!(p.theta >= 0.0 && p.theta <= kPi) || !std::isfinite(p.phi))
            throw InvalidArgument("sphere vertex out of range (theta in [0, pi])");
}

bool constant_loop(const SphereLoop& loop) {
    for (const auto& p : loop.vertices)
        if (!same_point(p, loop.vertices.front())) return false;
    return true;
}

// Integral of A along the shorter great-circle arc from a to b.
double segment_integral(const Vec3& a, const Vec3& b) {
    const double c = std::clamp(a.dot(b), -1.0, 1.0);
    const double omega = std::atan2(a.cross(b).norm(), c);
    if (omega == 0.0) return 0.0;
    if (kPi - omega < 1e-9) throw GaugeSingularity("antipodal consecutive vertices");
    const Vec3 w = (b - a * c).normalized();

    // z(u) = R cos(u - u0) on the arc; the connection blows up where z = -1.
    const double R = std::hypot(a.z(), w.z());
    const double u0 = std::atan2(w.z(), a.z());
    double zmin = std::min(a.z(), b.z());
    const double ustar = wrap_2pi(u0 + kPi);
    if (ustar <= omega) zmin = std::min(zmin, -R);
    if (1.0 + zmin < 1e-12) throw GaugeSingularity("loop passes through the south pole");

    // Normalized arc parameter t in [0, 1]: the quadrature's error test is not scale-free, and
    // short arcs would otherwise never meet a relative tolerance.
    auto f = [&](double t) {
        const double u = omega * t;
        const Vec3 p = a * std::cos(u) + w * std::sin(u);
        const Vec3 dp = -a * std::sin(u) + w * std::cos(u);
        return -omega * (p.x() * dp.y() - p.y() * dp.x()) / (2.0 * (1.0 + p.z()));
    };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 10, 1e-13);
}

}  // namespace

CharacteristicMatrix sphere_to_characteristic(const SpherePoint& p) {
    return make_characteristic(kPi / 2, cplx(0.0, std::cos(p.theta)),
                               std::polar(std::sin(p.theta), p.phi));
}

EigenstateCoefficients eigenstate_coefficients(const SpherePoint& p) {
    return {std::cos(0.5 * p.theta), std::polar(std::sin(0.5 * p.theta), p.phi + kPi / 2)};
}

std::pair<double, double> connection(const SpherePoint& p) {
    const double s = std::sin(0.5 * p.theta);
    return {0.0, -s * s};
}

double curvature(double theta) { return -0.5 * std::sin(theta); }

double discrete_phase(const std::vector<EigenstateCoefficients>& chain) {
    cplx prod(1.0, 0.0);
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
        const auto& a = chain[j];
        const auto& b = chain[j + 1];
        const cplx ov = std::conj(a.c_plus) * b.c_plus + std::conj(a.c_minus) * b.c_minus;
        if (std::abs(ov) < kOverlapTol)
            throw GaugeSingularity("vanishing overlap between consecutive vertices " +
                                   std::to_string(j) + " and " + std::to_string(j + 1));
        prod *= ov / std::abs(ov);
    }
    return wrap_pi(-std::arg(prod));
}

double loop_phase(const SphereLoop& loop, PhaseMethod method) {
    validate(loop);
    if (constant_loop(loop)) return 0.0;
    if (loop.vertices.size() < 4)
        throw InvalidArgument("a loop needs at least three distinct vertices");
    for (const auto& p : loop.vertices)
        if (p.theta < kPoleTol || kPi - p.theta < kPoleTol)
            throw InvalidArgument("loop vertices may not sit on a pole");

    if (method == PhaseMethod::discrete) {
        std::vector<EigenstateCoefficients> chain;
        chain.reserve(loop.vertices.size());
        for (const auto& p : loop.vertices) chain.push_back(eigenstate_coefficients(p));
        // Closing vertex is the same point as the first; reuse its coefficients exactly.
        chain.back() = chain.front();
        return discrete_phase(chain);
    }

    // Neumaier summation of the segment integrals.
    double sum = 0.0, comp = 0.0;
    for (std::size_t j = 0; j + 1 < loop.vertices.size(); ++j) {
        const double v =
            segment_integral(cartesian(loop.vertices[j]), cartesian(loop.vertices[j + 1]));
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return wrap_pi(sum + comp);
}

SphereLoop latitude_loop(double theta0, int n) {
    if (n < 3) throw InvalidArgument("latitude loop needs at least 3 segments");
    SphereLoop loop;
    for (int j = 0; j <= n; ++j) loop.vertices.push_back({theta0, kTwoPi * double(j % n) / n});
    return loop;
}

SphereLoop geodesic_polygon(const std::vector<SpherePoint>& corners, int n) {
    if (corners.size() < 3) throw InvalidArgument("polygon needs at least 3 corners");
    if (n < 1) throw InvalidArgument("edge subdivision must be positive");
    SphereLoop loop;
    const std::size_t m = corners.size();
    for (std::size_t c = 0; c < m; ++c) {
        const Vec3 a = cartesian(corners[c]);
        const Vec3 b = cartesian(corners[(c + 1) % m]);
        const double omega = std::atan2(a.cross(b).norm(), a.dot(b));
        if (kPi - omega < 1e-9) throw GaugeSingularity("antipodal polygon corners");
        const Vec3 w = omega == 0.0 ? a : Vec3((b - a * std::cos(omega)).normalized());
        for (int j = 0; j < n; ++j) {
            const double u = omega * double(j) / n;
            loop.vertices.push_back(
                j == 0 ? corners[c] : from_cartesian(a * std::cos(u) + w * std::sin(u)));
        }
    }
    loop.vertices.push_back(corners.front());
    return loop;
}

}  // namespace pointline
