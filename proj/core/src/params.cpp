#include "pointline/params.hpp"

#include <cmath>
#include <string>

namespace pointline {

namespace {

constexpr cplx I_{0.0, 1.0};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Mat2 projector(int axis, int sign) {
    return 0.5 * (Mat2::Identity() + double(sign) * pauli(axis));
}

}  // namespace

Mat2 pauli(int i) {
    Mat2 s;
    switch (i) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -I_, I_, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw InvalidArgument("pauli index must be 0..3, got " + std::to_string(i));
    }
    return s;
}

double wrap_2pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

double wrap_pi(double a) {
    double r = wrap_2pi(a);
    if (r > kPi) r -= kTwoPi;
    return r;
}

ScaleParameter::ScaleParameter(double L0) : L0_(L0) {
    if (!(L0 > 0.0) || !std::isfinite(L0))
        throw InvalidArgument("L0 must be positive and finite, got " + std::to_string(L0));
}

Mat2 CharacteristicMatrix::matrix() const {
    Mat2 m;
    m << alpha, beta, -std::conj(beta), std::conj(alpha);
    return std::polar(1.0, xi) * m;
}

Mat2 TransferMatrix::matrix() const {
    const double l0 = L0.value();
    Mat2 m;
    m << a, b * l0, c / l0, d;
    return std::polar(1.0, chi) * m;
}

CharacteristicMatrix make_characteristic(double xi, cplx alpha, cplx beta) {
    if (!std::isfinite(xi) || !finite(alpha) || !finite(beta))
        throw InvalidArgument("characteristic matrix parameters must be finite");
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(n2 - 1.0) >= 1e-9)
        throw NormViolation("|alpha|^2 + |beta|^2 = " + std::to_string(n2) + ", expected 1");
    const double n = std::sqrt(n2);
    alpha /= n;
    beta /= n;

    xi = wrap_2pi(xi);
    if (xi >= kPi) {
        xi -= kPi;
        alpha = -alpha;
        beta = -beta;
    }
    return {xi, alpha, beta};
}

CharacteristicMatrix characteristic_from_matrix(const Mat2& U) {
    if (!U.allFinite()) throw InvalidArgument("matrix has non-finite entries");
    const double err = (U.adjoint() * U - Mat2::Identity()).cwiseAbs().maxCoeff();
    if (err >= 1e-9) throw NormViolation("matrix is not unitary (error " + std::to_string(err) + ")");

    const double xi = 0.5 * std::arg(U.determinant());
    const Mat2 M = std::polar(1.0, -xi) * U;
    const cplx alpha = 0.5 * (M(0, 0) + std::conj(M(1, 1)));
    const cplx beta = 0.5 * (M(0, 1) - std::conj(M(1, 0)));
    return make_characteristic(xi, alpha, beta);
}

CharacteristicMatrix identity_point() { return {0.0, 1.0, 0.0}; }

CharacteristicMatrix free_point() { return {kPi / 2, 0.0, -I_}; }

CharacteristicMatrix self_dual_point(double theta) {
    return make_characteristic(theta, 1.0, 0.0);
}

TransferMatrix make_transfer(double chi, double a, double b, double c, double d,
                             ScaleParameter L0) {
    if (!std::isfinite(chi) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
        !std::isfinite(d))
        throw InvalidArgument("transfer matrix entries must be finite");
    const double det = a * d - b * c;
    if (std::abs(det - 1.0) >= 1e-9)
        throw InvalidArgument("transfer matrix needs ad - bc = 1, got " + std::to_string(det));
    const double s = 1.0 / std::sqrt(det);
    a *= s, b *= s, c *= s, d *= s;

    chi = wrap_2pi(chi);
    if (chi >= kPi) {
        chi -= kPi;
        a = -a, b = -b, c = -c, d = -d;
    }
    TransferMatrix L{chi, a, b, c, d, L0};
    return L;
}

TransferMatrix to_transfer(const CharacteristicMatrix& U, ScaleParameter L0) {
    const double nb = std::abs(U.beta);
    if (nb < 1e-12)
        throw SeparatedInteraction("beta = 0: the interaction separates the half-lines and has no "
                                   "transfer matrix");
    const double s = std::sin(U.xi), c = std::cos(U.xi);
    const double aR = U.alpha.real(), aI = U.alpha.imag();
    // (i / conj(beta)) * real matrix; i / conj(beta) = (i beta / |beta|) / |beta|.
    double a = (s - aI) / nb;
    double b = -(c + aR) / nb;
    double cc = (c - aR) / nb;
    double d = (s + aI) / nb;
    const double det = a * d - b * cc;
    const double r = 1.0 / std::sqrt(det);
    return make_transfer(std::arg(I_ * U.beta), a * r, b * r, cc * r, d * r, L0);
}

CharacteristicMatrix from_transfer(const TransferMatrix& L) {
    // Dimensionless Lambda acting on (phi, L0 phi').
    Mat2 m;
    m << L.a, L.b, L.c, L.d;
    m *= std::polar(1.0, L.chi);

    // Columns: Phi +- i L0 Phi' for the solutions starting from (1, 0) and (0, 1) at 0-.
    Mat2 A, B;
    A << m(0, 0) + I_ * m(1, 0), m(0, 1) + I_ * m(1, 1), 1.0, -I_;
    B << m(0, 0) - I_ * m(1, 0), m(0, 1) - I_ * m(1, 1), 1.0, I_;
    return characteristic_from_matrix(B * A.inverse());
}

double matrix_distance(const Mat2& A, const Mat2& B) { return (A - B).cwiseAbs().maxCoeff(); }

SubfamilyFlags classify(const CharacteristicMatrix& Uc, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("classification tolerance must be positive");
    const Mat2 U = Uc.matrix();
    const Mat2 s1 = pauli(1), s2 = pauli(2), s3 = pauli(3), id = Mat2::Identity();

    SubfamilyFlags f;
    f.parity = matrix_distance(s1 * U * s1, U) <= tol;
    f.time_reversal = matrix_distance(U.transpose(), U) <= tol;
    f.pt = matrix_distance(s1 * U.transpose() * s1, U) <= tol;
    f.separated = matrix_distance(s3 * U * s3, U) <= tol;
    f.q = matrix_distance(s2 * U * s2, U) <= tol;
    f.self_dual = std::abs(U(0, 1)) <= tol && std::abs(U(1, 0)) <= tol &&
                  std::abs(U(0, 0) - U(1, 1)) <= tol;
    f.weyl_isolated = matrix_distance(U, id) <= tol || matrix_distance(U, -id) <= tol;
    const bool sphere =
        std::abs((U - id).determinant()) <= tol && std::abs((U + id).determinant()) <= tol;
    f.weyl = sphere || f.weyl_isolated;
    f.free_point = matrix_distance(U, s1) <= tol;
    return f;
}

std::pair<double, double> chiral_angles(const CharacteristicMatrix& Uc, int axis) {
    if (axis < 1 || axis > 3) throw InvalidArgument("chiral axis must be 1, 2 or 3");
    const Mat2 U = Uc.matrix();
    const Mat2 s = pauli(axis);
    if (matrix_distance(s * U * s, U) > kClassifyTol)
        throw NotInSubfamily("U is not invariant under sigma_" + std::to_string(axis) +
                             " conjugation");
    const cplx ep = (U * projector(axis, +1)).trace();
    const cplx em = (U * projector(axis, -1)).trace();
    return {wrap_2pi(std::arg(ep)), wrap_2pi(std::arg(em))};
}

CharacteristicMatrix from_chiral(double theta_plus, double theta_minus, int axis) {
    if (axis < 1 || axis > 3) throw InvalidArgument("chiral axis must be 1, 2 or 3");
    const Mat2 U = std::polar(1.0, theta_plus) * projector(axis, +1) +
                   std::polar(1.0, theta_minus) * projector(axis, -1);
    return characteristic_from_matrix(U);
}

CharacteristicMatrix parity_point(double theta_plus, double theta_minus) {
    return from_chiral(theta_plus, theta_minus, 1);
}

std::pair<CharacteristicMatrix, CharacteristicMatrix> decompose_WR(
    const CharacteristicMatrix& U) {
    const Mat2 m = U.matrix();
    if (matrix_distance(m, Mat2::Identity()) <= kAlgebraTol)
        return {identity_point(), identity_point()};
    if (matrix_distance(m, -Mat2::Identity()) <= kAlgebraTol)
        return {self_dual_point(kPi), identity_point()};

    const double rho = std::abs(U.alpha) == 0.0 ? 0.0 : std::arg(U.alpha) - kPi / 2;
    const double alpha_I = std::abs(U.alpha);
    const cplx beta_W = U.beta * std::polar(1.0, rho);

    const auto W = make_characteristic(kPi / 2, cplx(0.0, alpha_I), beta_W);
    const auto R = make_characteristic(U.xi - kPi / 2, std::polar(1.0, rho), 0.0);
    return {W, R};
}

EigenphaseDecomposition eigenphases(const CharacteristicMatrix& U) {
    const double aR = U.alpha.real(), aI = U.alpha.imag();
    const double h = std::hypot(aI, std::abs(U.beta));
    const double rho = std::atan2(h, aR);

    EigenphaseDecomposition e;
    e.rho = rho;
    e.mu_plus = wrap_2pi(U.xi + rho);
    e.mu_minus = wrap_2pi(U.xi - rho);
    if (h < 1e-14) return e;

    // Eigenvector of the SU(2) part for e^{i rho}; the partner is J conj(v).
    const cplx lam = std::polar(1.0, rho);
    Vec2 v1(U.beta, lam - U.alpha);
    Vec2 v2(std::conj(U.alpha) - lam, std::conj(U.beta));
    Vec2 v = v1.norm() >= v2.norm() ? v1 : v2;
    v.normalize();
    const Vec2 w(-std::conj(v(1)), std::conj(v(0)));

    Mat2 W;
    W.col(0) = v;
    W.col(1) = w;
    e.V = W.adjoint();
    return e;
}

CharacteristicMatrix rescale_L0(const CharacteristicMatrix& U, ScaleParameter L0,
                                ScaleParameter L0_new) {
    if (L0.value() == L0_new.value()) return U;
    const auto e = eigenphases(U);
    // Keep L0 cot(mu / 2) fixed; mu / 2 lies in [0, pi).
    auto move = [&](double mu) {
        const double h = 0.5 * mu;
        return 2.0 * std::atan2(L0_new.value() * std::sin(h), L0.value() * std::cos(h));
    };
    Mat2 D = Mat2::Zero();
    D(0, 0) = std::polar(1.0, move(e.mu_plus));
    D(1, 1) = std::polar(1.0, move(e.mu_minus));
    return characteristic_from_matrix(e.V.adjoint() * D * e.V);
}

double boundary_residual(const CharacteristicMatrix& Uc, ScaleParameter L0,
                         const BoundaryVectors& bv) {
    const Mat2 U = Uc.matrix();
    const Mat2 id = Mat2::Identity();
    return ((U - id) * bv.phi + I_ * L0.value() * (U + id) * bv.dphi).norm();
}

}  // namespace pointline
