#include "pointline/symmetry.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pointline {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Distance below which an angle counts as sitting on a pole of tan / cot.
constexpr double kPoleTol = 1e-12;

void require_parity(const CharacteristicMatrix& U, DiscreteTransform t) {
    if (!classify(U).parity)
        throw NotInSubfamily(std::string(to_string(t)) +
                             " is defined on the parity torus only (sigma_1 U sigma_1 != U)");
}

}  // namespace

std::string_view to_string(DiscreteTransform t) {
    switch (t) {
        case DiscreteTransform::P: return "P";
        case DiscreteTransform::T: return "T";
        case DiscreteTransform::PT: return "PT";
        case DiscreteTransform::Q: return "Q";
        case DiscreteTransform::R: return "R";
        case DiscreteTransform::S: return "S";
        case DiscreteTransform::Iplus: return "Iplus";
        case DiscreteTransform::Iminus: return "Iminus";
        case DiscreteTransform::C: return "C";
    }
    return "?";
}

DiscreteTransform parse_transform(std::string_view name) {
    for (auto t : {DiscreteTransform::P, DiscreteTransform::T, DiscreteTransform::PT,
                   DiscreteTransform::Q, DiscreteTransform::R, DiscreteTransform::S,
                   DiscreteTransform::Iplus, DiscreteTransform::Iminus, DiscreteTransform::C})
        if (to_string(t) == name) return t;
    throw InvalidArgument("unknown transform '" + std::string(name) +
                          "' (expected P, T, PT, Q, R, S, Iplus, Iminus or C)");
}

Mat2 transform_matrix(DiscreteTransform t) {
    switch (t) {
        case DiscreteTransform::P: return pauli(1);
        case DiscreteTransform::Q: return pauli(2);
        case DiscreteTransform::R: return pauli(3);
        default:
            throw Unsupported(std::string(to_string(t)) + " has no boundary-vector action");
    }
}

CharacteristicMatrix apply_transform(const CharacteristicMatrix& U, DiscreteTransform t) {
    const Mat2 m = U.matrix();
    const Mat2 s1 = pauli(1);
    switch (t) {
        case DiscreteTransform::P:
        case DiscreteTransform::Q:
        case DiscreteTransform::R: {
            const Mat2 s = transform_matrix(t);
            return characteristic_from_matrix(s * m * s);
        }
        case DiscreteTransform::T: return characteristic_from_matrix(m.transpose());
        case DiscreteTransform::PT: return characteristic_from_matrix(s1 * m.transpose() * s1);
        case DiscreteTransform::S: return characteristic_from_matrix(m.adjoint());
        case DiscreteTransform::Iplus:
            // theta+ -> theta+ + pi: multiply the P+ component by -1.
            require_parity(U, t);
            return characteristic_from_matrix(-s1 * m);
        case DiscreteTransform::Iminus:
            require_parity(U, t);
            return characteristic_from_matrix(m * s1);
        case DiscreteTransform::C: {
            require_parity(U, t);
            const DiscreteTransform seq[] = {DiscreteTransform::R, DiscreteTransform::Iminus,
                                             DiscreteTransform::Iplus, DiscreteTransform::S};
            return apply_transforms(U, seq);
        }
    }
    throw InvalidArgument("unknown transform");
}

CharacteristicMatrix apply_transforms(const CharacteristicMatrix& U,
                                      std::span<const DiscreteTransform> ts) {
    CharacteristicMatrix out = U;
    for (auto t : ts) out = apply_transform(out, t);
    return out;
}

CouplingPair coupling_constants(double theta_plus, double theta_minus) {
    const double tp = wrap_2pi(theta_plus);
    const double tm = wrap_2pi(theta_minus);
    CouplingPair c;
    // tan has its pole at pi (approached from below); cot at 0 (approached from above).
    c.g_plus = std::abs(tp - kPi) < kPoleTol ? kInf : std::tan(0.5 * tp);
    c.g_minus = (tm < kPoleTol || kTwoPi - tm < kPoleTol) ? kInf : 1.0 / std::tan(0.5 * tm);
    return c;
}

CouplingPair coupling_transform(const CouplingPair& c, DiscreteTransform t) {
    const double gp = c.g_plus, gm = c.g_minus;
    switch (t) {
        case DiscreteTransform::P: return {gp, gm};
        case DiscreteTransform::R:
        case DiscreteTransform::Q: return {1.0 / gm, 1.0 / gp};
        case DiscreteTransform::Iplus: return {-1.0 / gp, gm};
        case DiscreteTransform::Iminus: return {gp, -1.0 / gm};
        case DiscreteTransform::S: return {-gp, -gm};
        case DiscreteTransform::C: return {gm, gp};
        case DiscreteTransform::T:
        case DiscreteTransform::PT:
            throw Unsupported(std::string(to_string(t)) + " has no action on coupling constants");
    }
    throw InvalidArgument("unknown transform");
}

BoundaryVectors transform_boundary_vectors(const BoundaryVectors& bv, DiscreteTransform t) {
    const Mat2 s = transform_matrix(t);
    return {s * bv.phi, s * bv.dphi};
}

bool same_coupling(double a, double b, double tol) {
    if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace pointline
