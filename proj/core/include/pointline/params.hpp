#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "pointline/errors.hpp"

namespace pointline {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Pauli matrices; index 0 is the identity.
Mat2 pauli(int i);

// Reduce an angle into [0, 2pi).
double wrap_2pi(double a);
// Reduce an angle into (-pi, pi].
double wrap_pi(double a);

// Length scale L0 > 0 entering the boundary condition.
class ScaleParameter {
public:
    explicit ScaleParameter(double L0);
    double value() const { return L0_; }

private:
    double L0_;
};

// U = e^{i xi} [[alpha, beta], [-conj(beta), conj(alpha)]], xi in [0, pi).
struct CharacteristicMatrix {
    double xi = 0.0;
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};

    Mat2 matrix() const;
};

// Lambda = e^{i chi} [[a, b L0], [c / L0, d]], ad - bc = 1, chi in [0, pi).
// b and c are stored dimensionless against L0.
struct TransferMatrix {
    double chi = 0.0;
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
    ScaleParameter L0{1.0};

    // Maps (phi(0-), phi'(0-)) to (phi(0+), phi'(0+)).
    Mat2 matrix() const;
};

// Phi = (phi(0+), phi(0-)), dphi = (phi'(0+), -phi'(0-)).
struct BoundaryVectors {
    Vec2 phi = Vec2::Zero();
    Vec2 dphi = Vec2::Zero();
};

struct SubfamilyFlags {
    bool parity = false;          // Omega_P
    bool time_reversal = false;   // Omega_T
    bool pt = false;              // Omega_PT
    bool weyl = false;            // Omega_W, sphere or one of +-I
    bool weyl_isolated = false;   // U = +I or U = -I
    bool separated = false;       // Omega_R
    bool q = false;               // Omega_Q
    bool self_dual = false;       // Omega_SD
    bool free_point = false;      // U = sigma_1
};

struct EigenphaseDecomposition {
    double mu_plus = 0.0;
    double mu_minus = 0.0;
    double rho = 0.0;
    // Rows are the conjugated eigenvectors: V U V^dagger = diag(e^{i mu+}, e^{i mu-}).
    Mat2 V = Mat2::Identity();
};

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kClassifyTol = 1e-10;

CharacteristicMatrix make_characteristic(double xi, cplx alpha, cplx beta);
// Any 2x2 unitary (to 1e-9) in canonical form.
CharacteristicMatrix characteristic_from_matrix(const Mat2& U);

CharacteristicMatrix identity_point();
CharacteristicMatrix free_point();
CharacteristicMatrix self_dual_point(double theta);

TransferMatrix make_transfer(double chi, double a, double b, double c, double d,
                             ScaleParameter L0);
TransferMatrix to_transfer(const CharacteristicMatrix& U, ScaleParameter L0);
CharacteristicMatrix from_transfer(const TransferMatrix& L);

SubfamilyFlags classify(const CharacteristicMatrix& U, double tol = kClassifyTol);

// (vartheta+, vartheta-) in [0, 2pi) with U = e^{i t+} P+_axis + e^{i t-} P-_axis.
std::pair<double, double> chiral_angles(const CharacteristicMatrix& U, int axis);
CharacteristicMatrix from_chiral(double theta_plus, double theta_minus, int axis);
// Axis-1 shorthand: the parity torus U(theta+, theta-).
CharacteristicMatrix parity_point(double theta_plus, double theta_minus);

// (U_W, U_R) with U_W U_R = U.
std::pair<CharacteristicMatrix, CharacteristicMatrix> decompose_WR(
    const CharacteristicMatrix& U);

EigenphaseDecomposition eigenphases(const CharacteristicMatrix& U);

CharacteristicMatrix rescale_L0(const CharacteristicMatrix& U, ScaleParameter L0,
                                ScaleParameter L0_new);

// Norm of (U - I) Phi + i L0 (U + I) Phi'.
double boundary_residual(const CharacteristicMatrix& U, ScaleParameter L0,
                         const BoundaryVectors& bv);

double matrix_distance(const Mat2& A, const Mat2& B);

}  // namespace pointline
