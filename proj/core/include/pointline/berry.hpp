#pragma once

#include <utility>
#include <vector>

#include "pointline/params.hpp"

namespace pointline {

// Polar coordinates on the scale-invariant sphere: alpha_I = cos(theta), beta = sin(theta) e^{i phi}.
struct SpherePoint {
    double theta = 0.0;
    double phi = 0.0;
};

// Closed: first vertex equals the last.
struct SphereLoop {
    std::vector<SpherePoint> vertices;
};

// Amplitudes on the two fixed orthonormal half-line modes of the Dirichlet box eigenfunction.
struct EigenstateCoefficients {
    cplx c_plus;
    cplx c_minus;
};

enum class PhaseMethod { analytic, discrete };

CharacteristicMatrix sphere_to_characteristic(const SpherePoint& p);
EigenstateCoefficients eigenstate_coefficients(const SpherePoint& p);

// (A_theta, A_phi) of A = -sin^2(theta/2) dphi.
std::pair<double, double> connection(const SpherePoint& p);
// dtheta ^ dphi component of F = dA.
double curvature(double theta);

// Geometric phase in (-pi, pi].
double loop_phase(const SphereLoop& loop, PhaseMethod method);
// Same discrete product with the coefficient vectors supplied by the caller (any gauge).
double discrete_phase(const std::vector<EigenstateCoefficients>& closed_chain);

// n + 1 vertices (closed) around the circle of constant theta0, counterclockwise in phi.
SphereLoop latitude_loop(double theta0, int n);
// Great-circle polygon through the given corners, each edge subdivided into n pieces.
SphereLoop geodesic_polygon(const std::vector<SpherePoint>& corners, int n);

}  // namespace pointline
