#pragma once

#include <span>
#include <string>
#include <string_view>

#include "pointline/params.hpp"

namespace pointline {

enum class DiscreteTransform { P, T, PT, Q, R, S, Iplus, Iminus, C };

std::string_view to_string(DiscreteTransform t);
DiscreteTransform parse_transform(std::string_view name);

// g+ = tan(theta+/2), g- = cot(theta-/2); poles give signed infinities.
struct CouplingPair {
    double g_plus = 0.0;
    double g_minus = 0.0;
};

CharacteristicMatrix apply_transform(const CharacteristicMatrix& U, DiscreteTransform t);
// Applies ts[0] first, then ts[1], ...
CharacteristicMatrix apply_transforms(const CharacteristicMatrix& U,
                                      std::span<const DiscreteTransform> ts);

CouplingPair coupling_constants(double theta_plus, double theta_minus);
CouplingPair coupling_transform(const CouplingPair& c, DiscreteTransform t);

// Only P, Q, R act on boundary vectors.
BoundaryVectors transform_boundary_vectors(const BoundaryVectors& bv, DiscreteTransform t);
// The Pauli matrix carried by P, Q or R.
Mat2 transform_matrix(DiscreteTransform t);

// Equality of couplings treating +inf and -inf as the same point.
bool same_coupling(double a, double b, double tol);

}  // namespace pointline
