#pragma once

// Every box problem here is brought to the form
//     Q(k) = diag(e^{2 i psi_j(k)}) * Ut  has eigenvalue 1,
// where psi_j is the polar angle of (phi, L0 phi') for the outer solution on component j
// and Ut is a fixed unitary. The psi_j increase with k (and decrease with kappa on the
// negative-energy side), so eigenphase winding counts roots exactly.

#include <vector>

#include <Eigen/Dense>

namespace pointline::detail {

enum class WallForm { D, N };

struct Component {
    WallForm form;
    double length;
};

struct PhaseProblem {
    std::vector<Component> comps;
    Eigen::MatrixXcd Ut;
    double L0 = 1.0;
};

enum class Side { positive, negative };  // x = k, or x = kappa with E = -kappa^2

struct PhaseSample {
    double x = 0.0;
    double S = 0.0;  // continuous sum of eigenphases
    double W = 0.0;  // sum of eigenphases reduced to [0, 2 pi)
};

double psi(WallForm f, double length, double L0, double x, Side side);
PhaseSample sample(const PhaseProblem& p, double x, Side side);
// |det(Q - I)| / 2^n, zero exactly at roots.
double residual(const PhaseProblem& p, double x, Side side);
// Number of roots in (a, b].
double count(const PhaseSample& a, const PhaseSample& b, Side side);

// Roots in (lo, hi], repeated according to multiplicity.
std::vector<double> find_roots(const PhaseProblem& p, double lo, double hi, double step, Side side,
                               double root_tol);

// Eigenvalue-1 multiplicity of Q in the k -> 0 limit.
int zero_modes(const PhaseProblem& p);

// Roots on the negative side beyond kappa = x, counted against the kappa -> infinity limit.
int tail_count(const PhaseProblem& p, double x);

}  // namespace pointline::detail
