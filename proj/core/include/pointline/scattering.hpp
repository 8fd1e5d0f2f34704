#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "pointline/params.hpp"

namespace pointline {

// Units: hbar^2 / 2m = 1, so E = k^2 on the line and E = -kappa^2 for bound states.
struct ScatteringAmplitudes {
    cplx r_l, t_l, r_r, t_r;
    double k = 0.0;
};

struct BoundState {
    double kappa = 0.0;
    double energy = 0.0;
    int multiplicity = 1;
    double eigenphase = 0.0;  // arg lambda in (0, pi)
};

struct BoundStates {
    std::vector<BoundState> states;
    // Eigenphases sitting at 0: zero-energy threshold states, not normalizable on the line.
    int threshold_count = 0;
};

enum class FilterClass { high_pass, low_pass, band_pass, all_pass, all_block, other };

std::string_view to_string(FilterClass c);

struct FilterProfile {
    std::vector<std::pair<double, double>> samples;  // (k, |t_r|^2)
    FilterClass classification = FilterClass::other;
};

ScatteringAmplitudes amplitudes_global(const CharacteristicMatrix& U, ScaleParameter L0,
                                       double k);
// Same formulas continued to complex k (used to locate bound-state poles).
ScatteringAmplitudes amplitudes_global(const CharacteristicMatrix& U, ScaleParameter L0,
                                       cplx k);
// Momentum-reversal companion: the formulas with q replaced by 1/q.
ScatteringAmplitudes amplitudes_global_reversed(const CharacteristicMatrix& U,
                                                ScaleParameter L0, double k);

ScatteringAmplitudes amplitudes_transfer(const TransferMatrix& L, double k);

BoundStates bound_states(const CharacteristicMatrix& U, ScaleParameter L0);

FilterProfile filter_profile(const CharacteristicMatrix& U, ScaleParameter L0,
                             const std::vector<double>& k_grid);

// max(| |r|^2 + |t|^2 - 1 |, cross-orthogonality) over both sides.
double unitarity_defect(const ScatteringAmplitudes& s);

}  // namespace pointline
