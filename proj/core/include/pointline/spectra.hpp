#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pointline/params.hpp"

namespace pointline {

enum class Boundary { Dirichlet, Neumann, Periodic, Antiperiodic };
// both: a symmetric and an antisymmetric root merged into one degenerate level.
enum class Sector { symmetric, antisymmetric, none, both };
enum class SpectrumRoute { parity_sectors, separated_halves, general };

std::string_view to_string(Boundary b);
std::string_view to_string(Sector s);
std::string_view to_string(SpectrumRoute r);
Boundary parse_boundary(std::string_view name);

// Outer walls at x = l_plus and x = -l_minus; for the ring the two ends are identified.
struct BoxConfig {
    Boundary boundary = Boundary::Dirichlet;
    double l_plus = 1.0;
    double l_minus = 1.0;
    ScaleParameter L0{1.0};
    double k_max = 20.0;
    double root_tol = 1e-12;

    void validate() const;
    bool symmetric() const;
};

struct Level {
    double k = 0.0;
    int multiplicity = 1;
    Sector sector = Sector::none;
};

struct SpectrumResult {
    std::vector<Level> levels;
    // kappa of negative-energy box states (E = -kappa^2), repeated by multiplicity.
    std::vector<double> negative_levels;
    // Solutions exactly at E = 0; never counted as levels.
    int threshold_modes = 0;
    // Neumann box whose boundary condition admits the constant function.
    bool constant_mode = false;
    SpectrumRoute route = SpectrumRoute::general;
};

// Roots per independent channel (parity sector, half-box, or the single coupled problem).
struct ChannelSpectra {
    SpectrumRoute route = SpectrumRoute::general;
    std::vector<Sector> labels;
    std::vector<std::vector<double>> roots;
};

SpectrumResult box_spectrum(const CharacteristicMatrix& U, const BoxConfig& cfg);
// Same, but always through the coupled equation (no sector or half-box split).
SpectrumResult box_spectrum_general(const CharacteristicMatrix& U, const BoxConfig& cfg);
ChannelSpectra channel_spectra(const CharacteristicMatrix& U, const BoxConfig& cfg);

// Normalized |spectral determinant| at k of the coupled equation; vanishes at eigenvalues.
double spectral_residual(const CharacteristicMatrix& U, const BoxConfig& cfg, double k);
// Same at k = i kappa.
double spectral_residual_negative(const CharacteristicMatrix& U, const BoxConfig& cfg,
                                  double kappa);

struct Degeneracy {
    double k = 0.0;
    int multiplicity = 1;
};
std::vector<Degeneracy> degeneracy_report(const SpectrumResult& s, double tol);

struct SusyReport {
    bool is_witten_point = false;
    bool wavefunctions_vanish_at_origin = false;
};
SusyReport susy_check(const CharacteristicMatrix& U);

// ---- spectral flow ----

// Curve s in [0, 1] -> U(s).
struct ParameterPath {
    std::function<CharacteristicMatrix(double)> at;
    bool closed = false;
    std::string name;
};

// (theta0 + 2 pi s, theta0 + pi + 2 pi s): parallel to the self-dual circle, through the free
// point when theta0 = 0.
ParameterPath diagonal_cycle(double theta0 = 0.0);
ParameterPath theta_plus_cycle(double theta_minus, double theta0 = 0.0);
ParameterPath theta_minus_cycle(double theta_plus, double theta0 = 0.0);
// Straight line on the parity torus.
ParameterPath torus_segment(double tp0, double tm0, double tp1, double tm1);
ParameterPath constant_path(const CharacteristicMatrix& U);
ParameterPath reversed(const ParameterPath& p);
ParameterPath concatenate(const ParameterPath& a, const ParameterPath& b);

struct Track {
    Sector sector = Sector::none;
    int channel = 0;
    std::vector<double> k;  // one entry per sample; NaN while the level is below k = 0
    int exit_sample = -1;   // sample at which it last dropped below k = 0, if it ends there
};

struct SpectralFlow {
    std::vector<double> s;
    std::vector<CharacteristicMatrix> path;
    std::vector<Track> tracks;  // tracks[i] starts as level i of the initial spectrum
    // Final position of initial level i among the final levels, -1 if it ends below k = 0.
    std::vector<int> permutation;
    // Same, counted within the level's own channel.
    std::vector<int> channel_start;
    std::vector<int> channel_end;
    std::vector<Sector> channel_labels;
    bool closed = false;
    int refinements = 0;
};

SpectralFlow spectral_flow(const ParameterPath& path, const BoxConfig& cfg, int n_levels,
                           int n_steps);

// Index map restricted to the tracks of one channel, in initial order.
std::vector<int> channel_permutation(const SpectralFlow& f, int channel);
// Channel carrying the given label, -1 if none.
int find_channel(const SpectralFlow& f, Sector sector);
// s with map[i] = i - s wherever i - s >= 0 and map[i] = -1 for i < s, if such s exists.
std::optional<int> uniform_shift(const std::vector<int>& map);
// second after first; -1 propagates.
std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second);

}  // namespace pointline
