#include "pointline/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phase_problem.hpp"

namespace pointline {

namespace {

using detail::Component;
using detail::PhaseProblem;
using detail::Side;
using detail::WallForm;

// Relative distance under which roots of different channels are one degenerate level.
constexpr double kMergeTol = 1e-10;
constexpr double kNegativeRange = 50.0;  // initial kappa window (0, 50 / L0]

struct Channel {
    PhaseProblem problem;
    Sector label = Sector::none;
};

struct Setup {
    SpectrumRoute route = SpectrumRoute::general;
    std::vector<Channel> channels;
};

WallForm wall_form(Boundary b) { return b == Boundary::Neumann ? WallForm::N : WallForm::D; }

Eigen::MatrixXcd scalar(double theta) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, theta);
    return m;
}

Setup general_setup(const CharacteristicMatrix& U, const BoxConfig& cfg) {
    Setup s;
    s.route = SpectrumRoute::general;
    const double L0 = cfg.L0.value();
    const Mat2 u = U.matrix();
    Channel ch;
    ch.problem.L0 = L0;
    if (cfg.boundary == Boundary::Dirichlet || cfg.boundary == Boundary::Neumann) {
        const WallForm f = wall_form(cfg.boundary);
        ch.problem.comps = {{f, cfg.l_plus}, {f, cfg.l_minus}};
        ch.problem.Ut = u;
    } else {
        // Ends ordered (0+, 0-, l, -l); the junction at +-l is s * sigma_1.
        const double sgn = cfg.boundary == Boundary::Periodic ? 1.0 : -1.0;
        Eigen::MatrixXcd tot = Eigen::MatrixXcd::Zero(4, 4);
        tot.block(0, 0, 2, 2) = u;
        tot(2, 3) = sgn;
        tot(3, 2) = sgn;
        // Even / odd modes about each edge midpoint.
        const double r = 1.0 / std::sqrt(2.0);
        Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(4, 4);
        T(0, 0) = r, T(2, 0) = r;
        T(0, 1) = r, T(2, 1) = -r;
        T(1, 2) = r, T(3, 2) = r;
        T(1, 3) = r, T(3, 3) = -r;
        const double h = 0.5 * cfg.l_plus;
        ch.problem.comps = {{WallForm::N, h}, {WallForm::D, h}, {WallForm::N, h}, {WallForm::D, h}};
        ch.problem.Ut = T.adjoint() * tot * T;
    }
    s.channels.push_back(std::move(ch));
    return s;
}

Setup make_setup(const CharacteristicMatrix& U, const BoxConfig& cfg) {
    const auto flags = classify(U);
    const double L0 = cfg.L0.value();
    const bool ring = cfg.boundary == Boundary::Periodic || cfg.boundary == Boundary::Antiperiodic;

    if (flags.parity && cfg.symmetric()) {
        const auto [tp, tm] = chiral_angles(U, 1);
        WallForm fs = wall_form(cfg.boundary), fa = fs;
        if (cfg.boundary == Boundary::Periodic) fs = WallForm::N, fa = WallForm::D;
        if (cfg.boundary == Boundary::Antiperiodic) fs = WallForm::D, fa = WallForm::N;
        Setup s;
        s.route = SpectrumRoute::parity_sectors;
        s.channels.push_back({{{{fs, cfg.l_plus}}, scalar(tp), L0}, Sector::symmetric});
        s.channels.push_back({{{{fa, cfg.l_plus}}, scalar(tm), L0}, Sector::antisymmetric});
        return s;
    }
    if (flags.separated && !ring) {
        const auto [fp, fm] = chiral_angles(U, 3);
        const WallForm f = wall_form(cfg.boundary);
        Setup s;
        s.route = SpectrumRoute::separated_halves;
        s.channels.push_back({{{{f, cfg.l_plus}}, scalar(fp), L0}, Sector::none});
        s.channels.push_back({{{{f, cfg.l_minus}}, scalar(fm), L0}, Sector::none});
        return s;
    }
    return general_setup(U, cfg);
}

double scan_step(const BoxConfig& cfg) {
    return kPi / (20.0 * std::max(cfg.l_plus, cfg.l_minus));
}

double start_point(const BoxConfig& cfg) {
    return 1e-6 / std::max({cfg.l_plus, cfg.l_minus, cfg.L0.value()});
}

std::vector<std::vector<double>> solve_channels(const Setup& s, const BoxConfig& cfg, Side side) {
    std::vector<std::vector<double>> out;
    const double lo = start_point(cfg);
    double hi = cfg.k_max, step = scan_step(cfg);
    if (side == Side::negative) {
        hi = kNegativeRange / cfg.L0.value();
        step = std::min(step, hi / 200.0);
    }
    for (const auto& ch : s.channels) {
        auto roots = detail::find_roots(ch.problem, lo, hi, step, side, cfg.root_tol);
        // Deep states can sit beyond the initial window; widen until none remain.
        double top = hi;
        for (int grow = 0; side == Side::negative && detail::tail_count(ch.problem, top) > 0;
             ++grow) {
            if (grow > 60) throw RootFindingIncomplete("negative levels beyond kappa = 1e18 / L0");
            const auto more =
                detail::find_roots(ch.problem, top, 2.0 * top, top / 200.0, side, cfg.root_tol);
            roots.insert(roots.end(), more.begin(), more.end());
            top *= 2.0;
        }
        out.push_back(std::move(roots));
    }
    return out;
}

Sector merge_label(Sector a, Sector b) {
    if (a == b) return a;
    if (a == Sector::none || b == Sector::none) return Sector::none;
    return Sector::both;
}

SpectrumResult assemble(const Setup& s, const CharacteristicMatrix& U, const BoxConfig& cfg) {
    SpectrumResult r;
    r.route = s.route;

    struct Tagged {
        double k;
        Sector label;
    };
    std::vector<Tagged> pool;
    const auto pos = solve_channels(s, cfg, Side::positive);
    for (std::size_t c = 0; c < pos.size(); ++c)
        for (double k : pos[c]) pool.push_back({k, s.channels[c].label});
    std::sort(pool.begin(), pool.end(), [](const Tagged& a, const Tagged& b) { return a.k < b.k; });

    for (const auto& t : pool) {
        if (!r.levels.empty()) {
            auto& last = r.levels.back();
            if (std::abs(t.k - last.k) <= kMergeTol * std::max(1.0, t.k)) {
                ++last.multiplicity;
                last.sector = merge_label(last.sector, t.label);
                continue;
            }
        }
        r.levels.push_back({t.k, 1, t.label});
    }

    const auto neg = solve_channels(s, cfg, Side::negative);
    for (const auto& v : neg) r.negative_levels.insert(r.negative_levels.end(), v.begin(), v.end());
    std::sort(r.negative_levels.begin(), r.negative_levels.end());

    for (const auto& ch : s.channels) r.threshold_modes += detail::zero_modes(ch.problem);
    if (cfg.boundary == Boundary::Neumann) {
        const Vec2 one(1.0, 1.0);
        r.constant_mode = ((U.matrix() - Mat2::Identity()) * one).norm() < kClassifyTol;
    }
    return r;
}

}  // namespace

std::string_view to_string(Boundary b) {
    switch (b) {
        case Boundary::Dirichlet: return "dirichlet";
        case Boundary::Neumann: return "neumann";
        case Boundary::Periodic: return "periodic";
        case Boundary::Antiperiodic: return "antiperiodic";
    }
    return "?";
}

std::string_view to_string(Sector s) {
    switch (s) {
        case Sector::symmetric: return "symmetric";
        case Sector::antisymmetric: return "antisymmetric";
        case Sector::none: return "none";
        case Sector::both: return "both";
    }
    return "?";
}

std::string_view to_string(SpectrumRoute r) {
    switch (r) {
        case SpectrumRoute::parity_sectors: return "parity-sectors";
        case SpectrumRoute::separated_halves: return "separated-halves";
        case SpectrumRoute::general: return "general";
    }
    return "?";
}

Boundary parse_boundary(std::string_view name) {
    for (auto b : {Boundary::Dirichlet, Boundary::Neumann, Boundary::Periodic,
                   Boundary::Antiperiodic})
        if (to_string(b) == name) return b;
    throw InvalidArgument("unknown boundary '" + std::string(name) +
                          "' (expected dirichlet, neumann, periodic or antiperiodic)");
}

void BoxConfig::validate() const {
    auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
    if (bad(l_plus) || bad(l_minus)) throw InvalidArgument("box lengths must be positive");
    if (bad(k_max)) throw InvalidArgument("k_max must be positive");
    if (!(root_tol > 0.0 && root_tol <= 1e-6))
        throw InvalidArgument("root_tol must lie in (0, 1e-6]");
    if ((boundary == Boundary::Periodic || boundary == Boundary::Antiperiodic) && !symmetric())
        throw InvalidArgument("periodic boxes need l_plus == l_minus");
}

bool BoxConfig::symmetric() const {
    return std::abs(l_plus - l_minus) <= 1e-12 * std::max(l_plus, l_minus);
}

SpectrumResult box_spectrum(const CharacteristicMatrix& U, const BoxConfig& cfg) {
    cfg.validate();
    return assemble(make_setup(U, cfg), U, cfg);
}

SpectrumResult box_spectrum_general(const CharacteristicMatrix& U, const BoxConfig& cfg) {
    cfg.validate();
    return assemble(general_setup(U, cfg), U, cfg);
}

ChannelSpectra channel_spectra(const CharacteristicMatrix& U, const BoxConfig& cfg) {
    cfg.validate();
    const Setup s = make_setup(U, cfg);
    ChannelSpectra out;
    out.route = s.route;
    for (const auto& ch : s.channels) out.labels.push_back(ch.label);
    out.roots = solve_channels(s, cfg, Side::positive);
    return out;
}

double spectral_residual(const CharacteristicMatrix& U, const BoxConfig& cfg, double k) {
    cfg.validate();
    return detail::residual(general_setup(U, cfg).channels[0].problem, k, Side::positive);
}

double spectral_residual_negative(const CharacteristicMatrix& U, const BoxConfig& cfg,
                                  double kappa) {
    cfg.validate();
    return detail::residual(general_setup(U, cfg).channels[0].problem, kappa, Side::negative);
}

std::vector<Degeneracy> degeneracy_report(const SpectrumResult& s, double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("degeneracy tolerance must be positive");
    std::vector<Degeneracy> out;
    double anchor = 0.0;
    for (const auto& l : s.levels) {
        if (!out.empty() && std::abs(l.k - anchor) <= tol * std::max(1.0, l.k)) {
            out.back().multiplicity += l.multiplicity;
            continue;
        }
        anchor = l.k;
        out.push_back({l.k, l.multiplicity});
    }
    return out;
}

SusyReport susy_check(const CharacteristicMatrix& U) {
    SusyReport r;
    r.is_witten_point = matrix_distance(U.matrix(), -Mat2::Identity()) <= kClassifyTol;
    // Each half-line condition sin(phi/2) phi(0) + L0 cos(phi/2) phi'(0) = 0 pins phi(0) = 0
    // only at phi = pi.
    if (classify(U).separated) {
        const auto [fp, fm] = chiral_angles(U, 3);
        r.wavefunctions_vanish_at_origin =
            std::abs(fp - kPi) <= kClassifyTol && std::abs(fm - kPi) <= kClassifyTol;
    }
    return r;
}

}  // namespace pointline
