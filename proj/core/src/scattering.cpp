#include "pointline/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pointline {

namespace {

constexpr double kDenominatorTol = 1e-14;
constexpr double kThresholdTol = 1e-12;

// Amplitudes as rational functions of q, both numerator and denominator multiplied by q.
ScatteringAmplitudes from_q(const CharacteristicMatrix& U, cplx q) {
    const cplx eta = std::polar(1.0, U.xi);
    const cplx a = U.alpha, b = U.beta;
    const double twoc = 2.0 * std::cos(U.xi);
    const cplx q2 = q * q;

    const cplx D = eta * q2 + std::conj(eta) - 2.0 * a.real() * q;
    if (std::abs(D) < kDenominatorTol * std::abs(q))
        throw DegenerateDenominator("scattering denominator vanishes (spectral singularity)");

    ScatteringAmplitudes s;
    s.r_l = (a * q2 + std::conj(a) - twoc * q) / D;
    s.t_l = -b * (q2 - 1.0) / D;
    s.r_r = (std::conj(a) * q2 + a - twoc * q) / D;
    s.t_r = std::conj(b) * (q2 - 1.0) / D;
    return s;
}

}  // namespace

std::string_view to_string(FilterClass c) {
    switch (c) {
        case FilterClass::high_pass: return "high-pass";
        case FilterClass::low_pass: return "low-pass";
        case FilterClass::band_pass: return "band-pass";
        case FilterClass::all_pass: return "all-pass";
        case FilterClass::all_block: return "all-block";
        case FilterClass::other: return "other";
    }
    return "other";
}

ScatteringAmplitudes amplitudes_global(const CharacteristicMatrix& U, ScaleParameter L0,
                                       double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidArgument("scattering needs k > 0, got " + std::to_string(k));
    const double kl = k * L0.value();
    auto s = from_q(U, cplx((1.0 - kl) / (1.0 + kl), 0.0));
    s.k = k;
    return s;
}

ScatteringAmplitudes amplitudes_global(const CharacteristicMatrix& U, ScaleParameter L0,
                                       cplx k) {
    const cplx kl = k * L0.value();
    if (std::abs(1.0 + kl) == 0.0) throw DegenerateDenominator("k L0 = -1");
    auto s = from_q(U, (1.0 - kl) / (1.0 + kl));
    s.k = k.real();
    return s;
}

ScatteringAmplitudes amplitudes_global_reversed(const CharacteristicMatrix& U,
                                                ScaleParameter L0, double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidArgument("scattering needs k > 0, got " + std::to_string(k));
    const double kl = k * L0.value();
    const double q = (1.0 - kl) / (1.0 + kl);
    // q -> 1/q, again cleared of denominators by q^2.
    const cplx eta = std::polar(1.0, U.xi);
    const cplx a = U.alpha, b = U.beta;
    const double twoc = 2.0 * std::cos(U.xi);
    const double q2 = q * q;
    const cplx D = eta + std::conj(eta) * q2 - 2.0 * a.real() * q;
    if (std::abs(D) < kDenominatorTol)
        throw DegenerateDenominator("scattering denominator vanishes (spectral singularity)");

    ScatteringAmplitudes s;
    s.r_l = (a + std::conj(a) * q2 - twoc * q) / D;
    s.t_l = -b * (1.0 - q2) / D;
    s.r_r = (std::conj(a) + a * q2 - twoc * q) / D;
    s.t_r = std::conj(b) * (1.0 - q2) / D;
    s.k = k;
    return s;
}

ScatteringAmplitudes amplitudes_transfer(const TransferMatrix& L, double k) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw InvalidArgument("scattering needs k > 0, got " + std::to_string(k));
    const cplx i(0.0, 1.0);
    const double r2 = 1.0 / std::sqrt(2.0);
    const Vec2 u_p = r2 * Vec2(1.0, i * k);
    const Vec2 u_m = r2 * Vec2(1.0, -i * k);
    const Vec2 v_p = r2 * Vec2(1.0, -1.0 / (i * k));
    const Vec2 v_m = r2 * Vec2(1.0, 1.0 / (i * k));

    const Mat2 lam = L.matrix();
    const double l0 = L.L0.value();
    Mat2 inv;
    inv << L.d, -L.b * l0, -L.c / l0, L.a;
    inv *= std::polar(1.0, -L.chi);

    const cplx dr = v_m.dot(lam * u_m);
    const cplx dl = v_p.dot(inv * u_p);
    if (std::abs(dr) < kDenominatorTol || std::abs(dl) < kDenominatorTol)
        throw DegenerateDenominator("transfer-matrix denominator vanishes");

    ScatteringAmplitudes s;
    s.t_r = 1.0 / dr;
    s.r_r = v_p.dot(lam * u_m) * s.t_r;
    s.t_l = 1.0 / dl;
    s.r_l = v_m.dot(inv * u_p) * s.t_l;
    s.k = k;
    return s;
}

BoundStates bound_states(const CharacteristicMatrix& U, ScaleParameter L0) {
    const auto e = eigenphases(U);
    BoundStates out;
    std::vector<double> inside;
    for (double mu : {e.mu_plus, e.mu_minus}) {
        const double dist0 = std::min(mu, kTwoPi - mu);
        if (dist0 < kThresholdTol)
            ++out.threshold_count;
        else if (mu > 0.0 && mu < kPi - kThresholdTol)
            inside.push_back(mu);
    }
    std::sort(inside.begin(), inside.end(), std::greater<>());
    for (double mu : inside) {
        if (!out.states.empty() && std::abs(out.states.back().eigenphase - mu) < kThresholdTol) {
            out.states.back().multiplicity = 2;
            continue;
        }
        BoundState b;
        b.eigenphase = mu;
        b.kappa = std::tan(0.5 * mu) / L0.value();
        b.energy = -b.kappa * b.kappa;
        out.states.push_back(b);
    }
    return out;
}

FilterProfile filter_profile(const CharacteristicMatrix& U, ScaleParameter L0,
                             const std::vector<double>& k_grid) {
    if (k_grid.empty()) throw InvalidArgument("k grid is empty");
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        if (!(k_grid[j] > 0.0)) throw InvalidArgument("k grid must be positive");
        if (j > 0 && !(k_grid[j] > k_grid[j - 1]))
            throw InvalidArgument("k grid must be strictly increasing");
    }

    FilterProfile p;
    p.samples.reserve(k_grid.size());
    for (double k : k_grid) p.samples.emplace_back(k, std::norm(amplitudes_global(U, L0, k).t_r));

    auto t2 = [&](std::size_t j) { return p.samples[j].second; };
    const std::size_t n = p.samples.size();
    const bool all_hi = std::all_of(p.samples.begin(), p.samples.end(),
                                    [](const auto& s) { return s.second >= 0.99; });
    const bool all_lo = std::all_of(p.samples.begin(), p.samples.end(),
                                    [](const auto& s) { return s.second <= 0.01; });
    double interior = -1.0;
    for (std::size_t j = 1; j + 1 < n; ++j) interior = std::max(interior, t2(j));

    if (all_hi)
        p.classification = FilterClass::all_pass;
    else if (all_lo)
        p.classification = FilterClass::all_block;
    else if (t2(0) < 0.1 && t2(n - 1) > 0.9)
        p.classification = FilterClass::high_pass;
    else if (t2(0) > 0.9 && t2(n - 1) < 0.1)
        p.classification = FilterClass::low_pass;
    else if (n >= 3 && interior > t2(0) + 0.2 && interior > t2(n - 1) + 0.2)
        p.classification = FilterClass::band_pass;
    else
        p.classification = FilterClass::other;
    return p;
}

double unitarity_defect(const ScatteringAmplitudes& s) {
    const double a = std::abs(std::norm(s.r_l) + std::norm(s.t_l) - 1.0);
    const double b = std::abs(std::norm(s.r_r) + std::norm(s.t_r) - 1.0);
    const double c = std::abs(std::conj(s.r_l) * s.t_r + std::conj(s.t_l) * s.r_r);
    return std::max({a, b, c});
}

}  // namespace pointline
