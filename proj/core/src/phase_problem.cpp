#include "phase_problem.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "pointline/errors.hpp"
#include "pointline/params.hpp"

namespace pointline::detail {

namespace {

using cplx = std::complex<double>;

Eigen::MatrixXcd q_matrix(const PhaseProblem& p, const std::vector<double>& psis) {
    Eigen::MatrixXcd Q = p.Ut;
    for (Eigen::Index j = 0; j < Q.rows(); ++j) Q.row(j) *= std::polar(1.0, 2.0 * psis[j]);
    return Q;
}

std::vector<double> all_psi(const PhaseProblem& p, double x, Side side) {
    std::vector<double> out;
    out.reserve(p.comps.size());
    for (const auto& c : p.comps) out.push_back(psi(c.form, c.length, p.L0, x, side));
    return out;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXcd& Q) {
    if (Q.rows() == 1) return Q.col(0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q, false);
    return es.eigenvalues();
}

struct Isolator {
    const PhaseProblem& p;
    Side side;
    std::vector<double>& roots;

    void run(const PhaseSample& a, const PhaseSample& b, int n, int depth) {
        if (n <= 0) return;
        const double m = 0.5 * (a.x + b.x);
        if (!(m > a.x && m < b.x) || depth > 200) {
            for (int j = 0; j < n; ++j) roots.push_back(m);
            return;
        }
        const PhaseSample sm = sample(p, m, side);
        const double c1 = count(a, sm, side);
        const double c2 = count(sm, b, side);
        const long n1 = std::lround(c1), n2 = std::lround(c2);
        if (std::abs(c1 - n1) > 1e-6 || std::abs(c2 - n2) > 1e-6 || n1 < 0 || n2 < 0 ||
            n1 + n2 != n)
            throw RootFindingIncomplete("inconsistent root count while isolating near x = " +
                                        std::to_string(m));
        run(a, sm, int(n1), depth + 1);
        run(sm, b, int(n2), depth + 1);
    }
};

}  // namespace

double psi(WallForm f, double length, double L0, double x, Side side) {
    const double xl = x * length;
    const double xL = x * L0;
    if (side == Side::negative) {
        // (sinh, -kappa L0 cosh) and (cosh, -kappa L0 sinh), scaled by 1 / cosh.
        const double t = std::tanh(xl);
        return f == WallForm::D ? std::atan2(-xL, t) : std::atan2(-xL * t, 1.0);
    }
    // (sin, -k L0 cos) and (cos, k L0 sin); unwrap by quadrant of k l.
    const double raw = f == WallForm::D ? std::atan2(-xL * std::cos(xl), std::sin(xl))
                                        : std::atan2(xL * std::sin(xl), std::cos(xl));
    const double m = std::floor(xl / (0.5 * kPi));
    const double centre = (f == WallForm::D ? (m - 1.0) : m) * 0.5 * kPi + 0.25 * kPi;
    return raw + kTwoPi * std::round((centre - raw) / kTwoPi);
}

PhaseSample sample(const PhaseProblem& p, double x, Side side) {
    const auto psis = all_psi(p, x, side);
    PhaseSample s;
    s.x = x;
    for (double v : psis) s.S += 2.0 * v;
    s.S += std::arg(p.Ut.determinant());
    const auto ev = eigenvalues(q_matrix(p, psis));
    for (Eigen::Index j = 0; j < ev.size(); ++j) s.W += wrap_2pi(std::arg(ev(j)));
    return s;
}

double residual(const PhaseProblem& p, double x, Side side) {
    const auto Q = q_matrix(p, all_psi(p, x, side));
    const auto n = Q.rows();
    const auto D = Q - Eigen::MatrixXcd::Identity(n, n);
    return std::abs(D.determinant()) / std::pow(2.0, double(n));
}

double count(const PhaseSample& a, const PhaseSample& b, Side side) {
    const double sgn = side == Side::positive ? 1.0 : -1.0;
    return sgn * (b.S - a.S + a.W - b.W) / kTwoPi;
}

std::vector<double> find_roots(const PhaseProblem& p, double lo, double hi, double step, Side side,
                               double root_tol) {
    std::vector<double> roots;
    if (!(hi > lo)) return roots;
    const double cells = std::ceil((hi - lo) / step);
    if (cells > 5e6) throw InvalidArgument("scan range too large for the scan step");

    Isolator iso{p, side, roots};
    PhaseSample prev = sample(p, lo, side);
    const long ncell = std::max(1L, long(cells));
    for (long j = 1; j <= ncell; ++j) {
        const double x = j == ncell ? hi : lo + double(j) * step;
        const PhaseSample cur = sample(p, x, side);
        const double c = count(prev, cur, side);
        const long n = std::lround(c);
        if (std::abs(c - n) > 1e-6 || n < 0)
            throw RootFindingIncomplete("non-integral root count " + std::to_string(c) +
                                        " on (" + std::to_string(prev.x) + ", " +
                                        std::to_string(cur.x) + "]");
        iso.run(prev, cur, int(n), 0);
        prev = cur;
    }

    for (double r : roots) {
        const double res = residual(p, r, side);
        if (!(res < root_tol))
            throw RootFindingIncomplete("root at x = " + std::to_string(r) +
                                        " has residual " + std::to_string(res));
    }
    return roots;
}

int tail_count(const PhaseProblem& p, double x) {
    // Every psi falls monotonically to -pi/2, so the eigenphases of Q approach their limits
    // from above and a limit sitting exactly at 1 is never reached.
    const std::vector<double> psis(p.comps.size(), -0.5 * kPi);
    PhaseSample inf;
    inf.x = INFINITY;
    for (double v : psis) inf.S += 2.0 * v;
    inf.S += std::arg(p.Ut.determinant());
    const auto ev = eigenvalues(q_matrix(p, psis));
    for (Eigen::Index j = 0; j < ev.size(); ++j) {
        const double a = wrap_2pi(std::arg(ev(j)));
        inf.W += kTwoPi - a < 1e-9 ? 0.0 : a;
    }
    const double c = count(sample(p, x, Side::negative), inf, Side::negative);
    const long n = std::lround(c);
    if (std::abs(c - n) > 1e-6 || n < 0)
        throw RootFindingIncomplete("non-integral tail count " + std::to_string(c));
    return int(n);
}

int zero_modes(const PhaseProblem& p) {
    std::vector<double> psis;
    for (const auto& c : p.comps)
        psis.push_back(c.form == WallForm::D ? std::atan2(-p.L0, c.length) : 0.0);
    const auto ev = eigenvalues(q_matrix(p, psis));
    int n = 0;
    for (Eigen::Index j = 0; j < ev.size(); ++j)
        if (std::abs(ev(j) - 1.0) < 1e-9) ++n;
    return n;
}

}  // namespace pointline::detail
