#include "cli.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pointline/pointline.hpp"
#include "table.hpp"

namespace pointline::cli {

namespace {

using nlohmann::json;

// Raised for a malformed interaction spec; the caller adds a usage hint.
class SpecError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

const char* const kSpecHint =
    "give exactly one of: --xi X --alpha RE,IM --beta RE,IM | --self-dual THETA | "
    "--theta-plus A --theta-minus B [--axis 1|2|3] | --transfer CHI,A,B,C,D | "
    "--sphere THETA,PHI | --point free|identity|witten";

// Row-level check failed: the computed value does not satisfy its own equation.
class ValidationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---- config file ----

std::vector<std::string> config_inputs(const json& v, const std::string& key) {
    if (v.is_string()) return {v.get<std::string>()};
    if (v.is_boolean()) return {v.get<bool>() ? "true" : "false"};
    if (v.is_number()) return {v.dump()};
    if (v.is_array()) {
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (e.is_array() || e.is_object())
                throw CLI::ConfigError("config key '" + key + "': nested arrays are not allowed");
            const auto one = config_inputs(e, key);
            out.insert(out.end(), one.begin(), one.end());
        }
        return out;
    }
    throw CLI::ConfigError("config key '" + key + "' has an unsupported value type");
}

// {"schema": "pointline-config/1", "format": "jsonl", "spectrum": {"box": "dirichlet", ...}}
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        throw CLI::ConfigError("writing configs is not supported");
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) throw CLI::ConfigError("config must be a JSON object");
        const auto schema = doc.find("schema");
        if (schema == doc.end() || !schema->is_string() || *schema != kConfigSchema)
            throw CLI::ConfigError(std::string("config needs \"schema\": \"") + kConfigSchema +
                                   "\"");

        std::vector<CLI::ConfigItem> items;
        for (const auto& [key, value] : doc.items()) {
            if (key == "schema" || value.is_null()) continue;
            if (value.is_object()) {
                for (const auto& [name, v] : value.items()) {
                    if (v.is_null()) continue;
                    if (v.is_object())
                        throw CLI::ConfigError("config section '" + key + "." + name +
                                               "' nests too deeply");
                    items.push_back({{key}, name, config_inputs(v, key + "." + name)});
                }
            } else {
                items.push_back({{}, key, config_inputs(value, key)});
            }
        }
        return items;
    }
};

// ---- argument helpers ----

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < part.size() && std::isspace(static_cast<unsigned char>(part[used]))) ++used;
        if (used != part.size() || part.empty())
            throw InvalidArgument(what + ": cannot read '" + part + "' as a number");
        out.push_back(v);
    }
    if (out.size() != n)
        throw InvalidArgument(what + ": expected " + std::to_string(n) +
                              " comma-separated numbers, got '" + s + "'");
    return out;
}

cplx parse_complex(const std::string& s, const std::string& what) {
    if (s.find(',') == std::string::npos) return {parse_list(s, 1, what)[0], 0.0};
    const auto v = parse_list(s, 2, what);
    return {v[0], v[1]};
}

struct Common {
    bool deg = false;
    std::string format = "csv";
    double L0 = 1.0;

    double angle(double a) const { return deg ? a * kPi / 180.0 : a; }
};

struct USpec {
    std::optional<double> xi;
    std::optional<std::string> alpha, beta;
    std::optional<double> self_dual;
    std::optional<double> theta_plus, theta_minus;
    int axis = 1;
    std::optional<std::string> transfer;
    std::optional<std::string> sphere;
    std::optional<std::string> point;

    void add_to(CLI::App* app) {
        app->add_option("--xi", xi, "overall phase xi of U (radians unless --deg)");
        app->add_option("--alpha", alpha, "alpha as RE,IM");
        app->add_option("--beta", beta, "beta as RE,IM");
        app->add_option("--self-dual", self_dual, "U = e^{i theta} I");
        app->add_option("--theta-plus", theta_plus, "chiral angle theta+");
        app->add_option("--theta-minus", theta_minus, "chiral angle theta-");
        app->add_option("--axis", axis, "chiral axis for --theta-plus/--theta-minus")
            ->check(CLI::Range(1, 3));
        app->add_option("--transfer", transfer, "transfer matrix CHI,A,B,C,D (B, C in units of L0)");
        app->add_option("--sphere", sphere, "point THETA,PHI on the scale-invariant sphere");
        app->add_option("--point", point, "named point")
            ->check(CLI::IsMember({"free", "identity", "witten"}));
    }

    CharacteristicMatrix resolve(const Common& c) const {
        try {
            return build(c);
        } catch (const DomainError& e) {
            throw SpecError(e.what());
        }
    }

    CharacteristicMatrix build(const Common& c) const {
        int forms = 0;
        forms += xi || alpha || beta;
        forms += self_dual.has_value();
        forms += theta_plus || theta_minus;
        forms += transfer.has_value();
        forms += sphere.has_value();
        forms += point.has_value();
        if (forms != 1)
            throw InvalidArgument(forms == 0 ? "no interaction given" : "more than one interaction given");

        if (xi || alpha || beta) {
            if (!(xi && alpha && beta)) throw InvalidArgument("--xi, --alpha and --beta go together");
            return make_characteristic(c.angle(*xi), parse_complex(*alpha, "--alpha"),
                                       parse_complex(*beta, "--beta"));
        }
        if (self_dual) return self_dual_point(c.angle(*self_dual));
        if (theta_plus || theta_minus) {
            if (!(theta_plus && theta_minus))
                throw InvalidArgument("--theta-plus and --theta-minus go together");
            return from_chiral(c.angle(*theta_plus), c.angle(*theta_minus), axis);
        }
        if (transfer) {
            const auto v = parse_list(*transfer, 5, "--transfer");
            return from_transfer(make_transfer(c.angle(v[0]), v[1], v[2], v[3], v[4],
                                               ScaleParameter(c.L0)));
        }
        if (sphere) {
            const auto v = parse_list(*sphere, 2, "--sphere");
            const double th = c.angle(v[0]);
            if (!(th >= 0.0 && th <= kPi))
                throw InvalidArgument("--sphere: theta must lie in [0, pi] (or [0, 180] with --deg)");
            return sphere_to_characteristic({th, c.angle(v[1])});
        }
        if (*point == "free") return free_point();
        if (*point == "identity") return identity_point();
        return self_dual_point(kPi);
    }
};

struct BoxOptions {
    std::string box = "dirichlet";
    std::optional<double> l, l_plus, l_minus;
    double k_max = 20.0;
    double root_tol = 1e-12;

    void add_to(CLI::App* app) {
        app->add_option("--box", box, "outer boundary")
            ->check(CLI::IsMember({"dirichlet", "neumann", "periodic", "antiperiodic"},
                                  CLI::ignore_case));
        app->add_option("--l", l, "half-width of a symmetric box (ring circumference 2l)");
        app->add_option("--l-plus", l_plus, "wall distance on the right");
        app->add_option("--l-minus", l_minus, "wall distance on the left");
        app->add_option("--k-max", k_max, "upper end of the k search");
        app->add_option("--root-tol", root_tol, "residual tolerance for accepted roots");
    }

    BoxConfig resolve(const Common& c) const {
        BoxConfig cfg;
        std::string name = box;
        for (auto& ch : name) ch = char(std::tolower(static_cast<unsigned char>(ch)));
        cfg.boundary = parse_boundary(name);
        if (l && (l_plus || l_minus)) throw InvalidArgument("use either --l or --l-plus/--l-minus");
        cfg.l_plus = l ? *l : l_plus.value_or(1.0);
        cfg.l_minus = l ? *l : l_minus.value_or(cfg.l_plus);
        cfg.L0 = ScaleParameter(c.L0);
        cfg.k_max = k_max;
        cfg.root_tol = root_tol;
        cfg.validate();
        return cfg;
    }
};

Value num(double x) { return x; }
Value integer(long long x) { return x; }
Value text(std::string s) { return s; }
Value flag(bool b) { return b; }
Value empty() { return std::monostate{}; }

void add_matrix(Row& row, const std::string& prefix, const CharacteristicMatrix& U) {
    row.push_back({prefix + "xi", num(U.xi)});
    row.push_back({prefix + "alpha_re", num(U.alpha.real())});
    row.push_back({prefix + "alpha_im", num(U.alpha.imag())});
    row.push_back({prefix + "beta_re", num(U.beta.real())});
    row.push_back({prefix + "beta_im", num(U.beta.imag())});
}

void add_complex(Row& row, const std::string& name, cplx z) {
    row.push_back({name + "_re", num(z.real())});
    row.push_back({name + "_im", num(z.imag())});
}

std::vector<double> k_grid(double lo, double hi, int n, bool log) {
    if (!(lo > 0.0) || !(hi > lo)) throw InvalidArgument("k grid needs 0 < k-min < k-max");
    if (n < 2) throw InvalidArgument("k grid needs at least 2 points");
    std::vector<double> out;
    for (int j = 0; j < n; ++j) {
        const double t = double(j) / (n - 1);
        out.push_back(log ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo));
    }
    out.back() = hi;
    return out;
}

// ---- commands ----

struct ClassifyCmd {
    USpec u;
    double tol = 1e-6;

    std::vector<Row> rows(const Common& c) const {
        const auto U = u.resolve(c);
        const auto f = classify(U, tol);
        const auto e = eigenphases(U);
        const auto [W, R] = decompose_WR(U);

        const Mat2 D = e.V * U.matrix() * e.V.adjoint();
        Mat2 want = Mat2::Zero();
        want(0, 0) = std::polar(1.0, e.mu_plus);
        want(1, 1) = std::polar(1.0, e.mu_minus);
        if (matrix_distance(D, want) > 1e-12)
            throw ValidationFailure("eigenphase decomposition does not diagonalize U");
        if (matrix_distance(W.matrix() * R.matrix(), U.matrix()) > 1e-12)
            throw ValidationFailure("W R factors do not reproduce U");

        Row row;
        add_matrix(row, "", U);
        row.push_back({"parity", flag(f.parity)});
        row.push_back({"time_reversal", flag(f.time_reversal)});
        row.push_back({"pt", flag(f.pt)});
        row.push_back({"weyl", flag(f.weyl)});
        row.push_back({"weyl_isolated", flag(f.weyl_isolated)});
        row.push_back({"separated", flag(f.separated)});
        row.push_back({"q", flag(f.q)});
        row.push_back({"self_dual", flag(f.self_dual)});
        row.push_back({"free_point", flag(f.free_point)});
        row.push_back({"mu_plus", num(e.mu_plus)});
        row.push_back({"mu_minus", num(e.mu_minus)});
        row.push_back({"rho", num(e.rho)});

        Value tp = empty(), tm = empty(), gp = empty(), gm = empty();
        if (classify(U).parity) {
            const auto [a, b] = chiral_angles(U, 1);
            const auto g = coupling_constants(a, b);
            tp = num(a), tm = num(b), gp = num(g.g_plus), gm = num(g.g_minus);
        }
        row.push_back({"theta_plus", tp});
        row.push_back({"theta_minus", tm});
        row.push_back({"g_plus", gp});
        row.push_back({"g_minus", gm});
        add_matrix(row, "W_", W);
        add_matrix(row, "R_", R);
        return {row};
    }
};

struct ScatterCmd {
    USpec u;
    double k_min = 0.01, k_max = 10.0;
    int k_count = 100;
    bool log = false;
    bool filter = false;

    std::vector<Row> rows(const Common& c) const {
        const auto U = u.resolve(c);
        const ScaleParameter L0(c.L0);
        const auto grid = k_grid(k_min, k_max, k_count, log);
        if (filter) {
            const auto p = filter_profile(U, L0, grid);
            return {{{"classification", text(std::string(to_string(p.classification)))},
                     {"k_min", num(grid.front())},
                     {"k_max", num(grid.back())},
                     {"t2_first", num(p.samples.front().second)},
                     {"t2_last", num(p.samples.back().second)}}};
        }
        std::vector<Row> out;
        for (double k : grid) {
            const auto s = amplitudes_global(U, L0, k);
            const double defect = unitarity_defect(s);
            if (!(defect < 1e-10))
                throw ValidationFailure("unitarity defect " + format_double(defect) + " at k = " +
                                        format_double(k));
            Row row{{"k", num(k)}};
            add_complex(row, "r_l", s.r_l);
            add_complex(row, "t_l", s.t_l);
            add_complex(row, "r_r", s.r_r);
            add_complex(row, "t_r", s.t_r);
            row.push_back({"t2", num(std::norm(s.t_r))});
            out.push_back(std::move(row));
        }
        return out;
    }
};

struct BoundCmd {
    USpec u;

    std::vector<Row> rows(const Common& c) const {
        const auto U = u.resolve(c);
        const ScaleParameter L0(c.L0);
        const auto b = bound_states(U, L0);
        const auto e = eigenphases(U);
        std::vector<Row> out;
        for (const auto& s : b.states) {
            // e^{-kappa |x|} along each eigenvector carrying this eigenphase.
            for (int j = 0; j < 2; ++j) {
                const double mu = j == 0 ? e.mu_plus : e.mu_minus;
                if (std::abs(wrap_pi(mu - s.eigenphase)) > 1e-9) continue;
                BoundaryVectors bv;
                bv.phi = e.V.row(j).adjoint();
                bv.dphi = -s.kappa * bv.phi;
                const double r = boundary_residual(U, L0, bv) / (1.0 + s.kappa * c.L0);
                if (!(r < 1e-9))
                    throw ValidationFailure("bound state kappa = " + format_double(s.kappa) +
                                            " misses the boundary condition by " + format_double(r));
            }
            out.push_back({{"kind", text("bound")},
                           {"kappa", num(s.kappa)},
                           {"energy", num(s.energy)},
                           {"multiplicity", integer(s.multiplicity)},
                           {"eigenphase", num(s.eigenphase)}});
        }
        if (b.threshold_count > 0)
            out.push_back({{"kind", text("threshold")},
                           {"kappa", num(0.0)},
                           {"energy", num(0.0)},
                           {"multiplicity", integer(b.threshold_count)},
                           {"eigenphase", num(0.0)}});
        return out;
    }
};

Row spectrum_row(std::string kind, long long index, Value k, Value kappa, double energy,
                 int multiplicity, std::string sector, SpectrumRoute route) {
    return {{"kind", text(std::move(kind))},
            {"index", integer(index)},
            {"k", std::move(k)},
            {"kappa", std::move(kappa)},
            {"energy", num(energy)},
            {"multiplicity", integer(multiplicity)},
            {"sector", text(std::move(sector))},
            {"route", text(std::string(to_string(route)))}};
}

void check_level(const CharacteristicMatrix& U, const BoxConfig& cfg, double k) {
    const double r = spectral_residual(U, cfg, k);
    if (!(r < 1e-9))
        throw ValidationFailure("level k = " + format_double(k) + " has residual " + format_double(r));
}

struct SpectrumCmd {
    USpec u;
    BoxOptions box;

    std::vector<Row> rows(const Common& c) const {
        const auto U = u.resolve(c);
        const auto cfg = box.resolve(c);
        const auto s = box_spectrum(U, cfg);
        std::vector<Row> out;
        long long idx = 0;
        for (double kappa : s.negative_levels) {
            const double r = spectral_residual_negative(U, cfg, kappa);
            if (!(r < 1e-9))
                throw ValidationFailure("negative level kappa = " + format_double(kappa) +
                                        " has residual " + format_double(r));
            out.push_back(spectrum_row("negative", idx++, empty(), num(kappa), -kappa * kappa, 1,
                                       "none", s.route));
        }
        if (s.threshold_modes > 0)
            out.push_back(spectrum_row(s.constant_mode ? "threshold_constant" : "threshold", idx++,
                                       num(0.0), empty(), 0.0, s.threshold_modes, "none", s.route));
        for (const auto& l : s.levels) {
            check_level(U, cfg, l.k);
            out.push_back(spectrum_row("level", idx++, num(l.k), empty(), l.k * l.k, l.multiplicity,
                                       std::string(to_string(l.sector)), s.route));
        }
        return out;
    }
};

struct FlowCmd {
    std::string path = "diagonal";
    double theta0 = 0.0;
    std::optional<double> fixed;
    std::optional<std::string> from, to;
    int steps = 400;
    int levels = 10;
    std::string output = "tracks";
    BoxOptions box;

    ParameterPath make_path(const Common& c) const {
        const double t0 = c.angle(theta0);
        if (path == "diagonal") return diagonal_cycle(t0);
        if (path == "theta-plus") return theta_plus_cycle(c.angle(fixed.value_or(c.deg ? 180.0 : kPi)), t0);
        if (path == "theta-minus") return theta_minus_cycle(c.angle(fixed.value_or(0.0)), t0);
        if (!from || !to) throw InvalidArgument("--path segment needs --from TP,TM and --to TP,TM");
        const auto a = parse_list(*from, 2, "--from"), b = parse_list(*to, 2, "--to");
        return torus_segment(c.angle(a[0]), c.angle(a[1]), c.angle(b[0]), c.angle(b[1]));
    }

    std::vector<Row> rows(const Common& c) const {
        const auto cfg = box.resolve(c);
        const auto f = spectral_flow(make_path(c), cfg, levels, steps);
        std::vector<Row> out;
        if (output == "permutation") {
            for (std::size_t i = 0; i < f.tracks.size(); ++i) {
                const auto& t = f.tracks[i];
                const int end = f.channel_end[i];
                out.push_back({{"track", integer(static_cast<long long>(i))},
                               {"sector", text(std::string(to_string(t.sector)))},
                               {"final_index", f.permutation[i] < 0 ? empty() : integer(f.permutation[i])},
                               {"channel_start", integer(f.channel_start[i])},
                               {"channel_end", end < 0 ? empty() : integer(end)},
                               {"channel_shift", end < 0 ? empty() : integer(f.channel_start[i] - end)},
                               {"closed", flag(f.closed)}});
            }
            return out;
        }
        for (std::size_t j = 0; j < f.s.size(); ++j) {
            const auto& U = f.path[j];
            Value tp = empty(), tm = empty();
            if (classify(U).parity) {
                const auto [a, b] = chiral_angles(U, 1);
                tp = num(a), tm = num(b);
            }
            for (std::size_t i = 0; i < f.tracks.size(); ++i) {
                const double k = f.tracks[i].k[j];
                if (!std::isnan(k)) check_level(U, cfg, k);
                out.push_back({{"step", integer(static_cast<long long>(j))},
                               {"s", num(f.s[j])},
                               {"theta_plus", tp},
                               {"theta_minus", tm},
                               {"track", integer(static_cast<long long>(i))},
                               {"sector", text(std::string(to_string(f.tracks[i].sector)))},
                               {"k", std::isnan(k) ? empty() : num(k)}});
            }
        }
        return out;
    }
};

Sector swapped(Sector s) {
    if (s == Sector::symmetric) return Sector::antisymmetric;
    if (s == Sector::antisymmetric) return Sector::symmetric;
    return s;
}

struct DualCmd {
    double theta_plus = 0.0, theta_minus = 0.0;
    BoxOptions box;

    std::vector<Row> rows(const Common& c) const {
        const auto cfg = box.resolve(c);
        const auto U = parity_point(c.angle(theta_plus), c.angle(theta_minus));
        const auto D = apply_transform(U, DiscreteTransform::R);
        const auto a = box_spectrum(U, cfg), b = box_spectrum(D, cfg);
        if (a.levels.size() != b.levels.size())
            throw ValidationFailure("dual spectra have different level counts (" +
                                    std::to_string(a.levels.size()) + " vs " +
                                    std::to_string(b.levels.size()) + ")");
        const auto [dp, dm] = chiral_angles(D, 1);
        std::vector<Row> out;
        for (std::size_t j = 0; j < a.levels.size(); ++j) {
            const auto& x = a.levels[j];
            const auto& y = b.levels[j];
            if (std::abs(x.k - y.k) > 1e-9 * std::max(1.0, x.k) || x.multiplicity != y.multiplicity ||
                y.sector != swapped(x.sector))
                throw ValidationFailure("duality fails at level " + std::to_string(j));
            check_level(U, cfg, x.k);
            check_level(D, cfg, y.k);
            out.push_back({{"index", integer(static_cast<long long>(j))},
                           {"theta_plus", num(c.angle(theta_plus))},
                           {"theta_minus", num(c.angle(theta_minus))},
                           {"k", num(x.k)},
                           {"multiplicity", integer(x.multiplicity)},
                           {"sector", text(std::string(to_string(x.sector)))},
                           {"dual_theta_plus", num(dp)},
                           {"dual_theta_minus", num(dm)},
                           {"dual_k", num(y.k)},
                           {"dual_sector", text(std::string(to_string(y.sector)))}});
        }
        return out;
    }
};

struct BerryCmd {
    std::optional<double> latitude;
    int vertices = 2000;
    std::optional<std::string> polygon;
    int subdivide = 200;

    std::vector<Row> rows(const Common& c) const {
        if (latitude.has_value() == polygon.has_value())
            throw InvalidArgument("give exactly one of --latitude THETA or --polygon T,P;T,P;...");
        SphereLoop loop;
        std::string name;
        double predicted = 0.0;
        if (latitude) {
            const double th = c.angle(*latitude);
            if (!(th > 0.0 && th < kPi))
                throw InvalidArgument("--latitude must lie strictly between the poles");
            loop = latitude_loop(th, vertices);
            name = "latitude";
            predicted = wrap_pi(-kPi * (1.0 - std::cos(th)));
        } else {
            std::vector<SpherePoint> corners;
            std::stringstream ss(*polygon);
            std::string part;
            while (std::getline(ss, part, ';')) {
                const auto v = parse_list(part, 2, "--polygon");
                corners.push_back({c.angle(v[0]), c.angle(v[1])});
            }
            loop = geodesic_polygon(corners, subdivide);
            name = "polygon";
            // Fan of geodesic triangles from the first corner.
            auto cart = [](const SpherePoint& p) {
                return Eigen::Vector3d(std::sin(p.theta) * std::cos(p.phi),
                                       std::sin(p.theta) * std::sin(p.phi), std::cos(p.theta));
            };
            double omega = 0.0;
            for (std::size_t j = 1; j + 1 < corners.size(); ++j) {
                const auto a = cart(corners[0]), b = cart(corners[j]), d = cart(corners[j + 1]);
                omega += 2.0 * std::atan2(a.dot(b.cross(d)), 1.0 + a.dot(b) + b.dot(d) + d.dot(a));
            }
            predicted = wrap_pi(-0.5 * omega);
        }
        const double gd = loop_phase(loop, PhaseMethod::discrete);
        const double ga = loop_phase(loop, PhaseMethod::analytic);
        if (!(std::abs(wrap_pi(gd - ga)) < 1e-8))
            throw ValidationFailure("discrete and analytic phases disagree: " + format_double(gd) +
                                    " vs " + format_double(ga));
        return {{{"loop", text(name)},
                 {"vertices", integer(static_cast<long long>(loop.vertices.size()))},
                 {"gamma_discrete", num(gd)},
                 {"gamma_analytic", num(ga)},
                 {"gamma_predicted", num(predicted)}}};
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Point interactions on the line: parameters, scattering, box spectra, flows, "
                 "Berry phases"};
    app.name("pointline");
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config with \"schema\": \"pointline-config/1\"");

    Common common;
    app.add_flag("--deg", common.deg, "read every angle in degrees");
    app.add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--L0", common.L0, "length scale L0 of the boundary condition");

    ClassifyCmd classify_cmd;
    auto* sc = app.add_subcommand("classify", "subfamilies, eigenphases and W R factors of U");
    classify_cmd.u.add_to(sc);
    sc->add_option("--tol", classify_cmd.tol, "membership tolerance for hand-typed input");

    ScatterCmd scatter_cmd;
    auto* ss = app.add_subcommand("scatter", "reflection and transmission over a k grid");
    scatter_cmd.u.add_to(ss);
    ss->add_option("--k-min", scatter_cmd.k_min);
    ss->add_option("--k-max", scatter_cmd.k_max);
    ss->add_option("--k-count", scatter_cmd.k_count);
    ss->add_flag("--log", scatter_cmd.log, "logarithmic k grid");
    ss->add_flag("--filter", scatter_cmd.filter, "print only the filter classification");

    BoundCmd bound_cmd;
    auto* sb = app.add_subcommand("bound", "bound states on the line");
    bound_cmd.u.add_to(sb);

    SpectrumCmd spectrum_cmd;
    auto* sp = app.add_subcommand("spectrum", "box spectrum");
    spectrum_cmd.u.add_to(sp);
    spectrum_cmd.box.add_to(sp);

    FlowCmd flow_cmd;
    auto* sf = app.add_subcommand("flow", "levels followed along a path on the parity torus");
    sf->add_option("--path", flow_cmd.path)
        ->check(CLI::IsMember({"diagonal", "theta-plus", "theta-minus", "segment"}));
    sf->add_option("--theta0", flow_cmd.theta0, "starting angle of a cycle");
    sf->add_option("--fixed", flow_cmd.fixed, "angle held fixed on a theta-plus / theta-minus cycle");
    sf->add_option("--from", flow_cmd.from, "segment start TP,TM");
    sf->add_option("--to", flow_cmd.to, "segment end TP,TM");
    sf->add_option("--steps", flow_cmd.steps);
    sf->add_option("--levels", flow_cmd.levels);
    sf->add_option("--output", flow_cmd.output)->check(CLI::IsMember({"tracks", "permutation"}));
    flow_cmd.box.add_to(sf);

    DualCmd dual_cmd;
    auto* sd = app.add_subcommand("dual", "spectra at (theta+, theta-) and at its R image");
    sd->add_option("--theta-plus", dual_cmd.theta_plus)->required();
    sd->add_option("--theta-minus", dual_cmd.theta_minus)->required();
    dual_cmd.box.add_to(sd);

    BerryCmd berry_cmd;
    auto* sy = app.add_subcommand("berry", "geometric phase of a loop on the scale-invariant sphere");
    sy->add_option("--latitude", berry_cmd.latitude, "polar angle of a latitude loop");
    sy->add_option("--vertices", berry_cmd.vertices, "segments of the latitude loop");
    sy->add_option("--polygon", berry_cmd.polygon, "corners T,P;T,P;... of a geodesic polygon");
    sy->add_option("--subdivide", berry_cmd.subdivide, "pieces per polygon edge");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kOk : kUsageError;
    }

    try {
        std::vector<Row> rows;
        if (app.got_subcommand(sc)) rows = classify_cmd.rows(common);
        else if (app.got_subcommand(ss)) rows = scatter_cmd.rows(common);
        else if (app.got_subcommand(sb)) rows = bound_cmd.rows(common);
        else if (app.got_subcommand(sp)) rows = spectrum_cmd.rows(common);
        else if (app.got_subcommand(sf)) rows = flow_cmd.rows(common);
        else if (app.got_subcommand(sd)) rows = dual_cmd.rows(common);
        else rows = berry_cmd.rows(common);

        TableWriter w(out, common.format == "jsonl" ? Format::jsonl : Format::csv);
        for (const auto& r : rows) w.write(r);
        return kOk;
    } catch (const SpecError& e) {
        err << "error: " << e.what() << '\n' << "hint: " << kSpecHint << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const ValidationFailure& e) {
        err << "validation failed: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace pointline::cli
