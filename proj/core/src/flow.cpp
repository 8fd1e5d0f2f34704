#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "pointline/spectra.hpp"

namespace pointline {

namespace {

constexpr int kMaxRefineDepth = 16;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Lists = std::vector<std::vector<double>>;

struct Sampled {
    double s;
    CharacteristicMatrix U;
    Lists lists;
};

class Tracker {
public:
    Tracker(const ParameterPath& path, const BoxConfig& cfg, bool pooled, std::size_t nchan)
        : path_(path), cfg_(cfg), pooled_(pooled), nchan_(nchan) {}

    Sampled at(double s) const {
        Sampled out{s, path_.at(s), {}};
        const auto cs = channel_spectra(out.U, cfg_);
        if (pooled_) {
            std::vector<double> all;
            for (const auto& r : cs.roots) all.insert(all.end(), r.begin(), r.end());
            std::sort(all.begin(), all.end());
            out.lists = {all};
        } else {
            if (cs.roots.size() != nchan_)
                throw TrackingAmbiguity("channel structure changed along the path");
            out.lists = cs.roots;
        }
        return out;
    }

private:
    const ParameterPath& path_;
    const BoxConfig& cfg_;
    bool pooled_;
    std::size_t nchan_;
};

struct Live {
    int channel;
    int idx;  // negative: that many places below the lowest positive level
};

// Best index offset b[i + o] ~ a[i] for one channel; nullopt when a finer step is needed.
std::optional<int> match(const std::vector<double>& a, const std::vector<double>& b, int top,
                         double root_tol) {
    // Window: every level up to one above the highest tracked one.
    const int w = top + 2;
    if (int(a.size()) < w || int(b.size()) < w + 1)
        throw InvalidArgument("k_max too small to follow the requested levels");

    // Gaps between neighbours only: the lowest level may legitimately run into k = 0.
    double spacing = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < w; ++i) spacing = std::min(spacing, a[i + 1] - a[i]);

    double cost[3];
    for (int o = -1; o <= 1; ++o) {
        double c = 0.0;
        for (int i = 0; i < w; ++i) {
            const int j = i + o;
            if (j < 0) continue;
            c = std::max(c, std::abs(a[i] - b[j]));
        }
        cost[o + 1] = c;
    }
    int best = 0;
    for (int o = 1; o < 3; ++o)
        if (cost[o] < cost[best]) best = o;
    double second = std::numeric_limits<double>::infinity();
    for (int o = 0; o < 3; ++o)
        if (o != best) second = std::min(second, cost[o]);

    if (!(cost[best] < 0.5 * spacing)) return std::nullopt;
    if (second - cost[best] < root_tol) return std::nullopt;
    return best - 1;
}

}  // namespace

ParameterPath diagonal_cycle(double theta0) {
    return {[theta0](double s) {
                const double t = theta0 + kTwoPi * s;
                return parity_point(t, t + kPi);
            },
            true, "diagonal"};
}

ParameterPath theta_plus_cycle(double theta_minus, double theta0) {
    return {[=](double s) { return parity_point(theta0 + kTwoPi * s, theta_minus); }, true,
            "theta-plus"};
}

ParameterPath theta_minus_cycle(double theta_plus, double theta0) {
    return {[=](double s) { return parity_point(theta_plus, theta0 + kTwoPi * s); }, true,
            "theta-minus"};
}

ParameterPath torus_segment(double tp0, double tm0, double tp1, double tm1) {
    const bool closed = std::abs(wrap_pi(tp1 - tp0)) < 1e-14 && std::abs(wrap_pi(tm1 - tm0)) < 1e-14;
    return {[=](double s) { return parity_point(tp0 + s * (tp1 - tp0), tm0 + s * (tm1 - tm0)); },
            closed, "torus"};
}

ParameterPath constant_path(const CharacteristicMatrix& U) {
    return {[U](double) { return U; }, true, "constant"};
}

ParameterPath reversed(const ParameterPath& p) {
    return {[f = p.at](double s) { return f(1.0 - s); }, p.closed, p.name + "-reversed"};
}

ParameterPath concatenate(const ParameterPath& a, const ParameterPath& b) {
    const bool closed = matrix_distance(a.at(0.0).matrix(), b.at(1.0).matrix()) < kClassifyTol;
    return {[fa = a.at, fb = b.at](double s) { return s <= 0.5 ? fa(2.0 * s) : fb(2.0 * s - 1.0); },
            closed, a.name + "+" + b.name};
}

SpectralFlow spectral_flow(const ParameterPath& path, const BoxConfig& cfg, int n_levels,
                           int n_steps) {
    cfg.validate();
    if (n_levels < 1) throw InvalidArgument("n_levels must be positive");
    if (n_steps < 1) throw InvalidArgument("n_steps must be positive");
    if (!path.at) throw InvalidArgument("path is empty");

    // One channel per parity sector / half-box if the whole path keeps that structure.
    std::vector<ChannelSpectra> nominal;
    bool pooled = false;
    for (int j = 0; j <= n_steps; ++j) {
        nominal.push_back(channel_spectra(path.at(double(j) / n_steps), cfg));
        if (nominal.back().route != nominal.front().route ||
            nominal.front().route == SpectrumRoute::general)
            pooled = true;
    }
    const std::size_t nchan = pooled ? 1 : nominal.front().roots.size();
    Tracker tracker(path, cfg, pooled, nchan);

    SpectralFlow f;
    f.closed = path.closed;
    f.channel_labels = pooled ? std::vector<Sector>{Sector::none} : nominal.front().labels;

    Sampled cur = tracker.at(0.0);

    // Lowest n_levels over all channels; ties ordered by channel.
    struct Ref {
        double k;
        int channel, idx;
    };
    auto ordered = [](const Lists& lists) {
        std::vector<Ref> refs;
        for (std::size_t c = 0; c < lists.size(); ++c)
            for (std::size_t i = 0; i < lists[c].size(); ++i)
                refs.push_back({lists[c][i], int(c), int(i)});
        std::stable_sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) {
            return a.k < b.k || (a.k == b.k && a.channel < b.channel);
        });
        return refs;
    };
    const auto start = ordered(cur.lists);
    if (int(start.size()) < n_levels)
        throw InvalidArgument("only " + std::to_string(start.size()) +
                              " levels below k_max; raise k_max");

    std::vector<Live> live;
    for (int i = 0; i < n_levels; ++i) {
        live.push_back({start[i].channel, start[i].idx});
        Track t;
        t.channel = start[i].channel;
        t.sector = f.channel_labels[start[i].channel];
        f.tracks.push_back(t);
        f.channel_start.push_back(start[i].idx);
    }

    auto record = [&](const Sampled& smp) {
        f.s.push_back(smp.s);
        f.path.push_back(smp.U);
        for (std::size_t i = 0; i < live.size(); ++i) {
            const auto& l = live[i];
            f.tracks[i].k.push_back(l.idx < 0 ? kNaN : smp.lists[l.channel][l.idx]);
        }
    };
    record(cur);

    std::function<void(const Sampled&, const Sampled&, int)> advance =
        [&](const Sampled& a, const Sampled& b, int depth) {
            std::vector<int> offset(nchan, 0);
            bool ok = true;
            for (std::size_t c = 0; c < nchan && ok; ++c) {
                // Levels below k = 0 keep the bottom of the channel under watch so they can
                // come back.
                int top = -1;
                for (const auto& l : live)
                    if (l.channel == int(c)) top = std::max(top, std::max(l.idx, 0));
                if (top < 0) continue;
                const auto o = match(a.lists[c], b.lists[c], top, cfg.root_tol);
                if (!o) ok = false;
                else offset[c] = *o;
            }
            if (!ok) {
                if (depth >= kMaxRefineDepth)
                    throw TrackingAmbiguity("no unambiguous continuation near s = " +
                                            std::to_string(a.s));
                ++f.refinements;
                const Sampled m = tracker.at(0.5 * (a.s + b.s));
                advance(a, m, depth + 1);
                advance(m, b, depth + 1);
                return;
            }
            for (std::size_t i = 0; i < live.size(); ++i) {
                auto& l = live[i];
                const int before = l.idx;
                l.idx += offset[l.channel];
                if (before >= 0 && l.idx < 0) f.tracks[i].exit_sample = int(f.s.size());
                if (l.idx >= 0) f.tracks[i].exit_sample = -1;
            }
            record(b);
        };

    for (int j = 1; j <= n_steps; ++j) {
        Sampled next = tracker.at(double(j) / n_steps);
        advance(cur, next, 0);
        cur = std::move(next);
    }

    const auto fin = ordered(cur.lists);
    std::map<std::pair<int, int>, int> position;
    for (std::size_t p = 0; p < fin.size(); ++p) position[{fin[p].channel, fin[p].idx}] = int(p);
    for (const auto& l : live) {
        f.channel_end.push_back(std::max(l.idx, -1));
        f.permutation.push_back(l.idx < 0 ? -1 : position.at({l.channel, l.idx}));
    }
    return f;
}

std::vector<int> channel_permutation(const SpectralFlow& f, int channel) {
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < f.tracks.size(); ++i)
        if (f.tracks[i].channel == channel) pairs.emplace_back(f.channel_start[i], f.channel_end[i]);
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> out;
    for (const auto& p : pairs) out.push_back(p.second);
    return out;
}

int find_channel(const SpectralFlow& f, Sector sector) {
    for (std::size_t c = 0; c < f.channel_labels.size(); ++c)
        if (f.channel_labels[c] == sector) return int(c);
    return -1;
}

std::optional<int> uniform_shift(const std::vector<int>& map) {
    if (map.empty()) return 0;
    int s = 0;
    if (map[0] >= 0)
        s = -map[0];
    else {
        while (s < int(map.size()) && map[s] < 0) ++s;
    }
    for (int i = 0; i < int(map.size()); ++i) {
        const int want = i - s < 0 ? -1 : i - s;
        if (map[i] != want) return std::nullopt;
    }
    return s;
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> out;
    for (int j : first)
        out.push_back(j < 0 || j >= int(second.size()) ? -1 : second[j]);
    return out;
}

}  // namespace pointline
