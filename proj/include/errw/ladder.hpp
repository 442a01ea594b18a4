#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/random.hpp"
#include "errw/stats.hpp"

namespace errw {

// One edge of a lazily materialized lattice, identified by the coordinates
// of its endpoints: (au, af) is the lexicographically smaller endpoint. On
// strips the pair is (level, fiber vertex) and kind 0 means a level edge,
// kind 1 a rung inside a fiber; on the plane the pair is (x, y) and kind 0
// means horizontal, kind 1 vertical.
struct LatticeEdgeInfo {
    std::int32_t au, af, bu, bf;
    std::uint8_t kind;
};

// Infinite strip Z x F for a finite tree fiber F (a path {0..d-1} for width
// d), or the square lattice Z^2. Vertices and edges are materialized on
// demand; the materialized portion always covers the 1-neighborhood of every
// visited vertex. The incident edges of a vertex are kept sorted by the
// (level, fiber) coordinates of the far endpoint, which fixes the sampling
// scan order independently of the visit order.
class LazyLattice {
public:
    static LazyLattice strip(int width) {
        if (width < 1) throw domain_error("lattice: width must be at least 1");
        std::vector<std::vector<std::int32_t>> fiber(width);
        for (int i = 0; i + 1 < width; ++i) {
            fiber[i].push_back(i + 1);
            fiber[i + 1].push_back(i);
        }
        for (auto& row : fiber) std::sort(row.begin(), row.end());
        return LazyLattice(std::move(fiber), false);
    }

    static LazyLattice tree_fiber(const Graph& fiber) {
        if (!fiber.acyclic() || !fiber.connected())
            throw domain_error("lattice: fiber must be a tree");
        std::vector<std::vector<std::int32_t>> adj(fiber.vertex_count());
        for (VertexId v = 0; v < fiber.vertex_count(); ++v)
            for (const IncidentEdge& ie : fiber.incident(v))
                adj[v].push_back(static_cast<std::int32_t>(ie.neighbor));
        return LazyLattice(std::move(adj), false);
    }

    static LazyLattice plane() { return LazyLattice({}, true); }

    bool is_plane() const { return plane_; }
    std::int32_t start() const { return start_; }
    std::size_t vertex_count() const { return level_.size(); }
    std::size_t edge_count() const { return edge_info_.size(); }
    const std::vector<LatticeEdgeInfo>& edge_info() const { return edge_info_; }
    const std::vector<std::uint64_t>& edge_crossings() const { return edge_count_; }

    std::int32_t level_of(std::int32_t v) const { return level_[v]; }
    std::int32_t fiber_of(std::int32_t v) const { return fiber_[v]; }

    std::int64_t displacement(std::int32_t v) const {
        std::int64_t l = std::abs(static_cast<std::int64_t>(level_[v]));
        if (plane_) l += std::abs(static_cast<std::int64_t>(fiber_[v]));
        return l;
    }

    // One reinforced step with uniform initial weight a; returns the new
    // position. Sampling matches the finite-graph walk: one uniform draw,
    // cumulative scan over incident edges in coordinate order.
    std::int32_t step(double a, RandomSource& rng) {
        const std::int32_t base = pos_ * stride_;
        const int deg = degree_[pos_];
        double total = a * deg + static_cast<double>(cross_sum_[pos_]);
        double target = rng.uniform01() * total;
        int pick = deg - 1;
        double acc = 0.0;
        for (int s = 0; s < deg; ++s) {
            acc += a + static_cast<double>(edge_count_[slot_edge_[base + s]]);
            if (target < acc) {
                pick = s;
                break;
            }
        }
        std::int32_t e = slot_edge_[base + pick];
        std::int32_t nxt = slot_neighbor_[base + pick];
        ++edge_count_[e];
        ++cross_sum_[pos_];
        ++cross_sum_[nxt];
        pos_ = nxt;
        if (!expanded_[nxt]) expand(nxt);
        return nxt;
    }

    std::int32_t position() const { return pos_; }

private:
    LazyLattice(std::vector<std::vector<std::int32_t>> fiber_adj, bool plane)
        : plane_(plane), fiber_adj_(std::move(fiber_adj)) {
        int max_fiber_deg = 0;
        for (const auto& row : fiber_adj_)
            max_fiber_deg = std::max(max_fiber_deg, static_cast<int>(row.size()));
        stride_ = plane_ ? 4 : 2 + max_fiber_deg;
        start_ = intern(0, 0);
        expand(start_);
        pos_ = start_;
    }

    static std::int64_t key(std::int32_t level, std::int32_t fiber) {
        return (static_cast<std::int64_t>(level) << 32) |
               static_cast<std::uint32_t>(fiber);
    }

    std::int32_t intern(std::int32_t level, std::int32_t fiber) {
        auto [it, fresh] = ids_.try_emplace(key(level, fiber), 0);
        if (!fresh) return it->second;
        std::int32_t id = static_cast<std::int32_t>(level_.size());
        it->second = id;
        level_.push_back(level);
        fiber_.push_back(fiber);
        expanded_.push_back(0);
        degree_.push_back(0);
        cross_sum_.push_back(0);
        slot_edge_.resize(slot_edge_.size() + stride_, -1);
        slot_neighbor_.resize(slot_neighbor_.size() + stride_, -1);
        return id;
    }

    void expand(std::int32_t v) {
        expanded_[v] = 1;
        std::int32_t lvl = level_[v], fib = fiber_[v];
        // Neighbor coordinates in lexicographic (level, fiber) order.
        std::int32_t nb[8][2];
        int n = 0;
        if (plane_) {
            nb[n][0] = lvl - 1, nb[n][1] = fib, ++n;
            nb[n][0] = lvl, nb[n][1] = fib - 1, ++n;
            nb[n][0] = lvl, nb[n][1] = fib + 1, ++n;
            nb[n][0] = lvl + 1, nb[n][1] = fib, ++n;
        } else {
            nb[n][0] = lvl - 1, nb[n][1] = fib, ++n;
            for (std::int32_t j : fiber_adj_[fib]) nb[n][0] = lvl, nb[n][1] = j, ++n;
            nb[n][0] = lvl + 1, nb[n][1] = fib, ++n;
        }
        int deg = 0;
        for (int s = 0; s < n; ++s) {
            std::int32_t u = intern(nb[s][0], nb[s][1]);
            std::int32_t e = -1;
            if (expanded_[u]) {
                std::int32_t ub = u * stride_;
                for (int k = 0; k < degree_[u]; ++k)
                    if (slot_neighbor_[ub + k] == v) {
                        e = slot_edge_[ub + k];
                        break;
                    }
            }
            if (e < 0) {
                e = static_cast<std::int32_t>(edge_info_.size());
                LatticeEdgeInfo info;
                bool v_first = lvl < nb[s][0] || (lvl == nb[s][0] && fib < nb[s][1]);
                info.au = v_first ? lvl : nb[s][0];
                info.af = v_first ? fib : nb[s][1];
                info.bu = v_first ? nb[s][0] : lvl;
                info.bf = v_first ? nb[s][1] : fib;
                info.kind = (nb[s][0] == lvl) ? 1 : 0;
                edge_info_.push_back(info);
                edge_count_.push_back(0);
            }
            slot_edge_[v * stride_ + deg] = e;
            slot_neighbor_[v * stride_ + deg] = u;
            ++deg;
        }
        degree_[v] = deg;
    }

    bool plane_;
    std::vector<std::vector<std::int32_t>> fiber_adj_;
    int stride_ = 0;
    std::int32_t start_ = 0;
    std::int32_t pos_ = 0;
    std::unordered_map<std::int64_t, std::int32_t> ids_;
    std::vector<std::int32_t> level_, fiber_;
    std::vector<std::uint8_t> expanded_;
    std::vector<std::int32_t> degree_;
    std::vector<std::uint64_t> cross_sum_;
    std::vector<std::int32_t> slot_edge_, slot_neighbor_;
    std::vector<LatticeEdgeInfo> edge_info_;
    std::vector<std::uint64_t> edge_count_;
};

struct LadderCheckpoint {
    std::uint64_t t;
    std::int64_t max_distance;  // running maximum of the displacement
    std::uint64_t returns;      // cumulative returns to the start
    std::int64_t displacement;  // displacement at exactly time t
};

// Streaming summary of one long run: final edge counts with coordinates,
// checkpointed traces, and the raw material for the decay/tail/range fits.
// Checkpoints are geometric with ratio 2 from t = 2^10, plus the final time.
struct LadderStats {
    std::uint64_t steps = 0;
    double a = 0.0;
    bool plane = false;
    std::vector<LadderCheckpoint> checkpoints;
    std::vector<LatticeEdgeInfo> edges;
    std::vector<std::uint64_t> counts;
    std::uint64_t returns_total = 0;
    std::int64_t max_distance = 0;

    double occupation_fraction(std::size_t e) const {
        return static_cast<double>(counts[e]) / static_cast<double>(steps);
    }
};

// Distance of an edge from the start, by the displacement convention of the
// lattice: smaller endpoint displacement.
inline std::int64_t lattice_edge_distance(const LatticeEdgeInfo& e, bool plane) {
    auto disp = [plane](std::int32_t u, std::int32_t f) {
        std::int64_t d = std::abs(static_cast<std::int64_t>(u));
        if (plane) d += std::abs(static_cast<std::int64_t>(f));
        return d;
    };
    return std::min(disp(e.au, e.af), disp(e.bu, e.bf));
}

inline constexpr std::uint64_t kFirstCheckpoint = 1024;

inline LadderStats long_run(LazyLattice& lattice, double a, std::uint64_t steps,
                            RandomSource& rng) {
    if (!(a > 0.0)) throw domain_error("long_run: initial weight must be positive");
    LadderStats stats;
    stats.a = a;
    stats.steps = steps;
    stats.plane = lattice.is_plane();
    const std::int32_t start = lattice.start();
    std::uint64_t returns = 0;
    std::int64_t maxd = 0;
    std::uint64_t next_cp = kFirstCheckpoint;
    for (std::uint64_t t = 1; t <= steps; ++t) {
        std::int32_t v = lattice.step(a, rng);
        std::int64_t d = lattice.displacement(v);
        if (d > maxd) maxd = d;
        returns += (v == start) ? 1 : 0;
        if (t == next_cp) {
            stats.checkpoints.push_back({t, maxd, returns, d});
            next_cp <<= 1;
        }
    }
    if (steps > 0 && (stats.checkpoints.empty() || stats.checkpoints.back().t != steps))
        stats.checkpoints.push_back(
            {steps, maxd, returns, lattice.displacement(lattice.position())});
    stats.edges = lattice.edge_info();
    stats.counts = lattice.edge_crossings();
    stats.returns_total = returns;
    stats.max_distance = maxd;
    return stats;
}

struct DecayFit {
    double slope = 0.0;     // fitted d(log max occupation)/d(distance)
    double intercept = 0.0;
    std::size_t levels = 0; // distinct distances entering the fit
};

// Least-squares fit of log(max occupation fraction at distance r) against r.
// Exponential weight decay shows up as a strictly negative slope.
inline DecayFit decay_fit(const LadderStats& stats) {
    std::map<std::int64_t, double> best;
    for (std::size_t e = 0; e < stats.edges.size(); ++e) {
        if (stats.counts[e] == 0) continue;
        std::int64_t r = lattice_edge_distance(stats.edges[e], stats.plane);
        double f = stats.occupation_fraction(e);
        auto [it, fresh] = best.try_emplace(r, f);
        if (!fresh && f > it->second) it->second = f;
    }
    if (best.size() < 10)
        throw degenerate_fit_error("decay_fit: need at least 10 distinct distances");
    std::vector<double> xs, ys;
    xs.reserve(best.size());
    ys.reserve(best.size());
    for (const auto& [r, f] : best) {
        xs.push_back(static_cast<double>(r));
        ys.push_back(std::log(f));
    }
    LineFit fit = fit_line(xs, ys);
    return DecayFit{fit.slope, fit.intercept, best.size()};
}

struct TailProfile {
    std::vector<std::pair<std::int64_t, double>> table; // (n, fraction of samples >= n)
    double slope = 0.0;
    bool slope_valid = false;
};

// Empirical tail of the displacement, pooled over the checkpoint samples
// (the underlying bound is uniform in time, so pooling is legitimate), with
// a log-linear fit over n >= 1.
inline TailProfile tail_profile(const LadderStats& stats) {
    if (stats.checkpoints.empty()) throw domain_error("tail_profile: no checkpoints recorded");
    std::vector<std::int64_t> samples;
    samples.reserve(stats.checkpoints.size());
    std::int64_t maxn = 0;
    for (const LadderCheckpoint& cp : stats.checkpoints) {
        samples.push_back(cp.displacement);
        maxn = std::max(maxn, cp.displacement);
    }
    TailProfile prof;
    std::vector<double> xs, ys;
    for (std::int64_t n = 0; n <= maxn; ++n) {
        std::size_t count = 0;
        for (std::int64_t s : samples)
            if (s >= n) ++count;
        double tail = static_cast<double>(count) / static_cast<double>(samples.size());
        prof.table.emplace_back(n, tail);
        if (n >= 1 && tail > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(tail));
        }
    }
    if (xs.size() >= 2) {
        bool distinct = false;
        for (double v : xs)
            if (v != xs.front()) distinct = true;
        if (distinct) {
            LineFit fit = fit_line(xs, ys);
            prof.slope = fit.slope;
            prof.slope_valid = true;
        }
    }
    return prof;
}

struct RangeTrace {
    std::vector<std::pair<std::uint64_t, std::int64_t>> table; // (t, running max distance)
    double slope = 0.0;     // fitted d(range)/d(ln t)
    double intercept = 0.0;
    bool fit_valid = false;
};

// Running maximum displacement at the checkpoints with a least-squares fit
// of range against ln t; logarithmic range growth means a finite positive
// slope.
inline RangeTrace range_trace(const LadderStats& stats) {
    RangeTrace trace;
    std::vector<double> xs, ys;
    for (const LadderCheckpoint& cp : stats.checkpoints) {
        trace.table.emplace_back(cp.t, cp.max_distance);
        xs.push_back(std::log(static_cast<double>(cp.t)));
        ys.push_back(static_cast<double>(cp.max_distance));
    }
    if (xs.size() >= 2) {
        LineFit fit = fit_line(xs, ys);
        trace.slope = fit.slope;
        trace.intercept = fit.intercept;
        trace.fit_valid = true;
    }
    return trace;
}

// Reinforced run on the square lattice, keeping the sparse per-edge crossing
// counts for heatmap export. No recurrence claim is attached to this.
inline LadderStats z2_occupation(double a, std::uint64_t steps, RandomSource& rng) {
    if (steps < 1) throw domain_error("z2_occupation: need at least one step");
    LazyLattice lattice = LazyLattice::plane();
    return long_run(lattice, a, steps, rng);
}

} // namespace errw
