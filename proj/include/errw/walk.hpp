#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/random.hpp"
#include "errw/rational.hpp"
#include "errw/simplex.hpp"

namespace errw {

// Strictly positive starting edge weights. Kept as exact rationals; the
// simulator uses the cached double mirror.
struct InitialWeights {
    std::vector<Rational> edge;
    std::vector<double> edge_double;

    static InitialWeights from(std::vector<Rational> values) {
        InitialWeights w;
        for (const Rational& v : values)
            if (v <= 0) throw domain_error("InitialWeights: entries must be strictly positive");
        w.edge = std::move(values);
        w.edge_double.reserve(w.edge.size());
        for (const Rational& v : w.edge) w.edge_double.push_back(to_double(v));
        return w;
    }

    static InitialWeights uniform(const Graph& g, const Rational& a) {
        return from(std::vector<Rational>(g.edge_count(), a));
    }

    Rational vertex_sum(const Graph& g, VertexId v) const {
        return vertex_weight<Rational>(g, std::span<const Rational>(edge), v);
    }

    std::size_t size() const { return edge.size(); }
};

// Recorded path (X_0, ..., X_t).
struct Trajectory {
    std::vector<VertexId> vertices;

    VertexId start() const { return vertices.front(); }
    VertexId current() const { return vertices.back(); }
    std::uint64_t length() const { return vertices.size() - 1; } // number of steps
};

// Live reinforced-walk state: position, time, per-edge crossing counts and
// per-vertex local times. The weight of edge e at time t is a_e plus its
// crossing count. Single-owner; independent runs parallelize over seeds.
class WalkState {
public:
    WalkState(const Graph& g, VertexId v0, InitialWeights a)
        : graph_(&g),
          a_(std::move(a)),
          position_(v0),
          start_(v0),
          edge_count_(g.edge_count(), 0),
          vertex_count_(g.vertex_count(), 0),
          vertex_cross_(g.vertex_count(), 0) {
        if (v0 >= g.vertex_count()) throw domain_error("init_walk: unknown start vertex");
        if (a_.size() != g.edge_count())
            throw domain_error("init_walk: weight vector does not match edge count");
        vertex_count_[v0] = 1;
        vertex_base_.resize(g.vertex_count());
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            double s = 0.0;
            for (const IncidentEdge& ie : g.incident(v)) s += a_.edge_double[ie.edge];
            vertex_base_[v] = s;
        }
    }

    const Graph& graph() const { return *graph_; }
    const InitialWeights& initial_weights() const { return a_; }
    VertexId position() const { return position_; }
    VertexId start() const { return start_; }
    std::uint64_t time() const { return time_; }
    std::uint64_t edge_crossings(EdgeId e) const { return edge_count_.at(e); }
    std::uint64_t vertex_visits(VertexId v) const { return vertex_count_.at(v); }
    std::span<const std::uint64_t> edge_crossings() const { return edge_count_; }

    double weight(EdgeId e) const {
        return a_.edge_double[e] + static_cast<double>(edge_count_[e]);
    }

    Rational weight_exact(EdgeId e) const {
        return a_.edge[e] + Rational(static_cast<long>(edge_count_[e]));
    }

    // Exact one-step law at the current position: pairs (neighbor, probability).
    std::vector<std::pair<VertexId, Rational>> step_distribution() const {
        std::vector<std::pair<VertexId, Rational>> out;
        Rational total = 0;
        for (const IncidentEdge& ie : graph_->incident(position_)) total += weight_exact(ie.edge);
        if (total == 0) throw domain_error("step: isolated vertex");
        for (const IncidentEdge& ie : graph_->incident(position_))
            out.emplace_back(ie.neighbor, weight_exact(ie.edge) / total);
        return out;
    }

    // One reinforced step: choose an incident edge with probability
    // proportional to its weight (cumulative scan in adjacency order),
    // traverse it and increment its weight.
    VertexId step(RandomSource& rng) {
        std::span<const IncidentEdge> inc = graph_->incident(position_);
        if (inc.empty()) throw domain_error("step: isolated vertex");
        double total = vertex_base_[position_] + static_cast<double>(vertex_cross_[position_]);
        double target = rng.uniform01() * total;
        EdgeId chosen = inc.back().edge;
        VertexId next = inc.back().neighbor;
        double acc = 0.0;
        for (const IncidentEdge& ie : inc) {
            acc += a_.edge_double[ie.edge] + static_cast<double>(edge_count_[ie.edge]);
            if (target < acc) {
                chosen = ie.edge;
                next = ie.neighbor;
                break;
            }
        }
        ++edge_count_[chosen];
        EdgeEndpoints ee = graph_->endpoints(chosen);
        ++vertex_cross_[ee.tail];
        ++vertex_cross_[ee.head];
        position_ = next;
        ++vertex_count_[next];
        ++time_;
        return next;
    }

    // Deterministic variant of step(): traverse the edge to `next` (which
    // must be adjacent) and reinforce it. Used to replay observed data.
    VertexId force_step(VertexId next) {
        auto e = graph_->edge_between(position_, next);
        if (!e)
            throw domain_error("force_step: {" + graph_->vertex_name(position_) + "," +
                               graph_->vertex_name(next) + "} is not an edge");
        ++edge_count_[*e];
        EdgeEndpoints ee = graph_->endpoints(*e);
        ++vertex_cross_[ee.tail];
        ++vertex_cross_[ee.head];
        position_ = next;
        ++vertex_count_[next];
        ++time_;
        return next;
    }

    // Runs `steps` reinforced steps, appending to `record` when given.
    void run(std::uint64_t steps, RandomSource& rng, Trajectory* record = nullptr) {
        if (record && record->vertices.empty()) record->vertices.push_back(position_);
        for (std::uint64_t i = 0; i < steps; ++i) {
            VertexId v = step(rng);
            if (record) record->vertices.push_back(v);
        }
    }

private:
    const Graph* graph_;
    InitialWeights a_;
    VertexId position_;
    VertexId start_;
    std::uint64_t time_ = 0;
    std::vector<std::uint64_t> edge_count_;
    std::vector<std::uint64_t> vertex_count_;
    std::vector<std::uint64_t> vertex_cross_; // per-vertex sum of incident edge crossings
    std::vector<double> vertex_base_;         // per-vertex sum of initial weights
};

inline Trajectory simulate(const Graph& g, VertexId v0, const InitialWeights& a,
                           std::uint64_t steps, RandomSource& rng) {
    WalkState state(g, v0, a);
    Trajectory traj;
    state.run(steps, rng, &traj);
    return traj;
}

// Crossing counts k_t(e) of a recorded path. Throws if a step is not an edge.
inline std::vector<std::uint64_t> edge_crossing_counts(const Graph& g, const Trajectory& traj) {
    std::vector<std::uint64_t> k(g.edge_count(), 0);
    for (std::size_t i = 0; i + 1 < traj.vertices.size(); ++i) {
        auto e = g.edge_between(traj.vertices[i], traj.vertices[i + 1]);
        if (!e)
            throw domain_error("trajectory step {" + g.vertex_name(traj.vertices[i]) + "," +
                               g.vertex_name(traj.vertices[i + 1]) + "} is not an edge");
        ++k[*e];
    }
    return k;
}

// Occupation fractions k_t(e)/t as doubles (sums to 1 up to rounding).
inline SimplexWeights occupation_fractions(const Graph& g, const Trajectory& traj) {
    std::uint64_t t = traj.length();
    if (t == 0) throw domain_error("occupation_fractions: undefined at t = 0");
    std::vector<std::uint64_t> k = edge_crossing_counts(g, traj);
    std::vector<double> x(k.size());
    for (std::size_t e = 0; e < k.size(); ++e)
        x[e] = static_cast<double>(k[e]) / static_cast<double>(t);
    return SimplexWeights{std::move(x), true};
}

// Exact occupation fractions; entries sum to exactly 1.
inline std::vector<Rational> occupation_fractions_exact(const Graph& g, const Trajectory& traj) {
    std::uint64_t t = traj.length();
    if (t == 0) throw domain_error("occupation_fractions: undefined at t = 0");
    std::vector<std::uint64_t> k = edge_crossing_counts(g, traj);
    std::vector<Rational> x;
    x.reserve(k.size());
    for (std::uint64_t c : k) x.push_back(rational(static_cast<long>(c), static_cast<long>(t)));
    return x;
}

// Signed edge-crossing counts of the path (its current vector), and the
// diffusively rescaled version (divided by sqrt(t)).
struct ChainVectors {
    std::vector<long> path_current;  // per edge, signed by counting direction
    std::vector<double> rescaled;
};

inline ChainVectors chain_vector(const Graph& g, const Trajectory& traj) {
    std::uint64_t t = traj.length();
    if (t == 0) throw domain_error("chain_vector: undefined at t = 0");
    ChainVectors cv;
    cv.path_current.assign(g.edge_count(), 0);
    for (std::size_t i = 0; i + 1 < traj.vertices.size(); ++i) {
        VertexId u = traj.vertices[i], v = traj.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e) throw domain_error("chain_vector: trajectory step is not an edge");
        EdgeEndpoints ee = g.endpoints(*e);
        cv.path_current[*e] += (ee.tail == u) ? 1 : -1;
    }
    double scale = 1.0 / std::sqrt(static_cast<double>(t));
    cv.rescaled.resize(cv.path_current.size());
    for (std::size_t e = 0; e < cv.path_current.size(); ++e)
        cv.rescaled[e] = static_cast<double>(cv.path_current[e]) * scale;
    return cv;
}

// For each visited vertex except the current position, the edge of its final
// departure. Always acyclic; spanning for large t on connected graphs.
inline std::vector<EdgeId> last_exit_tree(const Graph& g, const Trajectory& traj) {
    if (traj.vertices.empty()) throw domain_error("last_exit_tree: empty trajectory");
    std::vector<std::int64_t> last_visit(g.vertex_count(), -1);
    for (std::size_t i = 0; i < traj.vertices.size(); ++i)
        last_visit[traj.vertices[i]] = static_cast<std::int64_t>(i);
    std::vector<EdgeId> edges;
    std::size_t t = traj.vertices.size() - 1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::int64_t i = last_visit[v];
        if (i < 0 || static_cast<std::size_t>(i) == t) continue;
        auto e = g.edge_between(traj.vertices[i], traj.vertices[i + 1]);
        if (!e) throw domain_error("last_exit_tree: trajectory step is not an edge");
        edges.push_back(*e);
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Number of times v is hit after time 0.
inline std::uint64_t return_count(const Trajectory& traj, VertexId v) {
    std::uint64_t n = 0;
    for (std::size_t i = 1; i < traj.vertices.size(); ++i)
        if (traj.vertices[i] == v) ++n;
    return n;
}

} // namespace errw
