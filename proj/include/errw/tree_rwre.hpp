#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/random.hpp"
#include "errw/rational.hpp"
#include "errw/walk.hpp"

namespace errw {

// Per-vertex urns on an acyclic graph: one color per incident edge, counts
// aligned with the adjacency order of the vertex. Each draw returns the ball
// plus two more of the same color.
struct UrnState {
    const Graph* graph;
    std::vector<std::vector<Rational>> counts; // counts[v][i] for incident(v)[i]
};

namespace detail {

inline void require_tree(const Graph& g, const char* who) {
    if (!g.acyclic()) throw domain_error(std::string(who) + ": graph has a cycle");
    if (!g.connected()) throw domain_error(std::string(who) + ": graph is not connected");
}

// For each vertex other than the root, the incident-list index of the edge
// leading toward the root.
inline std::vector<std::size_t> edge_toward_root(const Graph& g, VertexId root) {
    std::vector<int> dist = g.bfs_distances(root);
    std::vector<std::size_t> toward(g.vertex_count(), 0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (v == root) continue;
        std::span<const IncidentEdge> inc = g.incident(v);
        bool found = false;
        for (std::size_t i = 0; i < inc.size(); ++i) {
            if (dist[inc[i].neighbor] == dist[v] - 1) {
                toward[v] = i;
                found = true;
                break;
            }
        }
        if (!found) throw domain_error("edge_toward_root: vertex unreachable from root");
    }
    return toward;
}

} // namespace detail

// Starting composition: a_e balls per incident edge everywhere, plus one
// extra ball at each non-start vertex on its edge toward the start (the
// crossing that first enters the vertex precedes any draw there).
inline UrnState urn_init(const Graph& g, VertexId v0, const InitialWeights& a) {
    detail::require_tree(g, "urn_init");
    if (v0 >= g.vertex_count()) throw domain_error("urn_init: unknown start vertex");
    if (a.size() != g.edge_count())
        throw domain_error("urn_init: weight vector does not match edge count");
    UrnState urns{&g, {}};
    urns.counts.resize(g.vertex_count());
    std::vector<std::size_t> toward = detail::edge_toward_root(g, v0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::span<const IncidentEdge> inc = g.incident(v);
        urns.counts[v].reserve(inc.size());
        for (const IncidentEdge& ie : inc) urns.counts[v].push_back(a.edge[ie.edge]);
        if (v != v0) urns.counts[v][toward[v]] += 1;
    }
    return urns;
}

// Urn dynamics: at each visit draw a color with probability proportional to
// its count, move along that edge, and add two balls of the drawn color.
inline Trajectory simulate_via_urns(UrnState& urns, VertexId v0, std::uint64_t steps,
                                    RandomSource& rng) {
    const Graph& g = *urns.graph;
    if (v0 >= g.vertex_count()) throw domain_error("simulate_via_urns: unknown start vertex");
    Trajectory traj;
    traj.vertices.reserve(steps + 1);
    traj.vertices.push_back(v0);
    VertexId pos = v0;
    for (std::uint64_t s = 0; s < steps; ++s) {
        std::span<const IncidentEdge> inc = g.incident(pos);
        std::vector<Rational>& urn = urns.counts[pos];
        double total = 0.0;
        for (const Rational& c : urn) total += to_double(c);
        double target = rng.uniform01() * total;
        std::size_t pick = urn.size() - 1;
        double acc = 0.0;
        for (std::size_t i = 0; i < urn.size(); ++i) {
            acc += to_double(urn[i]);
            if (target < acc) {
                pick = i;
                break;
            }
        }
        urn[pick] += 2;
        pos = inc[pick].neighbor;
        traj.vertices.push_back(pos);
    }
    return traj;
}

// Exact probability that the urn dynamics produce the given path.
inline Rational urn_path_probability(const Graph& g, VertexId v0, const InitialWeights& a,
                                     const Trajectory& traj) {
    if (traj.vertices.empty() || traj.start() != v0)
        throw domain_error("urn_path_probability: path must start at the urn start vertex");
    UrnState urns = urn_init(g, v0, a);
    Rational p = 1;
    for (std::size_t s = 0; s + 1 < traj.vertices.size(); ++s) {
        VertexId u = traj.vertices[s], v = traj.vertices[s + 1];
        std::span<const IncidentEdge> inc = g.incident(u);
        std::vector<Rational>& urn = urns.counts[u];
        Rational total = 0;
        std::size_t pick = inc.size();
        for (std::size_t i = 0; i < inc.size(); ++i) {
            total += urn[i];
            if (inc[i].neighbor == v) pick = i;
        }
        if (pick == inc.size())
            throw domain_error("urn_path_probability: path step is not an edge");
        p *= urn[pick] / total;
        urn[pick] += 2;
    }
    return p;
}

// Independent Dirichlet prior on the transition probabilities at each
// vertex; parameters are the urn starting counts divided by the
// reinforcement increment 2.
struct DirichletEnvironment {
    const Graph* graph;
    VertexId v0;
    std::vector<std::vector<Rational>> parameters; // aligned with incident(v)
};

inline DirichletEnvironment dirichlet_parameters(const Graph& g, VertexId v0,
                                                 const InitialWeights& a) {
    UrnState urns = urn_init(g, v0, a);
    DirichletEnvironment env{&g, v0, std::move(urns.counts)};
    for (std::vector<Rational>& row : env.parameters)
        for (Rational& c : row) c /= 2;
    return env;
}

// Exact path probability under the random environment: independent
// Dirichlet-distributed transition rows make the annealed law a product of
// one urn sequence probability per vertex (over that vertex's departures).
inline Rational rwre_path_probability(const Graph& g, VertexId v0, const InitialWeights& a,
                                      const Trajectory& traj) {
    if (traj.vertices.empty() || traj.start() != v0)
        throw domain_error("rwre_path_probability: path must start at the environment start");
    DirichletEnvironment env = dirichlet_parameters(g, v0, a);
    std::vector<std::vector<std::uint64_t>> draws(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) draws[v].assign(g.degree(v), 0);
    Rational p = 1;
    for (std::size_t s = 0; s + 1 < traj.vertices.size(); ++s) {
        VertexId u = traj.vertices[s], v = traj.vertices[s + 1];
        std::span<const IncidentEdge> inc = g.incident(u);
        std::size_t pick = inc.size();
        for (std::size_t i = 0; i < inc.size(); ++i)
            if (inc[i].neighbor == v) pick = i;
        if (pick == inc.size())
            throw domain_error("rwre_path_probability: path step is not an edge");
        Rational row_total = 0;
        std::uint64_t row_draws = 0;
        for (std::size_t i = 0; i < inc.size(); ++i) {
            row_total += env.parameters[u][i];
            row_draws += draws[u][i];
        }
        p *= (env.parameters[u][pick] + Rational(static_cast<long>(draws[u][pick]))) /
             (row_total + Rational(static_cast<long>(row_draws)));
        ++draws[u][pick];
    }
    return p;
}

// One independent Dirichlet draw per vertex: transition probabilities over
// the incident edges, in adjacency order.
inline std::vector<std::vector<double>> sample_environment(const DirichletEnvironment& env,
                                                           RandomSource& rng) {
    const Graph& g = *env.graph;
    std::vector<std::vector<double>> rows(g.vertex_count());
    std::vector<double> alpha;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        alpha.clear();
        for (const Rational& c : env.parameters[v]) alpha.push_back(to_double(c));
        rows[v].resize(alpha.size());
        rng.dirichlet(alpha, rows[v]);
    }
    return rows;
}

} // namespace errw
