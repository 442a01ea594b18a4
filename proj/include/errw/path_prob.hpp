#pragma once

#include <cstdint>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/rational.hpp"
#include "errw/walk.hpp"

namespace errw {

// Exact probability that the reinforced walk started at traj.start() with
// weights `a` follows the recorded path, computed as the product of one-step
// conditionals w_t(e) / w_t(v).
inline Rational path_probability(const Graph& g, const InitialWeights& a, const Trajectory& traj) {
    if (a.size() != g.edge_count())
        throw domain_error("path_probability: weight vector does not match edge count");
    if (traj.vertices.empty()) throw domain_error("path_probability: empty trajectory");
    std::vector<std::uint64_t> k(g.edge_count(), 0);
    std::vector<std::uint64_t> s(g.vertex_count(), 0); // per-vertex sum of incident counts
    std::vector<Rational> base(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) base[v] = a.vertex_sum(g, v);
    Rational p = 1;
    for (std::size_t i = 0; i + 1 < traj.vertices.size(); ++i) {
        VertexId u = traj.vertices[i], v = traj.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e)
            throw domain_error("path_probability: step {" + g.vertex_name(u) + "," +
                               g.vertex_name(v) + "} is not an edge");
        Rational num = a.edge[*e] + Rational(static_cast<long>(k[*e]));
        Rational den = base[u] + Rational(static_cast<long>(s[u]));
        p *= num / den;
        ++k[*e];
        EdgeEndpoints ee = g.endpoints(*e);
        ++s[ee.tail];
        ++s[ee.head];
    }
    return p;
}

// Same probability in product form: it depends on the path only through the
// crossing counts and the endpoints. Each edge contributes the rising product
// a_e (a_e+1) ... (a_e+k(e)-1); the j-th departure from v contributes a
// denominator factor a_v + 2(j-1), plus one extra for each arrival that
// preceded the departure (every departure from v != start has one).
inline Rational path_probability_closed_form(const Graph& g, const InitialWeights& a,
                                             const Trajectory& traj) {
    if (a.size() != g.edge_count())
        throw domain_error("path_probability: weight vector does not match edge count");
    if (traj.vertices.empty()) throw domain_error("path_probability: empty trajectory");
    std::vector<std::uint64_t> k = edge_crossing_counts(g, traj);
    Rational num = 1;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (std::uint64_t i = 0; i < k[e]; ++i)
            num *= a.edge[e] + Rational(static_cast<long>(i));
    VertexId v0 = traj.start();
    VertexId vt = traj.current();
    Rational den = 1;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::uint64_t s = 0;
        for (const IncidentEdge& ie : g.incident(v)) s += k[ie.edge];
        std::uint64_t departures = (s + (v == v0 ? 1 : 0) - (v == vt ? 1 : 0)) / 2;
        Rational av = a.vertex_sum(g, v);
        Rational offset = (v == v0) ? Rational(0) : Rational(1);
        for (std::uint64_t j = 0; j < departures; ++j)
            den *= av + offset + Rational(static_cast<long>(2 * j));
    }
    return num / den;
}

} // namespace errw
