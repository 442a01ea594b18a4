#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/path_prob.hpp"
#include "errw/rational.hpp"
#include "errw/walk.hpp"

namespace errw {

// Prior for the reversible-chain model: indexed by a start vertex and one
// positive weight per edge. Closed under observing a path (see
// posterior_update).
struct PriorParams {
    const Graph* graph;
    VertexId v0;
    InitialWeights a;
};

inline PriorParams make_prior(const Graph& g, VertexId v0, InitialWeights a) {
    if (v0 >= g.vertex_count()) throw domain_error("prior: unknown start vertex");
    if (a.size() != g.edge_count())
        throw domain_error("prior: weight vector does not match edge count");
    return PriorParams{&g, v0, std::move(a)};
}

namespace detail {

inline void require_starts_at(const PriorParams& prior, const Trajectory& data) {
    if (data.vertices.empty()) throw domain_error("observed sequence is empty");
    if (data.start() != prior.v0)
        throw domain_error("observed sequence does not start at the prior's start vertex");
}

} // namespace detail

// Observing a path moves the start to its endpoint and adds the crossing
// counts to the edge weights; the family is closed under this update.
inline PriorParams posterior_update(const PriorParams& prior, const Trajectory& data) {
    detail::require_starts_at(prior, data);
    const Graph& g = *prior.graph;
    std::vector<std::uint64_t> k = edge_crossing_counts(g, data);
    std::vector<Rational> updated = prior.a.edge;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        updated[e] += Rational(static_cast<long>(k[e]));
    return PriorParams{&g, data.current(), InitialWeights::from(std::move(updated))};
}

// Prior predictive probability of the observed path under the reversible
// mixture model; identical to the reinforced-walk path probability.
inline Rational marginal_likelihood(const PriorParams& prior, const Trajectory& data) {
    detail::require_starts_at(prior, data);
    return path_probability_closed_form(*prior.graph, prior.a, data);
}

inline double log_marginal_likelihood(const PriorParams& prior, const Trajectory& data) {
    detail::require_starts_at(prior, data);
    const Graph& g = *prior.graph;
    std::vector<std::uint64_t> k(g.edge_count(), 0);
    std::vector<std::uint64_t> s(g.vertex_count(), 0);
    std::vector<double> base(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        base[v] = to_double(prior.a.vertex_sum(g, v));
    double lp = 0.0;
    for (std::size_t i = 0; i + 1 < data.vertices.size(); ++i) {
        VertexId u = data.vertices[i], v = data.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e) throw domain_error("observed sequence steps along a non-edge");
        lp += std::log(prior.a.edge_double[*e] + static_cast<double>(k[*e]));
        lp -= std::log(base[u] + static_cast<double>(s[u]));
        ++k[*e];
        EdgeEndpoints ee = g.endpoints(*e);
        ++s[ee.tail];
        ++s[ee.head];
    }
    return lp;
}

// Competitor model: states drawn i.i.d. from an unknown distribution with a
// Dirichlet prior (one parameter per vertex), conditioned on the first
// state. The predictive is the usual sequential urn product, so adjacency is
// not required.
inline Rational iid_marginal_likelihood(const Graph& g, std::span<const Rational> dirichlet,
                                        const Trajectory& data) {
    if (dirichlet.size() != g.vertex_count())
        throw domain_error("iid model: need one Dirichlet parameter per state");
    for (const Rational& v : dirichlet)
        if (v <= 0) throw domain_error("iid model: Dirichlet parameters must be positive");
    if (data.vertices.empty()) throw domain_error("observed sequence is empty");
    for (VertexId v : data.vertices)
        if (v >= g.vertex_count()) throw domain_error("iid model: unknown state");
    Rational total = 0;
    for (const Rational& v : dirichlet) total += v;
    std::vector<std::uint64_t> count(g.vertex_count(), 0);
    Rational p = 1;
    for (std::size_t i = 1; i < data.vertices.size(); ++i) {
        VertexId v = data.vertices[i];
        p *= (dirichlet[v] + Rational(static_cast<long>(count[v]))) /
             (total + Rational(static_cast<long>(i - 1)));
        ++count[v];
    }
    return p;
}

inline double log_iid_marginal_likelihood(const Graph& g, std::span<const Rational> dirichlet,
                                          const Trajectory& data) {
    if (dirichlet.size() != g.vertex_count())
        throw domain_error("iid model: need one Dirichlet parameter per state");
    for (const Rational& v : dirichlet)
        if (v <= 0) throw domain_error("iid model: Dirichlet parameters must be positive");
    if (data.vertices.empty()) throw domain_error("observed sequence is empty");
    double total = 0.0;
    for (const Rational& v : dirichlet) total += to_double(v);
    std::vector<std::uint64_t> count(g.vertex_count(), 0);
    double lp = 0.0;
    for (std::size_t i = 1; i < data.vertices.size(); ++i) {
        VertexId v = data.vertices[i];
        if (v >= g.vertex_count()) throw domain_error("iid model: unknown state");
        lp += std::log(to_double(dirichlet[v]) + static_cast<double>(count[v]));
        lp -= std::log(total + static_cast<double>(i - 1));
        ++count[v];
    }
    return lp;
}

// Competitor model: unconstrained Markov chain with an independent symmetric
// Dirichlet prior on each vertex's outgoing transition row, conditioned on
// the first state. Factors into one urn product per vertex over its observed
// departures.
inline Rational full_markov_marginal_likelihood(const Graph& g, const Rational& row_dirichlet,
                                                const Trajectory& data) {
    if (row_dirichlet <= 0)
        throw domain_error("full Markov model: Dirichlet parameter must be positive");
    if (data.vertices.empty()) throw domain_error("observed sequence is empty");
    std::vector<std::uint64_t> directed(2 * g.edge_count(), 0); // u->v transition counts
    std::vector<std::uint64_t> departures(g.vertex_count(), 0);
    Rational p = 1;
    for (std::size_t i = 0; i + 1 < data.vertices.size(); ++i) {
        VertexId u = data.vertices[i], v = data.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e) throw domain_error("observed sequence steps along a non-edge");
        EdgeEndpoints ee = g.endpoints(*e);
        std::size_t slot = 2 * *e + (u == ee.tail ? 0 : 1);
        Rational row_total = row_dirichlet * Rational(static_cast<long>(g.degree(u)));
        p *= (row_dirichlet + Rational(static_cast<long>(directed[slot]))) /
             (row_total + Rational(static_cast<long>(departures[u])));
        ++directed[slot];
        ++departures[u];
    }
    return p;
}

inline double log_full_markov_marginal_likelihood(const Graph& g, const Rational& row_dirichlet,
                                                  const Trajectory& data) {
    if (row_dirichlet <= 0)
        throw domain_error("full Markov model: Dirichlet parameter must be positive");
    if (data.vertices.empty()) throw domain_error("observed sequence is empty");
    double gamma = to_double(row_dirichlet);
    std::vector<std::uint64_t> directed(2 * g.edge_count(), 0);
    std::vector<std::uint64_t> departures(g.vertex_count(), 0);
    double lp = 0.0;
    for (std::size_t i = 0; i + 1 < data.vertices.size(); ++i) {
        VertexId u = data.vertices[i], v = data.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e) throw domain_error("observed sequence steps along a non-edge");
        EdgeEndpoints ee = g.endpoints(*e);
        std::size_t slot = 2 * *e + (u == ee.tail ? 0 : 1);
        lp += std::log(gamma + static_cast<double>(directed[slot]));
        lp -= std::log(gamma * static_cast<double>(g.degree(u)) +
                       static_cast<double>(departures[u]));
        ++directed[slot];
        ++departures[u];
    }
    return lp;
}

// Evidence ratio of two models from their log marginal likelihoods.
inline double bayes_factor(double log_ml_h0, double log_ml_h1) {
    if (!std::isfinite(log_ml_h0) || !std::isfinite(log_ml_h1))
        throw domain_error("bayes_factor: log marginal likelihoods must be finite");
    return std::exp(log_ml_h0 - log_ml_h1);
}

} // namespace errw
