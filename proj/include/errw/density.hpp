#pragma once

#include <cmath>
#include <cstdlib>
#include <span>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/homology.hpp"
#include "errw/rational.hpp"
#include "errw/simplex.hpp"
#include "errw/spanning.hpp"
#include "errw/walk.hpp"

namespace errw {

// Precomputed data for repeated evaluation of the limiting occupation
// density: vertex weight exponents and a cycle basis for the quadratic form.
struct DensityContext {
    const Graph* graph;
    VertexId v0;
    InitialWeights a;
    std::vector<double> vertex_a; // a_v = sum of a_e over incident edges
    CycleBasis basis;

    std::size_t cycle_dimension() const { return basis.dimension(); }
};

inline DensityContext make_density_context(const Graph& g, VertexId v0, InitialWeights a) {
    if (v0 >= g.vertex_count()) throw domain_error("density: unknown start vertex");
    if (a.size() != g.edge_count())
        throw domain_error("density: weight vector does not match edge count");
    if (!g.connected()) throw domain_error("density: graph must be connected");
    DensityContext ctx{&g, v0, std::move(a), {}, cycle_basis(g)};
    ctx.vertex_a.resize(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        ctx.vertex_a[v] = to_double(ctx.a.vertex_sum(g, v));
    return ctx;
}

namespace detail {

// Common factor of both density forms:
//   -(a_{v0}/2) ln x_{v0} - sum_{v != v0} ((a_v+1)/2) ln x_v.
inline double log_vertex_factor(const DensityContext& ctx, std::span<const double> x) {
    const Graph& g = *ctx.graph;
    double s = 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        double xv = vertex_weight<double>(g, x, v);
        double expo = (v == ctx.v0) ? ctx.vertex_a[v] / 2 : (ctx.vertex_a[v] + 1) / 2;
        s -= expo * std::log(xv);
    }
    return s;
}

} // namespace detail

// Log of the limiting density of the edge occupation fractions, written with
// the determinant of the cycle-space quadratic form y -> sum_e y_e^2 / x_e:
//   sum_e (a_e - 1/2) ln x_e + [vertex factor] + (1/2) ln det A_x.
// The additive normalizing constant is omitted.
inline double log_occupation_density_det(const DensityContext& ctx, const SimplexWeights& x) {
    require_positive(x, "log_occupation_density_det");
    if (x.x.size() != ctx.graph->edge_count())
        throw domain_error("log_occupation_density_det: wrong number of edge weights");
    double s = 0.0;
    for (std::size_t e = 0; e < x.x.size(); ++e)
        s += (ctx.a.edge_double[e] - 0.5) * std::log(x.x[e]);
    s += detail::log_vertex_factor(ctx, x.x);
    s += 0.5 * std::log(det_quadratic_form(ctx.basis, x.x));
    return s;
}

// Same density with the determinant expanded as a sum over spanning trees
// (the exponents of the edge factors drop by 1/2 each):
//   sum_e (a_e - 1) ln x_e + [vertex factor] + (1/2) ln sum_T prod_{e in T} x_e.
inline double log_occupation_density_tree(const DensityContext& ctx, const SimplexWeights& x) {
    require_positive(x, "log_occupation_density_tree");
    if (x.x.size() != ctx.graph->edge_count())
        throw domain_error("log_occupation_density_tree: wrong number of edge weights");
    double s = 0.0;
    for (std::size_t e = 0; e < x.x.size(); ++e)
        s += (ctx.a.edge_double[e] - 1.0) * std::log(x.x[e]);
    s += detail::log_vertex_factor(ctx, x.x);
    s += 0.5 * std::log(spanning_tree_polynomial(*ctx.graph, x.x));
    return s;
}

// Log of the joint limiting density of (occupation fractions, rescaled
// current, last-exit tree), again without the normalizing constant:
//   sum_e (a_e - 3/2) ln x_e + [vertex factor] + sum_{e in T} ln x_e - A_x(y)/2.
// y must satisfy the vertex balance equations; T must be a spanning tree.
inline double log_joint_density(const DensityContext& ctx, const SimplexWeights& x,
                                std::span<const double> y, const SpanningTree& tree) {
    require_positive(x, "log_joint_density");
    const Graph& g = *ctx.graph;
    if (x.x.size() != g.edge_count() || y.size() != g.edge_count())
        throw domain_error("log_joint_density: wrong number of edge values");
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, std::abs(v));
    std::vector<double> balance = vertex_balance(g, y);
    for (double b : balance)
        if (std::abs(b) > 1e-12 * std::max(1.0, ymax))
            throw domain_error("log_joint_density: current violates vertex balance");
    if (!is_spanning_tree(g, tree)) throw domain_error("log_joint_density: not a spanning tree");
    double s = 0.0;
    for (std::size_t e = 0; e < x.x.size(); ++e)
        s += (ctx.a.edge_double[e] - 1.5) * std::log(x.x[e]);
    s += detail::log_vertex_factor(ctx, x.x);
    for (EdgeId e : tree) s += std::log(x.x[e]);
    s -= 0.5 * quadratic_form(x.x, y);
    return s;
}

// Transition law of the random conductance walk: from v, move across edge e
// with probability x_e / x_v. A step along a non-edge has probability 0.
inline double markov_path_probability(const Graph& g, std::span<const double> x,
                                      const Trajectory& traj) {
    if (x.size() != g.edge_count())
        throw domain_error("markov_path_probability: wrong number of edge weights");
    for (double v : x)
        if (!(v > 0.0)) throw domain_error("markov_path_probability: weights must be positive");
    if (traj.vertices.empty()) throw domain_error("markov_path_probability: empty trajectory");
    double p = 1.0;
    for (std::size_t i = 0; i + 1 < traj.vertices.size(); ++i) {
        VertexId u = traj.vertices[i], v = traj.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e) return 0.0;
        p *= x[*e] / vertex_weight<double>(g, x, u);
    }
    return p;
}

inline Rational markov_path_probability_exact(const Graph& g, std::span<const Rational> x,
                                              const Trajectory& traj) {
    if (x.size() != g.edge_count())
        throw domain_error("markov_path_probability: wrong number of edge weights");
    for (const Rational& v : x)
        if (v <= 0) throw domain_error("markov_path_probability: weights must be positive");
    if (traj.vertices.empty()) throw domain_error("markov_path_probability: empty trajectory");
    Rational p = 1;
    for (std::size_t i = 0; i + 1 < traj.vertices.size(); ++i) {
        VertexId u = traj.vertices[i], v = traj.vertices[i + 1];
        auto e = g.edge_between(u, v);
        if (!e) return Rational(0);
        p *= x[*e] / vertex_weight<Rational>(g, x, u);
    }
    return p;
}

} // namespace errw
