#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "errw/detail/linalg.hpp"
#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/rational.hpp"
#include "errw/simplex.hpp"

namespace errw {

// Integer basis of the cycle space (current distributions satisfying the
// vertex balance rule) as vectors in edge space. Fundamental cycles of a
// BFS spanning tree form a lattice basis, so determinants taken in this
// basis are independent of the basis choice.
struct CycleBasis {
    std::vector<std::vector<long>> vectors;
    std::size_t dimension() const { return vectors.size(); }
};

// Vertex balance s*y of a current vector (exact integer version).
inline std::vector<long> vertex_balance(const Graph& g, std::span<const long> y) {
    std::vector<long> out(g.vertex_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        EdgeEndpoints ee = g.endpoints(e);
        out[ee.head] += y[e];
        out[ee.tail] -= y[e];
    }
    return out;
}

inline std::vector<double> vertex_balance(const Graph& g, std::span<const double> y) {
    std::vector<double> out(g.vertex_count(), 0.0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        EdgeEndpoints ee = g.endpoints(e);
        out[ee.head] += y[e];
        out[ee.tail] -= y[e];
    }
    return out;
}

// Fundamental cycles of the lowest-index-first BFS spanning tree. Each
// non-tree edge contributes one basis vector, with entry +1 at that edge.
inline CycleBasis cycle_basis(const Graph& g) {
    if (!g.connected()) throw domain_error("cycle_basis: graph must be connected");
    std::size_t n = g.vertex_count();
    std::vector<int> parent_edge(n, -1);
    std::vector<VertexId> parent(n, 0);
    std::vector<int> depth(n, -1);
    std::vector<VertexId> queue;
    queue.push_back(0);
    depth[0] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        VertexId v = queue[qi];
        for (const IncidentEdge& ie : g.incident(v)) {
            if (depth[ie.neighbor] < 0) {
                depth[ie.neighbor] = depth[v] + 1;
                parent[ie.neighbor] = v;
                parent_edge[ie.neighbor] = static_cast<int>(ie.edge);
                queue.push_back(ie.neighbor);
            }
        }
    }
    std::vector<char> in_tree(g.edge_count(), 0);
    for (VertexId v = 1; v < n; ++v) in_tree[parent_edge[v]] = 1;

    CycleBasis basis;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (in_tree[e]) continue;
        std::vector<long> y(g.edge_count(), 0);
        EdgeEndpoints ee = g.endpoints(e);
        y[e] = 1;
        // close the cycle through the tree: walk head -> tail
        VertexId u = ee.head, w = ee.tail;
        auto step_up = [&](VertexId& v, long sign) {
            EdgeId pe = static_cast<EdgeId>(parent_edge[v]);
            EdgeEndpoints pee = g.endpoints(pe);
            // traversing v -> parent(v): along the counting direction iff v is the tail
            y[pe] += (pee.tail == v) ? sign : -sign;
            v = parent[v];
        };
        while (depth[u] > depth[w]) step_up(u, 1);
        while (depth[w] > depth[u]) step_up(w, -1);
        while (u != w) {
            step_up(u, 1);
            step_up(w, -1);
        }
        basis.vectors.push_back(std::move(y));
    }
    return basis;
}

// Power dissipated by current y through conductances x: sum of y_e^2 / x_e.
inline double quadratic_form(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw domain_error("quadratic_form: size mismatch");
    require_positive(x);
    double total = 0.0;
    for (std::size_t e = 0; e < x.size(); ++e) total += y[e] * y[e] / x[e];
    return total;
}

inline Rational quadratic_form_exact(std::span<const Rational> x, std::span<const Rational> y) {
    if (x.size() != y.size()) throw domain_error("quadratic_form: size mismatch");
    Rational total = 0;
    for (std::size_t e = 0; e < x.size(); ++e) {
        if (x[e] <= 0) throw domain_error("quadratic_form: weights must be strictly positive");
        total += y[e] * y[e] / x[e];
    }
    return total;
}

// Gram matrix of the energy form in the given cycle basis:
// G_ij = sum_e b_i(e) b_j(e) / x_e.
inline detail::Matrix<double> cycle_gram(const CycleBasis& basis, std::span<const double> x) {
    require_positive(x);
    std::size_t d = basis.dimension();
    detail::Matrix<double> gram(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t e = 0; e < x.size(); ++e) {
                long bij = basis.vectors[i][e] * basis.vectors[j][e];
                if (bij != 0) s += static_cast<double>(bij) / x[e];
            }
            gram.at(i, j) = s;
            gram.at(j, i) = s;
        }
    }
    return gram;
}

inline detail::Matrix<Rational> cycle_gram_exact(const CycleBasis& basis,
                                                 std::span<const Rational> x) {
    std::size_t d = basis.dimension();
    detail::Matrix<Rational> gram(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            Rational s = 0;
            for (std::size_t e = 0; e < x.size(); ++e) {
                long bij = basis.vectors[i][e] * basis.vectors[j][e];
                if (bij == 0) continue;
                if (x[e] <= 0) throw domain_error("cycle_gram: weights must be strictly positive");
                s += Rational(bij) / x[e];
            }
            gram.at(i, j) = s;
            gram.at(j, i) = s;
        }
    }
    return gram;
}

// Determinant of the energy form in an integer cycle basis. Trees (empty
// basis) give 1 by the empty-determinant convention.
inline double det_quadratic_form(const CycleBasis& basis, std::span<const double> x) {
    if (basis.dimension() == 0) return 1.0;
    return detail::det_lu(cycle_gram(basis, x));
}

inline double det_quadratic_form(const Graph& g, std::span<const double> x) {
    return det_quadratic_form(cycle_basis(g), x);
}

inline Rational det_quadratic_form_exact(const CycleBasis& basis, std::span<const Rational> x) {
    if (basis.dimension() == 0) return Rational(1);
    return detail::det_exact(cycle_gram_exact(basis, x));
}

} // namespace errw
