#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "errw/detail/linalg.hpp"
#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/rational.hpp"
#include "errw/simplex.hpp"

namespace errw {

using SpanningTree = std::vector<EdgeId>; // sorted edge ids

inline constexpr std::size_t kTreeEnumerationGuard = 20;

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[a] = b;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

// Weighted Laplacian with row/column 0 removed.
template <class T>
Matrix<T> laplacian_minor(const Graph& g, std::span<const T> x) {
    std::size_t n = g.vertex_count();
    Matrix<T> m(n - 1, n - 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        EdgeEndpoints ee = g.endpoints(e);
        std::size_t a = ee.tail, b = ee.head;
        if (a > 0) m.at(a - 1, a - 1) += x[e];
        if (b > 0) m.at(b - 1, b - 1) += x[e];
        if (a > 0 && b > 0) {
            m.at(a - 1, b - 1) -= x[e];
            m.at(b - 1, a - 1) -= x[e];
        }
    }
    return m;
}

} // namespace detail

// Sum over spanning trees of the product of the tree's edge weights,
// computed as a weighted Laplacian minor determinant.
inline double spanning_tree_polynomial(const Graph& g, std::span<const double> x) {
    if (!g.connected()) throw domain_error("spanning_tree_polynomial: graph must be connected");
    require_positive(x);
    if (g.vertex_count() <= 1) return 1.0;
    return detail::det_lu(detail::laplacian_minor<double>(g, x));
}

inline Rational spanning_tree_polynomial_exact(const Graph& g, std::span<const Rational> x) {
    if (!g.connected()) throw domain_error("spanning_tree_polynomial: graph must be connected");
    for (const Rational& v : x)
        if (v <= 0) throw domain_error("spanning_tree_polynomial: weights must be strictly positive");
    if (g.vertex_count() <= 1) return Rational(1);
    return detail::det_exact(detail::laplacian_minor<Rational>(g, x));
}

// All spanning trees by brute force, guarded to small graphs.
inline std::vector<SpanningTree> enumerate_spanning_trees(const Graph& g) {
    if (!g.connected()) throw domain_error("enumerate_spanning_trees: graph must be connected");
    if (g.edge_count() > kTreeEnumerationGuard)
        throw size_error("enumerate_spanning_trees: graph exceeds the enumeration guard; "
                         "use spanning_tree_polynomial");
    std::size_t n = g.vertex_count();
    std::size_t want = n - 1;
    std::vector<SpanningTree> trees;
    SpanningTree current;
    auto recurse = [&](auto&& self, EdgeId next) -> void {
        if (current.size() == want) {
            detail::UnionFind uf(n);
            bool ok = true;
            for (EdgeId e : current) {
                EdgeEndpoints ee = g.endpoints(e);
                if (!uf.unite(ee.tail, ee.head)) {
                    ok = false;
                    break;
                }
            }
            if (ok) trees.push_back(current);
            return;
        }
        if (next >= g.edge_count()) return;
        if (g.edge_count() - next < want - current.size()) return;
        current.push_back(next);
        self(self, next + 1);
        current.pop_back();
        self(self, next + 1);
    };
    if (want == 0) {
        trees.push_back({});
    } else {
        recurse(recurse, 0);
    }
    return trees;
}

inline bool is_spanning_tree(const Graph& g, std::span<const EdgeId> edges) {
    if (edges.size() != g.vertex_count() - 1) return false;
    detail::UnionFind uf(g.vertex_count());
    for (EdgeId e : edges) {
        EdgeEndpoints ee = g.endpoints(e);
        if (!uf.unite(ee.tail, ee.head)) return false;
    }
    return true;
}

} // namespace errw
