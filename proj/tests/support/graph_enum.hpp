#pragma once

// Exhaustive enumeration of small connected graphs (up to isomorphism) and of
// all walks of bounded length, for property tests that sweep every case.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errw/graph.hpp"
#include "errw/walk.hpp"

namespace testsupport {

using EdgePair = std::pair<int, int>;

inline bool edge_set_connected(const std::vector<EdgePair>& edges, int vertices) {
    std::vector<int> comp(vertices);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    for (auto [u, v] : edges) comp[find(u)] = find(v);
    for (int v = 1; v < vertices; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

inline std::string canonical_form(const std::vector<EdgePair>& edges, int vertices) {
    std::vector<int> perm(vertices);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::vector<EdgePair> mapped;
        mapped.reserve(edges.size());
        for (auto [u, v] : edges) {
            int a = perm[u], b = perm[v];
            mapped.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(mapped.begin(), mapped.end());
        std::string key;
        for (auto [u, v] : mapped) {
            key += static_cast<char>('0' + u);
            key += static_cast<char>('0' + v);
            key += ',';
        }
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// All connected simple graphs with 1..max_edges edges and no isolated
// vertices, one representative per isomorphism class. Vertex names are
// "0".."k-1".
inline std::vector<errw::Graph> connected_graphs_up_to(int max_edges) {
    std::set<std::string> seen;
    std::vector<errw::Graph> out;
    for (int vertices = 2; vertices <= max_edges + 1; ++vertices) {
        std::vector<EdgePair> all;
        for (int u = 0; u < vertices; ++u)
            for (int v = u + 1; v < vertices; ++v) all.emplace_back(u, v);
        int m = static_cast<int>(all.size());
        int lo = vertices - 1; // fewer edges cannot connect `vertices` vertices
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
            int bits = __builtin_popcount(mask);
            if (bits < lo || bits > max_edges) continue;
            std::vector<EdgePair> edges;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) edges.push_back(all[i]);
            if (!edge_set_connected(edges, vertices)) continue;
            std::string key = canonical_form(edges, vertices);
            if (!seen.insert(key).second) continue;
            std::vector<std::pair<std::string, std::string>> named;
            for (auto [u, v] : edges)
                named.emplace_back(std::to_string(u), std::to_string(v));
            out.push_back(errw::Graph::from_edge_list(named));
        }
    }
    return out;
}

// Calls fn(trajectory) for every walk from v0 with 1..max_steps steps.
template <class Fn>
inline void for_each_walk(const errw::Graph& g, errw::VertexId v0, std::size_t max_steps,
                          Fn&& fn) {
    errw::Trajectory traj;
    traj.vertices.push_back(v0);
    auto rec = [&](auto&& self) -> void {
        if (traj.length() >= 1) fn(const_cast<const errw::Trajectory&>(traj));
        if (traj.length() == max_steps) return;
        for (const errw::IncidentEdge& inc : g.incident(traj.current())) {
            traj.vertices.push_back(inc.neighbor);
            self(self);
            traj.vertices.pop_back();
        }
    };
    rec(rec);
}

} // namespace testsupport
