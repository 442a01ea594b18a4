#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errw/errors.hpp"

namespace errw {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Counting direction of an edge: signed incidence is +1 at the head, -1 at
// the tail.
struct EdgeEndpoints {
    VertexId tail;
    VertexId head;
};

struct IncidentEdge {
    EdgeId edge;
    VertexId neighbor;
};

// Finite undirected loop-free graph with named vertices and a fixed per-edge
// counting direction. Immutable after construction; operations are pure and
// the object is safe to share across threads.
//
// Vertex ids follow first appearance in the edge list. Incident-edge lists
// are sorted by neighbor id; the walk sampler scans them in that order, so
// the order is part of the reproducibility contract.
class Graph {
public:
    // Canonical counting direction: tail = lower vertex id.
    static Graph from_edge_list(const std::vector<std::pair<std::string, std::string>>& edges) {
        return build(edges, /*keep_orientation=*/false);
    }

    // Keeps the counting direction exactly as written (first name = tail).
    static Graph from_oriented_edge_list(const std::vector<std::pair<std::string, std::string>>& edges) {
        return build(edges, /*keep_orientation=*/true);
    }

    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& vertex_name(VertexId v) const { return names_.at(v); }

    std::optional<VertexId> find_vertex(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    VertexId require_vertex(std::string_view name) const {
        auto v = find_vertex(name);
        if (!v) throw domain_error("unknown vertex '" + std::string(name) + "'");
        return *v;
    }

    EdgeEndpoints endpoints(EdgeId e) const { return edges_.at(e); }

    std::span<const IncidentEdge> incident(VertexId v) const {
        return {adjacency_[v].data(), adjacency_[v].size()};
    }

    std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }

    std::optional<EdgeId> edge_between(VertexId u, VertexId v) const {
        for (const IncidentEdge& ie : adjacency_.at(u))
            if (ie.neighbor == v) return ie.edge;
        return std::nullopt;
    }

    // +1 if v is the head of e, -1 if the tail, 0 if not incident.
    int incidence_sign(VertexId v, EdgeId e) const {
        const EdgeEndpoints& ee = edges_.at(e);
        if (ee.head == v) return 1;
        if (ee.tail == v) return -1;
        return 0;
    }

    bool connected() const {
        if (vertex_count() == 0) return true;
        return reachable_count(0) == vertex_count();
    }

    bool acyclic() const {
        // connected components with |E| = |V| - 1 each; equivalently no
        // back edge during BFS
        std::vector<char> seen(vertex_count(), 0);
        for (VertexId root = 0; root < vertex_count(); ++root) {
            if (seen[root]) continue;
            std::vector<std::pair<VertexId, EdgeId>> stack{{root, static_cast<EdgeId>(-1)}};
            seen[root] = 1;
            while (!stack.empty()) {
                auto [v, in_edge] = stack.back();
                stack.pop_back();
                for (const IncidentEdge& ie : incident(v)) {
                    if (ie.edge == in_edge) continue;
                    if (seen[ie.neighbor]) return false;
                    seen[ie.neighbor] = 1;
                    stack.push_back({ie.neighbor, ie.edge});
                }
            }
        }
        return true;
    }

    // BFS distances from root; unreachable vertices get -1.
    std::vector<int> bfs_distances(VertexId root) const {
        std::vector<int> dist(vertex_count(), -1);
        std::queue<VertexId> q;
        dist.at(root) = 0;
        q.push(root);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (const IncidentEdge& ie : incident(v)) {
                if (dist[ie.neighbor] < 0) {
                    dist[ie.neighbor] = dist[v] + 1;
                    q.push(ie.neighbor);
                }
            }
        }
        return dist;
    }

    // Distance of an edge from a root vertex: minimum endpoint distance.
    int edge_distance(VertexId root, EdgeId e) const {
        std::vector<int> dist = bfs_distances(root);
        const EdgeEndpoints& ee = edges_.at(e);
        int a = dist[ee.tail], b = dist[ee.head];
        if (a < 0 || b < 0) throw domain_error("edge_distance: edge not reachable from root");
        return std::min(a, b);
    }

private:
    static Graph build(const std::vector<std::pair<std::string, std::string>>& input,
                       bool keep_orientation) {
        Graph g;
        auto intern = [&](const std::string& name) -> VertexId {
            auto it = g.index_.find(name);
            if (it != g.index_.end()) return it->second;
            VertexId id = static_cast<VertexId>(g.names_.size());
            g.names_.push_back(name);
            g.index_.emplace(name, id);
            g.adjacency_.emplace_back();
            return id;
        };
        for (const auto& [ua, ub] : input) {
            VertexId a = intern(ua);
            VertexId b = intern(ub);
            if (a == b) throw domain_error("self-loop at vertex '" + ua + "'");
            for (const IncidentEdge& ie : g.adjacency_[a])
                if (ie.neighbor == b)
                    throw domain_error("duplicate edge {" + ua + "," + ub + "}");
            EdgeEndpoints ee;
            if (keep_orientation) {
                ee = {a, b};
            } else {
                ee = {std::min(a, b), std::max(a, b)};
            }
            EdgeId e = static_cast<EdgeId>(g.edges_.size());
            g.edges_.push_back(ee);
            g.adjacency_[a].push_back({e, b});
            g.adjacency_[b].push_back({e, a});
        }
        for (auto& adj : g.adjacency_)
            std::sort(adj.begin(), adj.end(),
                      [](const IncidentEdge& l, const IncidentEdge& r) { return l.neighbor < r.neighbor; });
        return g;
    }

    std::size_t reachable_count(VertexId root) const {
        std::vector<char> seen(vertex_count(), 0);
        std::vector<VertexId> stack{root};
        seen[root] = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const IncidentEdge& ie : incident(v)) {
                if (!seen[ie.neighbor]) {
                    seen[ie.neighbor] = 1;
                    ++count;
                    stack.push_back(ie.neighbor);
                }
            }
        }
        return count;
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<EdgeEndpoints> edges_;
    std::vector<std::vector<IncidentEdge>> adjacency_;
};

// Sum of edge values over the edges incident to v (works for double and
// Rational alike).
template <class T>
T vertex_weight(const Graph& g, std::span<const T> edge_values, VertexId v) {
    if (v >= g.vertex_count()) throw domain_error("vertex_weight: unknown vertex");
    if (edge_values.size() != g.edge_count())
        throw domain_error("vertex_weight: value vector does not match edge count");
    T total{};
    for (const IncidentEdge& ie : g.incident(v)) total += edge_values[ie.edge];
    return total;
}

} // namespace errw
