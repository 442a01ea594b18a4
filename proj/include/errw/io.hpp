#pragma once

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/ladder.hpp"
#include "errw/mcmc.hpp"
#include "errw/rational.hpp"
#include "errw/walk.hpp"

namespace errw {

struct LoadedGraph {
    Graph graph;
    std::vector<Rational> weights; // per-edge, only when the file has a third column
    bool has_weights = false;
};

// Edge list: one `u v` pair per line, names are whitespace-separated tokens,
// optional third token = initial weight for that edge (integer, p/q, or
// decimal). Blank lines and lines starting with # are skipped. Either every
// line carries a weight or none does.
inline LoadedGraph load_edge_list(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<Rational> weights;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string u, v, w, extra;
        if (!(ls >> u) || u[0] == '#') continue;
        if (!(ls >> v))
            throw domain_error("edge list line " + std::to_string(lineno) +
                               ": expected two vertex names");
        bool has_w = static_cast<bool>(ls >> w);
        if (ls >> extra)
            throw domain_error("edge list line " + std::to_string(lineno) +
                               ": too many columns");
        edges.emplace_back(u, v);
        if (has_w) weights.push_back(parse_rational(w));
        if (weights.size() != 0 && weights.size() != edges.size())
            throw domain_error("edge list line " + std::to_string(lineno) +
                               ": weight column must be present on every line or none");
    }
    if (edges.empty()) throw domain_error("edge list: no edges");
    LoadedGraph out{Graph::from_edge_list(edges), std::move(weights), false};
    out.has_weights = !out.weights.empty();
    return out;
}

inline LoadedGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open graph file: " + path);
    return load_edge_list(in);
}

// Named example graphs: "triangle" (vertices A, B, C) and the parametric
// families "path:N", "cycle:N", "star:N" (N leaves), "complete:N" with
// numeric vertex names 0, 1, ....
inline Graph builtin_graph(const std::string& name) {
    if (name == "triangle")
        return Graph::from_edge_list({{"A", "B"}, {"B", "C"}, {"C", "A"}});
    auto colon = name.find(':');
    std::string family = name.substr(0, colon);
    long n = -1;
    if (colon != std::string::npos) {
        try {
            std::size_t used = 0;
            n = std::stol(name.substr(colon + 1), &used);
            if (used != name.size() - colon - 1) n = -1;
        } catch (const std::exception&) {
            n = -1;
        }
    }
    std::vector<std::pair<std::string, std::string>> edges;
    auto num = [](long i) { return std::to_string(i); };
    if (family == "path" && n >= 2) {
        for (long i = 0; i + 1 < n; ++i) edges.emplace_back(num(i), num(i + 1));
    } else if (family == "cycle" && n >= 3) {
        for (long i = 0; i < n; ++i) edges.emplace_back(num(i), num((i + 1) % n));
    } else if (family == "star" && n >= 1) {
        for (long i = 1; i <= n; ++i) edges.emplace_back(num(0), num(i));
    } else if (family == "complete" && n >= 2) {
        for (long i = 0; i < n; ++i)
            for (long j = i + 1; j < n; ++j) edges.emplace_back(num(i), num(j));
    } else {
        throw domain_error("unknown graph name: " + name +
                           " (expected triangle, path:N, cycle:N, star:N, or complete:N)");
    }
    return Graph::from_edge_list(edges);
}

namespace detail {

class CsvFile {
public:
    explicit CsvFile(const std::string& path) : f_(std::fopen(path.c_str(), "wb")) {
        if (!f_) throw domain_error("cannot open output file: " + path);
    }
    ~CsvFile() {
        if (f_) std::fclose(f_);
    }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void raw(const char* s) { std::fputs(s, f_); }
    void text(const std::string& s) { std::fputs(s.c_str(), f_); }
    void integer(long long v) { std::fprintf(f_, "%lld", v); }
    void unsigned_integer(unsigned long long v) { std::fprintf(f_, "%llu", v); }
    // %.17g round-trips doubles exactly, keeping reruns byte-identical.
    void real(double v) { std::fprintf(f_, "%.17g", v); }

private:
    std::FILE* f_;
};

} // namespace detail

inline void write_trajectory_csv(const std::string& path, const Graph& g,
                                 const Trajectory& traj) {
    detail::CsvFile f(path);
    f.raw("t,vertex\n");
    for (std::size_t t = 0; t < traj.vertices.size(); ++t) {
        f.unsigned_integer(t);
        f.raw(",");
        f.text(g.vertex_name(traj.vertices[t]));
        f.raw("\n");
    }
}

inline void write_edge_stats_csv(const std::string& path, const Graph& g,
                                 const Trajectory& traj) {
    detail::CsvFile f(path);
    f.raw("edge,tail,head,k_t,alpha_t\n");
    std::vector<std::uint64_t> k = edge_crossing_counts(g, traj);
    double t = static_cast<double>(traj.length());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        EdgeEndpoints ee = g.endpoints(e);
        f.unsigned_integer(e);
        f.raw(",");
        f.text(g.vertex_name(ee.tail));
        f.raw(",");
        f.text(g.vertex_name(ee.head));
        f.raw(",");
        f.unsigned_integer(k[e]);
        f.raw(",");
        f.real(t > 0 ? static_cast<double>(k[e]) / t : 0.0);
        f.raw("\n");
    }
}

// One row per retained sampler state: edge weight columns x0..x{m-1} in edge
// order, then the log target density.
inline void write_environment_csv(const std::string& path, const EnvironmentSample& sample) {
    detail::CsvFile f(path);
    if (sample.states.empty()) throw domain_error("write_environment_csv: empty sample");
    std::size_t m = sample.states.front().x.size();
    for (std::size_t e = 0; e < m; ++e) {
        f.raw(e ? ",x" : "x");
        f.unsigned_integer(e);
    }
    f.raw(",log_density\n");
    for (std::size_t i = 0; i < sample.states.size(); ++i) {
        for (std::size_t e = 0; e < m; ++e) {
            if (e) f.raw(",");
            f.real(sample.states[i].x[e]);
        }
        f.raw(",");
        f.real(sample.log_density[i]);
        f.raw("\n");
    }
}

// Occupation-fraction heatmap over a strip: level and fiber coordinates of
// each crossed edge, log10 of its occupation fraction. Rows sorted by
// (level, kind, fiber); zero-count edges are omitted.
inline void write_heatmap_csv(const std::string& path, const LadderStats& stats) {
    if (stats.plane) throw domain_error("write_heatmap_csv: expects strip statistics");
    detail::CsvFile f(path);
    f.raw("level,fiber_vertex_or_rung,edge_kind,count,log10_fraction\n");
    std::vector<std::size_t> order;
    for (std::size_t e = 0; e < stats.edges.size(); ++e)
        if (stats.counts[e] > 0) order.push_back(e);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const LatticeEdgeInfo &a = stats.edges[l], &b = stats.edges[r];
        if (a.au != b.au) return a.au < b.au;
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.af < b.af;
    });
    for (std::size_t e : order) {
        const LatticeEdgeInfo& info = stats.edges[e];
        f.integer(info.au);
        f.raw(",");
        f.integer(info.af);
        f.raw(info.kind == 0 ? ",level," : ",rung,");
        f.unsigned_integer(stats.counts[e]);
        f.raw(",");
        f.real(std::log10(stats.occupation_fraction(e)));
        f.raw("\n");
    }
}

inline void write_range_csv(const std::string& path, const RangeTrace& trace) {
    detail::CsvFile f(path);
    f.raw("t,max_distance\n");
    for (const auto& [t, d] : trace.table) {
        f.unsigned_integer(t);
        f.raw(",");
        f.integer(d);
        f.raw("\n");
    }
}

// Square-lattice crossing counts: each crossed edge as its lower-left
// endpoint plus direction h (to x+1) or v (to y+1).
inline void write_z2_csv(const std::string& path, const LadderStats& stats) {
    if (!stats.plane) throw domain_error("write_z2_csv: expects square-lattice statistics");
    detail::CsvFile f(path);
    f.raw("x,y,dir,count\n");
    std::vector<std::size_t> order;
    for (std::size_t e = 0; e < stats.edges.size(); ++e)
        if (stats.counts[e] > 0) order.push_back(e);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const LatticeEdgeInfo &a = stats.edges[l], &b = stats.edges[r];
        if (a.au != b.au) return a.au < b.au;
        if (a.af != b.af) return a.af < b.af;
        return a.kind < b.kind;
    });
    for (std::size_t e : order) {
        const LatticeEdgeInfo& info = stats.edges[e];
        f.integer(info.au);
        f.raw(",");
        f.integer(info.af);
        f.raw(info.kind == 0 ? ",h," : ",v,");
        f.unsigned_integer(stats.counts[e]);
        f.raw("\n");
    }
}

} // namespace errw
