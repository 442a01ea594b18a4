#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "errw/errors.hpp"
#include "errw/graph.hpp"

namespace errw {

inline constexpr double kSimplexTolerance = 1e-12;

// A strictly positive edge-weight vector, optionally normalized to total
// mass 1 (a point of the open simplex).
struct SimplexWeights {
    std::vector<double> x;
    bool normalized = false;

    static SimplexWeights positive(std::vector<double> values) {
        for (double v : values)
            if (!(v > 0.0)) throw domain_error("SimplexWeights: entries must be strictly positive");
        return SimplexWeights{std::move(values), false};
    }

    static SimplexWeights normalized_point(std::vector<double> values) {
        SimplexWeights w = positive(std::move(values));
        double total = 0.0;
        for (double v : w.x) total += v;
        if (std::fabs(total - 1.0) > kSimplexTolerance)
            throw domain_error("SimplexWeights: entries do not sum to 1");
        w.normalized = true;
        return w;
    }

    // Rescales to total mass 1.
    static SimplexWeights normalize(std::vector<double> values) {
        SimplexWeights w = positive(std::move(values));
        double total = 0.0;
        for (double v : w.x) total += v;
        for (double& v : w.x) v /= total;
        w.normalized = true;
        return w;
    }

    std::size_t size() const { return x.size(); }
};

inline void require_positive(std::span<const double> x) {
    for (double v : x)
        if (!(v > 0.0)) throw domain_error("weights must be strictly positive");
}

inline void require_positive(const SimplexWeights& w, const char* who) {
    for (double v : w.x)
        if (!(v > 0.0))
            throw domain_error(std::string(who) + ": weights must be strictly positive");
}

inline double vertex_weight(const Graph& g, const SimplexWeights& w, VertexId v) {
    return vertex_weight<double>(g, std::span<const double>(w.x), v);
}

} // namespace errw
