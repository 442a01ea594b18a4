#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <vector>

#include "errw/errors.hpp"

namespace errw::detail {

// Adaptive Gauss-Kronrod (G7/K15) integration of a vector-valued integrand
// on a finite interval. Globally adaptive: the segment with the largest
// error estimate is bisected until every component meets
// max(abs_tol, rel_tol * |integral|).

struct QuadratureResult {
    std::vector<double> value;
    std::vector<double> error;
    std::size_t evaluations = 0;
    bool converged = false;
};

using VectorIntegrand = std::function<void(double, std::vector<double>&)>;

namespace gk {
// K15 abscissae (positive half) and weights; G7 weights at the odd indices.
inline constexpr double nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kronrod_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
} // namespace gk

struct QuadSegment {
    double a, b;
    std::vector<double> value; // K15 estimate per component
    double error;              // max-component |K15 - G7|
};

inline QuadSegment evaluate_segment(const VectorIntegrand& f, double a, double b,
                                    std::size_t dim, std::vector<double>& scratch) {
    QuadSegment seg;
    seg.a = a;
    seg.b = b;
    seg.value.assign(dim, 0.0);
    std::vector<double> gauss(dim, 0.0);
    double half = 0.5 * (b - a);
    double mid = 0.5 * (a + b);
    for (int i = 0; i < 8; ++i) {
        int reps = (i == 7) ? 1 : 2;
        for (int s = 0; s < reps; ++s) {
            double x = mid + (s == 0 ? -1.0 : 1.0) * half * gk::nodes[i];
            f(x, scratch);
            for (std::size_t d = 0; d < dim; ++d) {
                seg.value[d] += gk::kronrod_w[i] * scratch[d];
                // odd K15 indices (and the center) are the embedded G7 nodes
                if (i % 2 == 1 || i == 7) gauss[d] += gk::gauss_w[i / 2] * scratch[d];
            }
        }
    }
    seg.error = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        seg.value[d] *= half;
        gauss[d] *= half;
        seg.error = std::max(seg.error, std::fabs(seg.value[d] - gauss[d]));
    }
    return seg;
}

inline QuadratureResult integrate_gk(const VectorIntegrand& f, double a, double b,
                                     std::size_t dim, double rel_tol = 1e-9,
                                     double abs_tol = 0.0, std::size_t max_segments = 2000) {
    if (!(b > a)) throw domain_error("integrate_gk: empty interval");
    auto cmp = [](const QuadSegment& l, const QuadSegment& r) { return l.error < r.error; };
    std::priority_queue<QuadSegment, std::vector<QuadSegment>, decltype(cmp)> heap(cmp);
    std::vector<double> scratch(dim);
    QuadratureResult res;
    res.value.assign(dim, 0.0);
    res.error.assign(dim, 0.0);

    QuadSegment first = evaluate_segment(f, a, b, dim, scratch);
    res.evaluations += 15;
    double total_error = first.error;
    std::vector<double> total(first.value);
    heap.push(std::move(first));
    std::size_t segments = 1;

    auto tolerance_met = [&]() {
        double scale = abs_tol;
        for (std::size_t d = 0; d < dim; ++d) scale = std::max(scale, rel_tol * std::fabs(total[d]));
        return total_error <= scale;
    };

    while (!tolerance_met() && segments < max_segments) {
        QuadSegment worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval at floating-point resolution; keep as is
            heap.push(std::move(worst));
            break;
        }
        QuadSegment left = evaluate_segment(f, worst.a, mid, dim, scratch);
        QuadSegment right = evaluate_segment(f, mid, worst.b, dim, scratch);
        res.evaluations += 30;
        for (std::size_t d = 0; d < dim; ++d)
            total[d] += left.value[d] + right.value[d] - worst.value[d];
        total_error += left.error + right.error - worst.error;
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++segments;
    }

    // recompute totals from the surviving segments for accuracy
    std::vector<double> value(dim, 0.0);
    double err = 0.0;
    while (!heap.empty()) {
        const QuadSegment& s = heap.top();
        for (std::size_t d = 0; d < dim; ++d) value[d] += s.value[d];
        err += s.error;
        heap.pop();
    }
    res.value = std::move(value);
    res.error.assign(dim, err);
    double scale = abs_tol;
    for (std::size_t d = 0; d < dim; ++d) scale = std::max(scale, rel_tol * std::fabs(res.value[d]));
    res.converged = err <= scale;
    return res;
}

inline double integrate_gk_scalar(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol = 1e-10, double abs_tol = 0.0) {
    VectorIntegrand vf = [&](double x, std::vector<double>& out) { out[0] = f(x); };
    return integrate_gk(vf, a, b, 1, rel_tol, abs_tol).value[0];
}

} // namespace errw::detail
