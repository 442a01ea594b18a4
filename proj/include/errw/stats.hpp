#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "errw/errors.hpp"

namespace errw {

// Streaming mean/variance accumulator (Welford) with associative merge, so
// per-seed results can be pooled in any grouping with the same outcome.
class RunningStat {
public:
    void add(double x) {
        ++n_;
        double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    void merge(const RunningStat& o) {
        if (o.n_ == 0) return;
        if (n_ == 0) {
            *this = o;
            return;
        }
        double d = o.mean_ - mean_;
        std::uint64_t n = n_ + o.n_;
        m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / static_cast<double>(n);
        mean_ += d * static_cast<double>(o.n_) / static_cast<double>(n);
        n_ = n;
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double standard_error() const {
        return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0;
    }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t points = 0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw degenerate_fit_error("fit_line: need at least two points");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    double vx = sxx - sx * sx / n;
    if (vx <= 0.0) throw degenerate_fit_error("fit_line: x values are all equal");
    LineFit f;
    f.slope = (sxy - sx * sy / n) / vx;
    f.intercept = (sy - f.slope * sx) / n;
    double vy = syy - sy * sy / n;
    f.r2 = vy > 0.0 ? (f.slope * f.slope * vx) / vy : 1.0;
    f.points = x.size();
    return f;
}

// Standard error of the mean of a correlated sequence, by batch means.
inline double batch_means_se(std::span<const double> chain, std::size_t batches = 32) {
    if (chain.size() < 2 * batches) {
        // too short to batch: fall back to the iid formula
        RunningStat s;
        for (double v : chain) s.add(v);
        return s.standard_error();
    }
    std::size_t m = chain.size() / batches;
    RunningStat bm;
    for (std::size_t b = 0; b < batches; ++b) {
        double acc = 0;
        for (std::size_t i = b * m; i < (b + 1) * m; ++i) acc += chain[i];
        bm.add(acc / static_cast<double>(m));
    }
    return bm.stddev() / std::sqrt(static_cast<double>(batches));
}

// Effective sample size implied by the batch-means variance inflation.
inline double effective_sample_size(std::span<const double> chain, std::size_t batches = 32) {
    RunningStat all;
    for (double v : chain) all.add(v);
    if (all.count() < 2 || all.variance() == 0.0) return static_cast<double>(chain.size());
    double se = batch_means_se(chain, batches);
    if (se <= 0.0) return static_cast<double>(chain.size());
    double ess = all.variance() / (se * se);
    return std::min(ess, static_cast<double>(chain.size()));
}

// Gini coefficient of a nonnegative sample; 0 = perfectly even.
inline double gini(std::vector<double> values) {
    if (values.empty()) throw domain_error("gini: empty sample");
    std::sort(values.begin(), values.end());
    double n = static_cast<double>(values.size());
    double total = 0, weighted = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        total += values[i];
        weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * values[i];
    }
    if (total <= 0.0) throw domain_error("gini: sample sums to zero");
    return weighted / (n * total);
}

} // namespace errw
