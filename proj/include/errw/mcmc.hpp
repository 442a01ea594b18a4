#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "errw/density.hpp"
#include "errw/errors.hpp"
#include "errw/random.hpp"
#include "errw/simplex.hpp"
#include "errw/stats.hpp"

namespace errw {

struct McmcOptions {
    std::uint64_t samples = 10000; // retained states
    std::uint64_t burn_in = 2000;  // discarded proposals before retention
    std::uint64_t thin = 1;        // keep every thin-th state
    double initial_step = 0.5;     // proposal scale before adaptation
};

// Chain of (approximate) draws from the limiting occupation density, with
// sampler diagnostics. Every state is strictly positive and normalized.
struct EnvironmentSample {
    std::vector<SimplexWeights> states;
    std::vector<double> log_density; // log target at each retained state
    double acceptance_rate = 0.0;    // fraction accepted after burn-in
    double step_scale = 0.0;         // proposal scale after adaptation
    std::uint64_t burn_in = 0;
    std::uint64_t thin = 1;
};

namespace detail {

inline SimplexWeights softmax(const std::vector<double>& z) {
    double m = z[0];
    for (double v : z) m = std::max(m, v);
    std::vector<double> x(z.size());
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        x[i] = std::exp(z[i] - m);
        s += x[i];
    }
    for (double& v : x) v /= s;
    return SimplexWeights{std::move(x), true};
}

inline void center(std::vector<double>& z) {
    double m = 0.0;
    for (double v : z) m += v;
    m /= static_cast<double>(z.size());
    for (double& v : z) v -= m;
}

} // namespace detail

// Random-walk Metropolis targeting the limiting occupation density.
// The chain lives in centered log coordinates z (x = softmax z), which keeps
// proposals away from the simplex boundary; the log-target picks up the
// sum-of-logs Jacobian of that chart. The proposal scale adapts during
// burn-in toward an acceptance rate in [0.2, 0.5] and is then frozen, so the
// retained chain is a genuine Metropolis chain.
inline EnvironmentSample sample_occupation_density(const DensityContext& ctx,
                                                   const McmcOptions& opt, RandomSource& rng) {
    if (opt.samples < 1) throw domain_error("mcmc: need at least one sample");
    if (opt.thin < 1) throw domain_error("mcmc: thinning interval must be >= 1");
    const std::size_t dim = ctx.graph->edge_count();

    auto log_target = [&](const SimplexWeights& x) {
        double s = log_occupation_density_det(ctx, x);
        for (double v : x.x) s += std::log(v);
        return s;
    };

    std::vector<double> z(dim, 0.0);
    SimplexWeights x = detail::softmax(z);
    double lp = log_target(x);

    EnvironmentSample out;
    out.states.reserve(opt.samples);
    out.log_density.reserve(opt.samples);
    out.burn_in = opt.burn_in;
    out.thin = opt.thin;

    double scale = opt.initial_step;
    std::uint64_t window_accept = 0, window_total = 0;
    std::uint64_t accept = 0, total = 0;
    std::vector<double> zp(dim);

    std::uint64_t needed = opt.burn_in + opt.samples * opt.thin;
    for (std::uint64_t it = 0; it < needed; ++it) {
        bool warming = it < opt.burn_in;
        for (std::size_t i = 0; i < dim; ++i) zp[i] = z[i] + scale * rng.normal();
        detail::center(zp);
        SimplexWeights xp = detail::softmax(zp);
        double lpp = log_target(xp);
        bool ok = lpp >= lp || rng.uniform01() < std::exp(lpp - lp);
        if (ok) {
            z = zp;
            x = std::move(xp);
            lp = lpp;
        }
        if (warming) {
            window_accept += ok ? 1 : 0;
            if (++window_total == 200) {
                double rate = static_cast<double>(window_accept) / 200.0;
                if (rate < 0.2)
                    scale *= 0.7;
                else if (rate > 0.5)
                    scale *= 1.4;
                window_accept = window_total = 0;
            }
        } else {
            accept += ok ? 1 : 0;
            ++total;
            std::uint64_t since = it - opt.burn_in;
            if ((since + 1) % opt.thin == 0) {
                out.states.push_back(x);
                out.log_density.push_back(lp);
            }
        }
    }
    out.acceptance_rate = total ? static_cast<double>(accept) / static_cast<double>(total) : 0.0;
    out.step_scale = scale;
    return out;
}

// Per-edge means of the retained states with batch-means standard errors
// (robust to the chain's autocorrelation).
struct EdgeMoments {
    std::vector<double> mean;
    std::vector<double> standard_error;
};

inline EdgeMoments sample_edge_moments(const EnvironmentSample& sample) {
    if (sample.states.empty()) throw domain_error("sample_edge_moments: empty sample");
    std::size_t dim = sample.states.front().x.size();
    EdgeMoments m;
    m.mean.assign(dim, 0.0);
    m.standard_error.assign(dim, 0.0);
    std::vector<double> coord(sample.states.size());
    for (std::size_t e = 0; e < dim; ++e) {
        for (std::size_t i = 0; i < sample.states.size(); ++i) coord[i] = sample.states[i].x[e];
        RunningStat rs;
        for (double v : coord) rs.add(v);
        m.mean[e] = rs.mean();
        m.standard_error[e] = batch_means_se(coord);
    }
    return m;
}

} // namespace errw
