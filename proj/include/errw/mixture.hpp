#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "errw/density.hpp"
#include "errw/detail/linalg.hpp"
#include "errw/errors.hpp"
#include "errw/homology.hpp"
#include "errw/mcmc.hpp"
#include "errw/random.hpp"
#include "errw/spanning.hpp"
#include "errw/stats.hpp"

namespace errw {

// Sampler for the conditional law of (tree, current) given edge weights x:
// trees weighted by their edge-weight product, the current Gaussian on the
// cycle space with inverse covariance equal to the Gram matrix of y -> sum
// y_e^2/x_e. Prepared once per x, then drawn from repeatedly.
class JointGivenX {
public:
    JointGivenX(const Graph& g, const SimplexWeights& x)
        : graph_(&g), basis_(cycle_basis(g)), trees_(enumerate_spanning_trees(g)) {
        require_positive(x, "JointGivenX");
        if (x.x.size() != g.edge_count())
            throw domain_error("JointGivenX: wrong number of edge weights");
        cumulative_.reserve(trees_.size());
        double acc = 0.0;
        for (const SpanningTree& t : trees_) {
            double w = 1.0;
            for (EdgeId e : t) w *= x.x[e];
            acc += w;
            cumulative_.push_back(acc);
        }
        std::size_t d = basis_.dimension();
        if (d > 0) {
            detail::Matrix<double> gram = cycle_gram(basis_, x.x);
            chol_ = detail::Matrix<double>(d, d);
            detail::cholesky(gram, chol_);
        }
    }

    struct Draw {
        SpanningTree tree;
        std::vector<double> current;      // per-edge signed flow
        std::vector<double> cycle_coords; // the same current in cycle-basis coordinates
    };

    Draw draw(RandomSource& rng) const {
        Draw d;
        double target = rng.uniform01() * cumulative_.back();
        std::size_t lo = 0;
        while (lo + 1 < cumulative_.size() && cumulative_[lo] <= target) ++lo;
        d.tree = trees_[lo];
        std::size_t dim = basis_.dimension();
        d.cycle_coords.resize(dim);
        d.current.assign(graph_->edge_count(), 0.0);
        if (dim > 0) {
            std::vector<double> xi(dim);
            for (double& v : xi) v = rng.normal();
            // Solving L^T z = xi gives z with covariance (L L^T)^{-1}, the
            // inverse of the Gram matrix.
            d.cycle_coords = detail::solve_upper_from_cholesky(chol_, xi);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t e = 0; e < graph_->edge_count(); ++e)
                    d.current[e] +=
                        d.cycle_coords[i] * static_cast<double>(basis_.vectors[i][e]);
        }
        return d;
    }

    const CycleBasis& basis() const { return basis_; }
    const std::vector<SpanningTree>& trees() const { return trees_; }

private:
    const Graph* graph_;
    CycleBasis basis_;
    std::vector<SpanningTree> trees_;
    std::vector<double> cumulative_;
    detail::Matrix<double> chol_;
};

inline JointGivenX::Draw sample_joint_given_x(const Graph& g, const SimplexWeights& x,
                                              RandomSource& rng) {
    return JointGivenX(g, x).draw(rng);
}

struct MixtureEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t sample_count = 0;
};

// Monte Carlo average of the fixed-environment path probability over an
// environment sample; the standard error uses batch means because the states
// come from a correlated chain.
inline MixtureEstimate mixture_path_probability(const Graph& g, const EnvironmentSample& sample,
                                                const Trajectory& traj) {
    if (sample.states.empty()) throw domain_error("mixture_path_probability: empty sample");
    std::vector<double> values;
    values.reserve(sample.states.size());
    for (const SimplexWeights& x : sample.states)
        values.push_back(markov_path_probability(g, x.x, traj));
    RunningStat rs;
    for (double v : values) rs.add(v);
    MixtureEstimate est;
    est.estimate = rs.mean();
    est.standard_error = batch_means_se(values);
    est.sample_count = values.size();
    return est;
}

struct NormalizerEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::uint64_t sample_count = 0;
    double effective_sample_size = 0.0;
    bool degenerate = false; // effective sample size below 10
};

// Importance-sampling estimate of the integral of the unnormalized
// occupation density over the simplex, using a Dirichlet proposal whose
// parameters equal the initial edge weights (so the proposal matches the
// edge-power factors of the tree form). Integration convention: Lebesgue
// measure on the chart that drops the last edge coordinate, matching the
// Dirichlet density normalization.
inline NormalizerEstimate estimate_normalizer(const DensityContext& ctx, std::uint64_t n,
                                              RandomSource& rng) {
    if (n < 1) throw domain_error("estimate_normalizer: need at least one sample");
    const std::size_t dim = ctx.graph->edge_count();
    std::vector<double> alpha = ctx.a.edge_double;
    double alpha_sum = 0.0, lgamma_terms = 0.0;
    for (double a : alpha) {
        alpha_sum += a;
        lgamma_terms += std::lgamma(a);
    }
    double log_proposal_const = std::lgamma(alpha_sum) - lgamma_terms;

    std::vector<double> log_w(n);
    std::vector<double> x(dim);
    for (std::uint64_t i = 0; i < n; ++i) {
        rng.dirichlet(alpha, x);
        SimplexWeights sw{x, true};
        double log_q = log_proposal_const;
        for (std::size_t e = 0; e < dim; ++e) log_q += (alpha[e] - 1.0) * std::log(x[e]);
        log_w[i] = log_occupation_density_det(ctx, sw) - log_q;
    }
    double m = log_w[0];
    for (double v : log_w) m = std::max(m, v);
    double sum = 0.0, sum_sq = 0.0;
    for (double v : log_w) {
        double w = std::exp(v - m);
        sum += w;
        sum_sq += w * w;
    }
    double mean = sum / static_cast<double>(n);
    double var = 0.0;
    if (n > 1) {
        var = (sum_sq - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
        var = std::max(var, 0.0);
    }
    NormalizerEstimate est;
    est.value = std::exp(m) * mean;
    est.standard_error = std::exp(m) * std::sqrt(var / static_cast<double>(n));
    est.sample_count = n;
    est.effective_sample_size = sum * sum / sum_sq;
    est.degenerate = est.effective_sample_size < 10.0;
    return est;
}

} // namespace errw
