#pragma once

// Deterministic moment oracle for three-edge weight densities: nested
// Gauss-Kronrod integration over the open 2-simplex {x0+x1+x2=1, x>0}.
// Returns the normalizer together with normalized first and second moments.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "errw/detail/quadrature.hpp"

namespace testsupport {

struct SimplexMoments {
    double normalizer = 0.0;
    std::array<double, 3> mean{};
    std::array<std::array<double, 3>, 3> covariance{};
};

// `log_density` gets the full weight vector (x0, x1, x2).
inline SimplexMoments simplex_moments_3(
    const std::function<double(const std::array<double, 3>&)>& log_density,
    double rel_tol = 1e-8) {
    using errw::detail::integrate_gk;
    using errw::detail::VectorIntegrand;
    constexpr std::size_t dim = 10; // 1 + 3 first moments + 6 second moments

    VectorIntegrand outer = [&](double x0, std::vector<double>& out) {
        VectorIntegrand inner = [&](double x1, std::vector<double>& in) {
            std::array<double, 3> x{x0, x1, 1.0 - x0 - x1};
            double f = std::exp(log_density(x));
            std::size_t k = 0;
            in[k++] = f;
            for (int i = 0; i < 3; ++i) in[k++] = f * x[i];
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) in[k++] = f * x[i] * x[j];
        };
        auto res = integrate_gk(inner, 0.0, 1.0 - x0, dim, rel_tol * 0.1, 0.0, 400);
        out = res.value;
    };
    auto res = integrate_gk(outer, 0.0, 1.0, dim, rel_tol, 0.0, 400);

    SimplexMoments m;
    m.normalizer = res.value[0];
    std::size_t k = 1;
    for (int i = 0; i < 3; ++i) m.mean[i] = res.value[k++] / m.normalizer;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double second = res.value[k++] / m.normalizer;
            m.covariance[i][j] = m.covariance[j][i] = second - m.mean[i] * m.mean[j];
        }
    return m;
}

} // namespace testsupport
