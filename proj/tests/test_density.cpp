#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "errw/density.hpp"
#include "errw/detail/quadrature.hpp"
#include "errw/graph.hpp"
#include "errw/io.hpp"
#include "errw/random.hpp"
#include "errw/spanning.hpp"
#include "errw/walk.hpp"

using errw::Graph;
using errw::Rational;
using errw::rational;

namespace {

// context holds a pointer to the graph, so keep both together
struct Fixture {
    Graph g;
    errw::DensityContext ctx;
    explicit Fixture(const char* name, errw::Rational a = rational(1))
        : g(errw::builtin_graph(name)),
          ctx(errw::make_density_context(g, 0, errw::InitialWeights::uniform(g, a))) {}
};

} // namespace

TEST_CASE("uniform triangle point evaluates to log(3^(7/2)/16)") {
    Fixture f("triangle");
    errw::SimplexWeights x =
        errw::SimplexWeights::positive({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    double expected = 3.5 * std::log(3.0) - std::log(16.0);
    CHECK(errw::log_occupation_density_det(f.ctx, x) == Catch::Approx(expected).epsilon(1e-12));
    CHECK(errw::log_occupation_density_tree(f.ctx, x) == Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("determinant and spanning-tree forms agree everywhere") {
    errw::RandomSource rng(77);
    for (const char* name : {"triangle", "cycle:4", "complete:4", "cycle:6"}) {
        Fixture f(name, rational(3, 2));
        for (int rep = 0; rep < 25; ++rep) {
            std::vector<double> raw(f.g.edge_count());
            for (double& v : raw) v = 0.05 + rng.uniform01();
            errw::SimplexWeights x = errw::SimplexWeights::normalize(std::move(raw));
            double det_form = errw::log_occupation_density_det(f.ctx, x);
            double tree_form = errw::log_occupation_density_tree(f.ctx, x);
            CHECK(det_form == Catch::Approx(tree_form).margin(1e-9));
        }
    }
}

TEST_CASE("density context requires a connected graph") {
    Graph g = Graph::from_edge_list({{"A", "B"}, {"C", "D"}});
    CHECK_THROWS_AS(
        errw::make_density_context(g, 0, errw::InitialWeights::uniform(g, rational(1))),
        errw::domain_error);
}

TEST_CASE("boundary weight vectors are rejected") {
    Fixture f("triangle");
    CHECK_THROWS_AS(errw::SimplexWeights::positive({0.5, 0.5, 0.0}), errw::domain_error);
    CHECK_THROWS_AS(errw::SimplexWeights::normalized_point({0.5, 0.4, 0.2}),
                    errw::domain_error);
    errw::SimplexWeights bad;
    bad.x = {0.5, 0.5, 0.0};
    CHECK_THROWS_AS(errw::log_occupation_density_det(f.ctx, bad), errw::domain_error);
}

TEST_CASE("joint density shifts by half the quadratic form along cycles") {
    Fixture f("triangle");
    errw::SimplexWeights x =
        errw::SimplexWeights::positive({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    const auto& b = f.ctx.basis.vectors.at(0);
    errw::SpanningTree tree = errw::enumerate_spanning_trees(f.g).front();
    std::vector<double> zero(f.g.edge_count(), 0.0);
    double at_zero = errw::log_joint_density(f.ctx, x, zero, tree);
    for (double c : {0.5, -1.0, 2.0}) {
        std::vector<double> y(f.g.edge_count());
        for (std::size_t e = 0; e < y.size(); ++e) y[e] = c * static_cast<double>(b[e]);
        double shifted = errw::log_joint_density(f.ctx, x, y, tree);
        // A_x(c b) = 9 c^2 at the uniform point
        CHECK(at_zero - shifted == Catch::Approx(4.5 * c * c));
    }
}

TEST_CASE("joint density enforces the vertex balance rule") {
    Fixture f("triangle");
    errw::SimplexWeights x =
        errw::SimplexWeights::positive({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    errw::SpanningTree tree = errw::enumerate_spanning_trees(f.g).front();
    std::vector<double> bad{1.0, 0.0, 0.0}; // sends mass from A to B only
    CHECK_THROWS_AS(errw::log_joint_density(f.ctx, x, bad, tree), errw::domain_error);

    errw::SpanningTree not_spanning{0};
    std::vector<double> zero(f.g.edge_count(), 0.0);
    CHECK_THROWS_AS(errw::log_joint_density(f.ctx, x, zero, not_spanning),
                    errw::domain_error);
}

TEST_CASE("summing the joint density over trees and cycles recovers the marginal") {
    Fixture f("triangle");
    auto trees = errw::enumerate_spanning_trees(f.g);
    errw::RandomSource rng(15);
    double reference = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> raw(3);
        for (double& v : raw) v = 0.1 + rng.uniform01();
        errw::SimplexWeights x = errw::SimplexWeights::normalize(std::move(raw));
        const auto& b = f.ctx.basis.vectors.at(0);
        // trapezoid over c is enough: the integrand is a clean Gaussian profile
        double integral = 0.0;
        double h = 0.01;
        for (double c = -12.0; c <= 12.0; c += h) {
            std::vector<double> y(3);
            for (std::size_t e = 0; e < 3; ++e) y[e] = c * static_cast<double>(b[e]);
            for (const auto& tree : trees)
                integral += h * std::exp(errw::log_joint_density(f.ctx, x, y, tree));
        }
        double ratio = integral / std::exp(errw::log_occupation_density_det(f.ctx, x));
        if (rep == 0) reference = ratio;
        CHECK(ratio == Catch::Approx(reference).epsilon(1e-6));
    }
}

TEST_CASE("markov path probabilities in a fixed environment") {
    Graph g = errw::builtin_graph("triangle");
    errw::VertexId A = g.require_vertex("A");
    errw::VertexId B = g.require_vertex("B");
    // edge order: (A,B), (B,C), (A,C)
    std::vector<double> x{0.5, 0.25, 0.25};
    errw::Trajectory ab{{A, B}};
    CHECK(errw::markov_path_probability(g, x, ab) == Catch::Approx(0.5 / 0.75));

    errw::Trajectory aba{{A, B, A}};
    CHECK(errw::markov_path_probability(g, x, aba) ==
          Catch::Approx((0.5 / 0.75) * (0.5 / 0.75)));

    std::vector<Rational> xr{rational(1, 2), rational(1, 4), rational(1, 4)};
    CHECK(errw::markov_path_probability_exact(g, xr, aba) == rational(4, 9));

    // a non-edge step has probability zero, not an error
    Graph path = errw::builtin_graph("path:4");
    std::vector<double> xp{0.4, 0.3, 0.3};
    errw::Trajectory skip{{0, 2}};
    CHECK(errw::markov_path_probability(path, xp, skip) == 0.0);
    std::vector<Rational> xpr{rational(2, 5), rational(3, 10), rational(3, 10)};
    CHECK(errw::markov_path_probability_exact(path, xpr, skip) == 0);
}

TEST_CASE("mixing the markov law over sampled environments matches reinforcement") {
    // averaging the two-step environment probability against the limiting
    // weight density must reproduce the exact reinforced value; adaptive
    // quadrature copes with the inverse-square-root edge singularities
    Fixture f("triangle");
    errw::VertexId A = 0, B = 1;
    errw::Trajectory aba{{A, B, A}};
    errw::detail::VectorIntegrand outer = [&](double x0, std::vector<double>& out) {
        errw::detail::VectorIntegrand inner = [&](double x1, std::vector<double>& in) {
            double x2 = 1.0 - x0 - x1;
            if (x2 <= 0.0) {
                in[0] = in[1] = 0.0;
                return;
            }
            errw::SimplexWeights x = errw::SimplexWeights::positive({x0, x1, x2});
            double w = std::exp(errw::log_occupation_density_det(f.ctx, x));
            in[0] = w;
            in[1] = w * errw::markov_path_probability(f.g, x.x, aba);
        };
        out = errw::detail::integrate_gk(inner, 0.0, 1.0 - x0, 2, 1e-9, 0.0, 400).value;
    };
    auto res = errw::detail::integrate_gk(outer, 0.0, 1.0, 2, 1e-8, 0.0, 400);
    CHECK(res.value[1] / res.value[0] == Catch::Approx(1.0 / 3.0).epsilon(1e-6));
}
