#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "errw/graph.hpp"
#include "errw/homology.hpp"
#include "errw/io.hpp"
#include "errw/random.hpp"
#include "errw/rational.hpp"
#include "errw/spanning.hpp"

using errw::Graph;
using errw::Rational;

TEST_CASE("cycle basis has rank E - V + 1 and zero vertex balance") {
    for (const char* name : {"triangle", "cycle:5", "complete:4", "path:5", "star:4"}) {
        Graph g = errw::builtin_graph(name);
        errw::CycleBasis basis = errw::cycle_basis(g);
        CHECK(basis.vectors.size() == g.edge_count() - g.vertex_count() + 1);
        for (const auto& vec : basis.vectors) {
            std::vector<long> balance = errw::vertex_balance(g, vec);
            for (long b : balance) CHECK(b == 0);
        }
    }
}

TEST_CASE("quadratic form is positive definite on the cycle space") {
    Graph g = errw::builtin_graph("complete:4");
    errw::CycleBasis basis = errw::cycle_basis(g);
    errw::RandomSource rng(5);
    std::vector<double> x(g.edge_count());
    for (double& v : x) v = 0.05 + rng.uniform01();
    for (const auto& vec : basis.vectors) {
        std::vector<double> y(vec.begin(), vec.end());
        CHECK(errw::quadratic_form(x, y) > 0.0);
    }
    std::vector<double> zero(g.edge_count(), 0.0);
    CHECK(errw::quadratic_form(x, zero) == 0.0);
}

TEST_CASE("tree count of the complete graph follows Cayley's formula") {
    for (int n : {3, 4, 5}) {
        Graph g = errw::builtin_graph("complete:" + std::to_string(n));
        auto trees = errw::enumerate_spanning_trees(g);
        double expected = std::pow(n, n - 2);
        CHECK(static_cast<double>(trees.size()) == expected);
        for (const auto& t : trees) CHECK(errw::is_spanning_tree(g, t));
    }
}

TEST_CASE("determinant times edge product equals the spanning tree polynomial") {
    errw::RandomSource rng(99);
    for (const char* name : {"triangle", "cycle:4", "complete:4", "complete:5"}) {
        Graph g = errw::builtin_graph(name);
        std::vector<double> x(g.edge_count());
        for (double& v : x) v = 0.1 + rng.uniform01();
        double prod = 1.0;
        for (double v : x) prod *= v;
        double lhs = errw::det_quadratic_form(g, x) * prod;
        double rhs = errw::spanning_tree_polynomial(g, x);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("determinant identity holds exactly in rational arithmetic") {
    Graph g = errw::builtin_graph("complete:4");
    std::vector<Rational> x;
    for (int i = 1; i <= 6; ++i) x.push_back(errw::rational(i, 7));
    errw::CycleBasis basis = errw::cycle_basis(g);
    Rational det = errw::det_quadratic_form_exact(basis, x);
    Rational prod = 1;
    for (const Rational& v : x) prod *= v;
    Rational tree_poly = errw::spanning_tree_polynomial_exact(g, x);
    CHECK(det * prod == tree_poly);
}

TEST_CASE("exact and floating determinants agree") {
    Graph g = errw::builtin_graph("cycle:6");
    std::vector<Rational> xr;
    std::vector<double> xd;
    for (int i = 1; i <= 6; ++i) {
        xr.push_back(errw::rational(i, 21));
        xd.push_back(static_cast<double>(i) / 21.0);
    }
    errw::CycleBasis basis = errw::cycle_basis(g);
    CHECK(errw::det_quadratic_form(basis, xd) ==
          Catch::Approx(errw::to_double(errw::det_quadratic_form_exact(basis, xr))));
}
