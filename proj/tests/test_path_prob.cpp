#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "errw/graph.hpp"
#include "errw/io.hpp"
#include "errw/path_prob.hpp"
#include "errw/random.hpp"
#include "errw/walk.hpp"

#include "support/graph_enum.hpp"

using errw::Graph;
using errw::Rational;
using errw::rational;

TEST_CASE("triangle path probabilities match hand computations") {
    Graph g = errw::builtin_graph("triangle");
    errw::InitialWeights a = errw::InitialWeights::uniform(g, rational(1));
    auto P = [&](std::initializer_list<const char*> names) {
        errw::Trajectory traj;
        for (const char* n : names) traj.vertices.push_back(g.require_vertex(n));
        Rational seq = errw::path_probability(g, a, traj);
        Rational closed = errw::path_probability_closed_form(g, a, traj);
        REQUIRE(seq == closed);
        return seq;
    };
    CHECK(P({"A", "B", "A"}) == rational(1, 3));
    CHECK(P({"A", "B", "C", "A"}) == rational(1, 18));
    CHECK(P({"A", "C", "B", "A"}) == rational(1, 18));
    CHECK(P({"A", "B"}) == rational(1, 2));
}

TEST_CASE("paths through non-edges are rejected") {
    Graph g = errw::builtin_graph("path:4");
    errw::InitialWeights a = errw::InitialWeights::uniform(g, rational(1));
    errw::Trajectory skip{{0, 2}};
    CHECK_THROWS_AS(errw::path_probability(g, a, skip), errw::domain_error);
    CHECK_THROWS_AS(errw::path_probability_closed_form(g, a, skip), errw::domain_error);
}

TEST_CASE("the one-step law of the walk matches the path probability ratio") {
    Graph g = errw::builtin_graph("complete:4");
    errw::InitialWeights a =
        errw::InitialWeights::from(std::vector<Rational>{rational(1), rational(1, 2), rational(2),
                                                         rational(1), rational(3, 2), rational(1)});
    errw::RandomSource rng(17);
    errw::Trajectory traj = errw::simulate(g, 0, a, 12, rng);
    for (std::size_t cut = 1; cut <= traj.length(); ++cut) {
        errw::Trajectory prefix{{traj.vertices.begin(), traj.vertices.begin() + cut + 1}};
        errw::Trajectory shorter{{traj.vertices.begin(), traj.vertices.begin() + cut}};
        Rational ratio = errw::path_probability(g, a, prefix) /
                         errw::path_probability(g, a, shorter);
        // replay the shorter history, then ask for the one-step law
        errw::WalkState state(g, 0, a);
        for (std::size_t i = 1; i < shorter.vertices.size(); ++i)
            state.force_step(shorter.vertices[i]);
        Rational from_state = 0;
        for (const auto& [v, p] : state.step_distribution())
            if (v == prefix.vertices[cut]) from_state += p;
        CHECK(ratio == from_state);
    }
}

TEST_CASE("closed form equals the sequential product on random graphs") {
    errw::RandomSource rng(31);
    std::vector<Rational> pool{rational(1, 2), rational(1), rational(2), rational(5, 3)};
    for (const char* name : {"cycle:5", "complete:4", "star:4", "path:5"}) {
        Graph g = errw::builtin_graph(name);
        std::vector<Rational> weights;
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            weights.push_back(pool[rng.below(pool.size())]);
        errw::InitialWeights a = errw::InitialWeights::from(weights);
        for (int rep = 0; rep < 20; ++rep) {
            errw::VertexId v0 = static_cast<errw::VertexId>(rng.below(g.vertex_count()));
            errw::Trajectory traj = errw::simulate(g, v0, a, 1 + rng.below(15), rng);
            CHECK(errw::path_probability(g, a, traj) ==
                  errw::path_probability_closed_form(g, a, traj));
        }
    }
}

TEST_CASE("paths with equal crossing counts are equally likely") {
    // spot check on the square with one diagonal; the exhaustive sweep over
    // all small graphs lives in the acceptance suite
    Graph g = Graph::from_edge_list({{"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "0"}, {"0", "2"}});
    errw::InitialWeights a = errw::InitialWeights::uniform(g, rational(1));
    std::map<std::vector<std::uint64_t>, std::vector<Rational>> by_counts;
    testsupport::for_each_walk(g, 0, 6, [&](const errw::Trajectory& traj) {
        if (traj.length() != 6) return;
        by_counts[errw::edge_crossing_counts(g, traj)].push_back(
            errw::path_probability(g, a, traj));
    });
    REQUIRE(by_counts.size() > 10);
    std::size_t multi = 0;
    for (const auto& [counts, probs] : by_counts) {
        if (probs.size() > 1) ++multi;
        for (const Rational& p : probs) CHECK(p == probs.front());
    }
    CHECK(multi > 0); // the grouping actually exercised nontrivial classes
}

TEST_CASE("probabilities over all fixed-length walks sum to one") {
    Graph g = errw::builtin_graph("triangle");
    errw::InitialWeights a = errw::InitialWeights::uniform(g, rational(3, 2));
    for (std::size_t len : {1u, 2u, 3u, 4u, 5u}) {
        Rational total = 0;
        testsupport::for_each_walk(g, 0, len, [&](const errw::Trajectory& traj) {
            if (traj.length() == len) total += errw::path_probability(g, a, traj);
        });
        CHECK(total == 1);
    }
}
