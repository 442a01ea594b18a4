#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "errw/graph.hpp"
#include "errw/io.hpp"
#include "errw/ladder.hpp"
#include "errw/random.hpp"
#include "errw/walk.hpp"

using errw::LazyLattice;

TEST_CASE("strip vertices expand with sorted neighbors and correct degrees") {
    LazyLattice lat = LazyLattice::strip(3);
    CHECK(lat.vertex_count() >= 1);
    CHECK_FALSE(lat.is_plane());
    errw::RandomSource rng(1);
    for (int i = 0; i < 2000; ++i) lat.step(1.0, rng);
    // middle-row vertices have degree 4, edge rows 3
    CHECK(lat.vertex_count() > 10);
    std::uint64_t total = 0;
    for (std::uint64_t c : lat.edge_crossings()) total += c;
    CHECK(total == 2000);
}

TEST_CASE("width one strip degenerates to the integer line") {
    LazyLattice lat = LazyLattice::strip(1);
    errw::RandomSource rng(4);
    std::int32_t v = lat.step(1.0, rng);
    CHECK(lat.displacement(v) == 1);
    CHECK(lat.fiber_of(v) == 0);
}

TEST_CASE("plane displacement is the taxicab distance") {
    LazyLattice lat = LazyLattice::plane();
    errw::RandomSource rng(9);
    std::int64_t steps = 0;
    std::int32_t v = lat.position();
    for (int i = 0; i < 100; ++i) {
        v = lat.step(1.0, rng);
        ++steps;
        std::int64_t d = std::abs(static_cast<std::int64_t>(lat.level_of(v))) +
                         std::abs(static_cast<std::int64_t>(lat.fiber_of(v)));
        CHECK(lat.displacement(v) == d);
        CHECK(d <= steps);
        CHECK((d + steps) % 2 == 0); // parity of the taxicab distance
    }
}

TEST_CASE("lazy strip walk equals the finite-graph walk on a wide window") {
    // build the same strip as an ordinary graph, interning vertices in
    // (level, fiber) order so the adjacency scan order coincides
    const int width = 2, window = 60, steps = 20000;
    auto name = [](int level, int fiber) {
        return std::to_string(level) + ":" + std::to_string(fiber);
    };
    std::vector<std::pair<std::string, std::string>> edges;
    for (int n = -window; n <= window; ++n)
        for (int i = 0; i < width; ++i) {
            if (i > 0) edges.emplace_back(name(n, i - 1), name(n, i));
            if (n > -window) edges.emplace_back(name(n - 1, i), name(n, i));
        }
    errw::Graph g = errw::Graph::from_edge_list(edges);
    errw::WalkState state(g, g.require_vertex(name(0, 0)),
                          errw::InitialWeights::uniform(g, errw::rational(1)));
    LazyLattice lat = LazyLattice::strip(width);

    errw::RandomSource r1(99), r2(99);
    for (int t = 0; t < steps; ++t) {
        errw::VertexId gv = state.step(r1);
        std::int32_t lv = lat.step(1.0, r2);
        REQUIRE(g.vertex_name(gv) == name(lat.level_of(lv), lat.fiber_of(lv)));
    }
    REQUIRE(lat.displacement(lat.position()) < window - 1); // window never clipped
}

TEST_CASE("checkpoints double from 1024 and always include the final time") {
    LazyLattice lat = LazyLattice::strip(2);
    errw::RandomSource rng(3);
    errw::LadderStats stats = errw::long_run(lat, 2.0, 5000, rng);
    std::vector<std::uint64_t> ts;
    for (const auto& cp : stats.checkpoints) ts.push_back(cp.t);
    CHECK(ts == std::vector<std::uint64_t>{1024, 2048, 4096, 5000});
    for (std::size_t i = 1; i < stats.checkpoints.size(); ++i) {
        CHECK(stats.checkpoints[i].max_distance >= stats.checkpoints[i - 1].max_distance);
        CHECK(stats.checkpoints[i].returns >= stats.checkpoints[i - 1].returns);
    }
    CHECK(stats.max_distance == stats.checkpoints.back().max_distance);
    CHECK(stats.returns_total == stats.checkpoints.back().returns);

    LazyLattice small = LazyLattice::strip(2);
    errw::RandomSource rng2(3);
    errw::LadderStats short_stats = errw::long_run(small, 2.0, 700, rng2);
    REQUIRE(short_stats.checkpoints.size() == 1);
    CHECK(short_stats.checkpoints[0].t == 700);
}

TEST_CASE("crossing counts account for every step of a long run") {
    LazyLattice lat = LazyLattice::strip(3);
    errw::RandomSource rng(8);
    errw::LadderStats stats = errw::long_run(lat, 1.0, 30000, rng);
    std::uint64_t total = 0;
    for (std::uint64_t c : stats.counts) total += c;
    CHECK(total == 30000);
    REQUIRE(stats.edges.size() == stats.counts.size());
    for (const auto& e : stats.edges) {
        // endpoints are stored lexicographically and are lattice neighbors
        bool level_edge = (e.kind == 0);
        if (level_edge) {
            CHECK(e.bu == e.au + 1);
            CHECK(e.bf == e.af);
        } else {
            CHECK(e.bu == e.au);
            CHECK(e.bf == e.af + 1);
        }
    }
}

TEST_CASE("edge distance uses the nearer endpoint") {
    errw::LatticeEdgeInfo level_edge{2, 0, 3, 0, 0};
    CHECK(errw::lattice_edge_distance(level_edge, false) == 2);
    errw::LatticeEdgeInfo across{-4, 1, -3, 1, 0};
    CHECK(errw::lattice_edge_distance(across, false) == 3);
    errw::LatticeEdgeInfo plane_edge{-1, 2, -1, 3, 1};
    CHECK(errw::lattice_edge_distance(plane_edge, true) == 3);
}

TEST_CASE("occupation decay fits need enough distinct distances") {
    LazyLattice lat = LazyLattice::strip(2);
    errw::RandomSource rng(5);
    errw::LadderStats tiny = errw::long_run(lat, 2.0, 64, rng);
    CHECK_THROWS_AS(errw::decay_fit(tiny), errw::degenerate_fit_error);
}

TEST_CASE("strong reinforcement produces decaying occupation away from home") {
    LazyLattice lat = LazyLattice::strip(2);
    errw::RandomSource rng(2);
    errw::LadderStats stats = errw::long_run(lat, 2.0, 2000000, rng);
    errw::DecayFit fit = errw::decay_fit(stats);
    CHECK(fit.levels >= 10);
    CHECK(fit.slope < 0.0);

    errw::TailProfile tail = errw::tail_profile(stats);
    REQUIRE_FALSE(tail.table.empty());
    CHECK(tail.table.front().second == Catch::Approx(1.0)); // everything is >= 0

    errw::RangeTrace range = errw::range_trace(stats);
    CHECK(range.fit_valid);
    CHECK(range.slope > 0.0);
}

TEST_CASE("ladder runs are reproducible from the seed") {
    LazyLattice a = LazyLattice::strip(4);
    LazyLattice b = LazyLattice::strip(4);
    errw::RandomSource r1(31), r2(31);
    errw::LadderStats sa = errw::long_run(a, 1.0, 50000, r1);
    errw::LadderStats sb = errw::long_run(b, 1.0, 50000, r2);
    CHECK(sa.counts == sb.counts);
    CHECK(sa.returns_total == sb.returns_total);
    CHECK(sa.max_distance == sb.max_distance);
}

TEST_CASE("square lattice runs report taxicab statistics") {
    errw::RandomSource rng(6);
    errw::LadderStats stats = errw::z2_occupation(1.0, 100000, rng);
    CHECK(stats.plane);
    CHECK(stats.steps == 100000);
    CHECK(stats.max_distance > 0);
    std::uint64_t total = 0;
    for (std::uint64_t c : stats.counts) total += c;
    CHECK(total == 100000);
}

TEST_CASE("tree fibers are accepted and cycles rejected") {
    errw::Graph tri = errw::builtin_graph("triangle");
    CHECK_THROWS_AS(LazyLattice::tree_fiber(tri), errw::domain_error);
    errw::Graph star = errw::builtin_graph("star:3");
    LazyLattice lat = LazyLattice::tree_fiber(star);
    errw::RandomSource rng(10);
    for (int i = 0; i < 1000; ++i) lat.step(1.0, rng);
    std::uint64_t total = 0;
    for (std::uint64_t c : lat.edge_crossings()) total += c;
    CHECK(total == 1000);
}
