#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "errw/random.hpp"
#include "errw/stats.hpp"

TEST_CASE("running statistics match closed forms") {
    errw::RunningStat s;
    for (double v : {1.0, 2.0, 3.0, 4.0}) s.add(v);
    CHECK(s.count() == 4);
    CHECK(s.mean() == Catch::Approx(2.5));
    CHECK(s.variance() == Catch::Approx(5.0 / 3.0));

    errw::RunningStat a, b;
    a.add(1.0);
    a.add(2.0);
    b.add(3.0);
    b.add(4.0);
    a.merge(b);
    CHECK(a.mean() == Catch::Approx(s.mean()));
    CHECK(a.variance() == Catch::Approx(s.variance()));
}

TEST_CASE("line fit recovers an exact line") {
    std::vector<double> x{1, 2, 3, 4, 5}, y;
    for (double v : x) y.push_back(3.0 * v - 7.0);
    errw::LineFit f = errw::fit_line(x, y);
    CHECK(f.slope == Catch::Approx(3.0));
    CHECK(f.intercept == Catch::Approx(-7.0));
    CHECK(f.r2 == Catch::Approx(1.0));
    std::vector<double> flat{2, 2, 2};
    CHECK_THROWS_AS(errw::fit_line(flat, flat), errw::degenerate_fit_error);
}

TEST_CASE("gini coefficient on known configurations") {
    CHECK(errw::gini({5, 5, 5, 5}) == Catch::Approx(0.0).margin(1e-12));
    // one holder of everything among n: (n-1)/n
    CHECK(errw::gini({0, 0, 0, 12}) == Catch::Approx(0.75));
    double even_split = errw::gini({1, 1, 2, 2});
    CHECK(even_split > 0.0);
    CHECK(even_split < 0.5);
}

TEST_CASE("batch means shrink like one over root n on iid data") {
    errw::RandomSource rng(123);
    std::vector<double> chain(1 << 14);
    for (double& v : chain) v = rng.normal();
    double se = errw::batch_means_se(chain);
    double iid_se = 1.0 / std::sqrt(static_cast<double>(chain.size()));
    CHECK(se == Catch::Approx(iid_se).epsilon(0.5));
    double ess = errw::effective_sample_size(chain);
    CHECK(ess > 0.25 * static_cast<double>(chain.size()));
}

TEST_CASE("random source moments and determinism") {
    errw::RandomSource a(7), b(7);
    for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());

    errw::RandomSource rng(2024);
    errw::RunningStat normals, gammas;
    for (int i = 0; i < 20000; ++i) normals.add(rng.normal());
    for (int i = 0; i < 20000; ++i) gammas.add(rng.gamma(2.5));
    CHECK(normals.mean() == Catch::Approx(0.0).margin(0.03));
    CHECK(normals.variance() == Catch::Approx(1.0).epsilon(0.05));
    CHECK(gammas.mean() == Catch::Approx(2.5).epsilon(0.05));
    CHECK(gammas.variance() == Catch::Approx(2.5).epsilon(0.1));

    std::vector<double> dir;
    std::vector<double> alpha{1.0, 2.0, 3.0};
    errw::RunningStat first;
    for (int i = 0; i < 20000; ++i) {
        rng.dirichlet(alpha, dir);
        double total = dir[0] + dir[1] + dir[2];
        REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
        first.add(dir[0]);
    }
    CHECK(first.mean() == Catch::Approx(1.0 / 6.0).epsilon(0.05));
}
