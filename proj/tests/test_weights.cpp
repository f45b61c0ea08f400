#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "bumplab/grid_function.hpp"

using namespace bumplab;

TEST_CASE("masses of simple weights") {
    const DyadicTree t(1, 3);
    const Weight one = constant_weight(t, 1.0);
    CHECK(one.mass(CubeRef{1, {0, 0}}) == 0.5);
    CHECK(one.mass(t.root()) == 1.0);

    // density x on [0,1): exact moments
    const Weight x = power_weight(t, 1.0, {0.0, 0.0});
    CHECK(x.mass(CubeRef{1, {0, 0}}) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(x.mass(CubeRef{1, {1, 0}}) == doctest::Approx(0.375).epsilon(1e-15));

    const Weight c = cascade_weight(t, 42);
    CHECK(c.mass(t.root()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("power weight halves at L=1") {
    const DyadicTree t(1, 1);
    const Weight x = power_weight(t, 1.0, {0.0, 0.0});
    CHECK(x.mass(CubeRef{1, {0, 0}}) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(x.mass(CubeRef{1, {1, 0}}) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK_THROWS_AS(power_weight(t, -1.0, {0.0, 0.0}), parameter_error);
    CHECK_THROWS_AS(power_weight(t, -1.5, {0.0, 0.0}), parameter_error);
}

TEST_CASE("constant weight fills every cell") {
    const DyadicTree t(2, 2);
    const Weight c = constant_weight(t, 3.0);
    for (std::int64_t i = 0; i < c.fn().cell_count(); ++i) CHECK(c.fn().cell_value(i) == 3.0);
}

TEST_CASE("averages, weighted averages and the zero-mass convention") {
    const DyadicTree t(1, 4);
    const Weight f = indicator_weight(t, {0.0, 0.0}, {0.5, 1.0});
    CHECK(f.fn().average(t.root()) == 0.5);

    const Weight sigma = indicator_weight(t, {0.0, 0.0}, {0.5, 1.0});
    CHECK(weighted_average(f.fn(), t.root(), sigma) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(weighted_average(f.fn(), CubeRef{1, {1, 0}}, sigma), zero_mass_error);
}

TEST_CASE("lp norms") {
    const DyadicTree t(1, 4);
    const Weight leb = constant_weight(t, 1.0);
    CHECK(lp_norm(constant_weight(t, 1.0).fn(), leb, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lp_norm(indicator_weight(t, {0.0, 0.0}, {0.5, 1.0}).fn(), leb, 2.0) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    const Weight heavy = constant_weight(t, 4.0); // total mass 4
    CHECK(lp_norm(constant_weight(t, 1.0).fn(), heavy, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(lp_norm(leb.fn(), leb, 0.5), parameter_error);
}

TEST_CASE("cascade conserves mass and is reproducible") {
    const DyadicTree t(1, 8);
    for (const std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        const Weight a = cascade_weight(t, seed);
        CHECK(a.mass(t.root()) == doctest::Approx(1.0).epsilon(1e-13));
        const Weight b = cascade_weight(t, seed);
        CHECK(std::memcmp(a.fn().cell_values().data(), b.fn().cell_values().data(),
                          sizeof(double) * a.fn().cell_values().size()) == 0);
    }
    const Weight scaled = cascade_weight(t, 5, 3.5);
    CHECK(scaled.mass(t.root()) == doctest::Approx(3.5).epsilon(1e-13));
}

TEST_CASE("capped cascade describes one measure at every resolution") {
    const DyadicTree coarse(1, 6), fine(1, 9);
    const Weight a = cascade_weight(coarse, 11, 1.0, 5);
    const Weight b = cascade_weight(fine, 11, 1.0, 5);
    for (std::int64_t id = 0; id < coarse.cube_count(); ++id) {
        const CubeRef q = coarse.cube_at(id);
        CHECK(a.mass(q) == doctest::Approx(b.mass(q)).epsilon(1e-13));
    }
}

TEST_CASE("aggregation is exact parent = sum of children") {
    const DyadicTree t(2, 4);
    const Weight c = cascade_weight(t, 3);
    for (std::int64_t id = 0; id < t.cube_count(); ++id) {
        const CubeRef q = t.cube_at(id);
        if (t.is_leaf(q)) continue;
        double kids = 0.0;
        for (int j = 0; j < t.children_per_cube(); ++j) kids += c.mass(t.child(q, j));
        CHECK(c.mass(q) == kids);
    }
}

TEST_CASE("scaling identities") {
    const DyadicTree t(1, 6);
    const Weight sigma = cascade_weight(t, 17);
    std::vector<double> scaled(sigma.fn().cell_values().begin(), sigma.fn().cell_values().end());
    for (auto& v : scaled) v *= 7.0;
    const GridFunction sigma7(t, std::move(scaled));
    for (const CubeRef q : {t.root(), CubeRef{3, {5, 0}}, CubeRef{6, {63, 0}}})
        CHECK(sigma7.mass(q) == doctest::Approx(7.0 * sigma.mass(q)).epsilon(1e-14));

    const Weight leb = constant_weight(t, 1.0);
    const GridFunction f = random_weight(t, 23).fn();
    std::vector<double> f3(f.cell_values().begin(), f.cell_values().end());
    for (auto& v : f3) v *= -3.0;
    CHECK(lp_norm(GridFunction(t, std::move(f3)), leb, 1.5) ==
          doctest::Approx(3.0 * lp_norm(f, leb, 1.5)).epsilon(1e-13));
}

TEST_CASE("Hoelder sanity on random instances") {
    const DyadicTree t(1, 6);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        const Weight mu = cascade_weight(t, 100 + i);
        const GridFunction f = random_weight(t, 200 + i).fn();
        const GridFunction g = random_weight(t, 300 + i).fn();
        const double p = 1.0 + (i % 4 + 1) * 0.5;
        const double pc = p / (p - 1.0);
        CHECK(integral_product(f, g, mu) <=
              lp_norm(f, mu, p) * lp_norm(g, mu, pc) * (1.0 + 1e-12));
    }
}

TEST_CASE("weight JSON round-trips bit-exactly") {
    const DyadicTree t(2, 3);
    const Weight w = cascade_weight(t, 77);
    const std::string text = weight_to_json(w);
    std::vector<DyadicTree> storage;
    const Weight back = weight_from_json(text, storage);
    REQUIRE(back.fn().cell_count() == w.fn().cell_count());
    CHECK(std::memcmp(back.fn().cell_values().data(), w.fn().cell_values().data(),
                      sizeof(double) * static_cast<std::size_t>(w.fn().cell_count())) == 0);
    CHECK(back.tree().dimension() == 2);
    CHECK(back.tree().depth() == 3);
}

TEST_CASE("mass rejects cubes from another grid") {
    const DyadicTree a(1, 3), b(1, 4);
    const Weight w = constant_weight(a, 1.0);
    CHECK_THROWS_AS(mass(w.fn(), b, b.root()), mismatch_error);
    CHECK(mass(w.fn(), a, a.root()) == 1.0);
}

TEST_CASE("indicator weights cut cells exactly") {
    const DyadicTree t(1, 3);
    const Weight w = indicator_weight(t, {0.1, 0.0}, {0.6, 1.0});
    CHECK(w.mass(t.root()) == doctest::Approx(0.5).epsilon(1e-15));
}
