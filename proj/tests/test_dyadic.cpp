#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bumplab/dyadic.hpp"

using namespace bumplab;

TEST_CASE("cube counts match the closed form") {
    CHECK(build_tree(1, 0, {0.0, 0.0}, 1.0).cube_count() == 1);
    CHECK(build_tree(1, 2, {0.0, 0.0}, 1.0).cube_count() == 7);
    CHECK(build_tree(2, 1, {0.0, 0.0}, 1.0).cube_count() == 5);
    const DyadicTree t(2, 5);
    std::int64_t expected = 0;
    for (int k = 0; k <= 5; ++k) expected += std::int64_t{1} << (2 * k);
    CHECK(t.cube_count() == expected);
}

TEST_CASE("depth guard rejects oversized trees") {
    CHECK_THROWS_AS(build_tree(1, 25, {0.0, 0.0}, 1.0), capacity_error);
    CHECK_THROWS_AS(build_tree(2, 13, {0.0, 0.0}, 1.0), capacity_error);
    CHECK_NOTHROW(build_tree(1, 24, {0.0, 0.0}, 1.0));
    CHECK_THROWS_AS(build_tree(3, 2, {0.0, 0.0}, 1.0), parameter_error);
}

TEST_CASE("shifted family has 3^n members") {
    CHECK(shifted_grid_family(1, 4).size() == 3);
    CHECK(shifted_grid_family(2, 3).size() == 9);
}

namespace {

// exhaustive search for a family cube containing the lattice box
bool family_contains(const std::vector<DyadicTree>& grids, const DyadicTree& base, LatticeBox q,
                     double max_ratio) {
    const double qvol = static_cast<double>(q.hi[0] - q.lo[0]) *
                        (base.dimension() == 2 ? static_cast<double>(q.hi[1] - q.lo[1]) : 1.0);
    for (const auto& g : grids) {
        const auto off = g.lattice_offset_against(base);
        for (std::int64_t id = 0; id < g.cube_count(); ++id) {
            const CubeRef p = g.cube_at(id);
            LatticeBox b = g.cells_of(p);
            bool contains = true;
            for (int a = 0; a < base.dimension(); ++a) {
                b.lo[a] += off[a];
                b.hi[a] += off[a];
                if (!(b.lo[a] <= q.lo[a] && b.hi[a] >= q.hi[a])) contains = false;
            }
            if (!contains) continue;
            const double side = static_cast<double>(b.hi[0] - b.lo[0]);
            const double pvol = base.dimension() == 2 ? side * side : side;
            if (pvol <= max_ratio * qvol) return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("one-third shifts give the 3^n containment property") {
    // every lattice-aligned cube inside the unit root is caught by a family
    // cube of at most 3^n times its volume
    const int L = 4;
    const DyadicTree base(1, L);
    const auto grids = shifted_grid_family(1, L);
    const std::int64_t n = base.cells_per_side();
    for (std::int64_t d = 1; d <= n; ++d)
        for (std::int64_t i = 0; i + d <= n; ++i)
            CHECK(family_contains(grids, base, {{i, 0}, {i + d, 1}}, 3.0));
    // the spec's instance [0.25, 0.75)
    CHECK(family_contains(grids, base, {{4, 0}, {12, 1}}, 3.0));

    const DyadicTree base2(2, 3);
    const auto grids2 = shifted_grid_family(2, 3);
    const std::int64_t n2 = base2.cells_per_side();
    for (std::int64_t d = 1; d <= n2; ++d)
        for (std::int64_t x = 0; x + d <= n2; ++x)
            for (std::int64_t y = 0; y + d <= n2; ++y)
                CHECK(family_contains(grids2, base2, {{x, y}, {x + d, y + d}}, 9.0));
}

TEST_CASE("containment chains") {
    const DyadicTree t(1, 2);
    const auto chain = t.cubes_containing({0.3, 0.0});
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == CubeRef{0, {0, 0}}); // [0,1)
    CHECK(chain[1] == CubeRef{1, {0, 0}}); // [0,0.5)
    CHECK(chain[2] == CubeRef{2, {1, 0}}); // [0.25,0.5)

    const DyadicTree t1(1, 1);
    const auto half = t1.cubes_containing({0.5, 0.0});
    CHECK(half[1] == CubeRef{1, {1, 0}}); // boundary belongs to the right cube

    CHECK_THROWS_AS(t.cubes_containing({1.0, 0.0}), domain_error);
    CHECK_THROWS_AS(t.cubes_containing({-0.01, 0.0}), domain_error);
}

TEST_CASE("level partitions are exact") {
    for (const int dim : {1, 2}) {
        const DyadicTree t(dim, 4);
        for (int k = 0; k <= 4; ++k)
            CHECK(static_cast<double>(t.cubes_at(k)) * t.volume(k) == t.volume(0));
    }
}

TEST_CASE("nested-or-disjoint trichotomy, exhaustive") {
    const DyadicTree t(2, 2);
    for (std::int64_t i = 0; i < t.cube_count(); ++i)
        for (std::int64_t j = 0; j < t.cube_count(); ++j) {
            const LatticeBox a = t.cells_of(t.cube_at(i));
            const LatticeBox b = t.cells_of(t.cube_at(j));
            const bool overlap = a.lo[0] < b.hi[0] && b.lo[0] < a.hi[0] && a.lo[1] < b.hi[1] &&
                                 b.lo[1] < a.hi[1];
            const bool a_in_b = a.lo[0] >= b.lo[0] && a.hi[0] <= b.hi[0] && a.lo[1] >= b.lo[1] &&
                                a.hi[1] <= b.hi[1];
            const bool b_in_a = b.lo[0] >= a.lo[0] && b.hi[0] <= a.hi[0] && b.lo[1] >= a.lo[1] &&
                                b.hi[1] <= a.hi[1];
            CHECK((!overlap || a_in_b || b_in_a));
        }
}

TEST_CASE("chains are parent-consistent at random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const DyadicTree t(2, 5);
    for (int i = 0; i < 50; ++i) {
        const auto chain = t.cubes_containing({u(rng), u(rng)});
        for (std::size_t k = 1; k < chain.size(); ++k) CHECK(t.parent(chain[k]) == chain[k - 1]);
    }
}

TEST_CASE("parent and child navigation agree") {
    const DyadicTree t(2, 3);
    for (std::int64_t id = 0; id < t.cube_count(); ++id) {
        const CubeRef q = t.cube_at(id);
        CHECK(t.index_of(q) == id);
        if (!t.is_leaf(q))
            for (int j = 0; j < t.children_per_cube(); ++j) CHECK(t.parent(t.child(q, j)) == q);
    }
    CHECK_THROWS_AS(t.parent(t.root()), domain_error);
}

TEST_CASE("build_tree rounds shifts onto the finest lattice") {
    const DyadicTree shifted = build_tree(1, 4, {0.0, 0.0}, 1.0, {1.0 / 3.0, 0.0});
    // round(16/3) = 5 cells
    CHECK(shifted.root_lo()[0] == doctest::Approx(5.0 / 16.0).epsilon(1e-15));
}
