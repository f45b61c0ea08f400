#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bumplab/operators.hpp"

using namespace bumplab;

namespace {

// test-local reference: fold every cube of the tree onto its cells
std::vector<double> all_cubes_reference(const GridFunction& f, double alpha, bool maximal) {
    const DyadicTree& t = f.tree();
    std::vector<double> out(static_cast<std::size_t>(t.cell_count()), 0.0);
    const std::int64_t n = t.cells_per_side();
    for (std::int64_t id = 0; id < t.cube_count(); ++id) {
        const CubeRef q = t.cube_at(id);
        const double term = std::pow(t.side(q.level), alpha) * (f.mass(q) / t.volume(q.level));
        const LatticeBox b = t.cells_of(q);
        for (std::int64_t y = b.lo[1]; y < b.hi[1]; ++y)
            for (std::int64_t x = b.lo[0]; x < b.hi[0]; ++x) {
                auto& slot = out[static_cast<std::size_t>(t.dimension() == 1 ? x : y * n + x)];
                slot = maximal ? std::max(slot, term) : slot + term;
            }
    }
    return out;
}

// test-local reference for the windowed maximal operator: every lattice
// interval in [-n, 2n), including sides beyond 2n
double window_reference_at(const GridFunction& f, double alpha, std::int64_t cell) {
    const DyadicTree& t = f.tree();
    const std::int64_t n = t.cells_per_side();
    const double h = t.cell_size();
    double best = 0.0;
    for (std::int64_t i = -n; i <= cell; ++i)
        for (std::int64_t j = cell + 1; j <= 2 * n; ++j) {
            const double m = f.mass(LatticeBox{{i, 0}, {j, 1}});
            best = std::max(best, std::pow(static_cast<double>(j - i) * h, alpha - 1.0) * m);
        }
    return best;
}

} // namespace

TEST_CASE("exponent configuration") {
    ExponentConfig cfg{1, 0.5, 2.0, 3.0};
    CHECK_NOTHROW(cfg.validate());
    CHECK(1.0 / cfg.p + 1.0 / cfg.p_conj() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cfg.q_conj() == doctest::Approx(1.5).epsilon(1e-15));
    const ExponentConfig d = cfg.dual();
    CHECK(d.p == doctest::Approx(1.5));
    CHECK(d.q == doctest::Approx(2.0));
    CHECK_THROWS_AS((ExponentConfig{1, 1.0, 2.0, 2.0}.validate()), parameter_error);
    CHECK_THROWS_AS((ExponentConfig{1, 0.5, 3.0, 2.0}.validate()), parameter_error);
    CHECK_THROWS_AS((ExponentConfig{1, 0.5, 1.0, 2.0}.dual()), parameter_error);
}

TEST_CASE("dyadic maximal on the left-half indicator") {
    const DyadicTree t(1, 4);
    const GridFunction f = indicator_weight(t, {0.0, 0.0}, {0.5, 1.0}).fn();
    const GridFunction m = dyadic_frac_maximal(f, t, 0.5);
    for (std::int64_t c = 0; c < 8; ++c) CHECK(m.cell_value(c) == std::pow(0.5, 0.5));
    for (std::int64_t c = 8; c < 16; ++c) CHECK(m.cell_value(c) == 0.5);

    const GridFunction m0 = dyadic_frac_maximal(f, t, 0.0);
    for (std::int64_t c = 0; c < 8; ++c) CHECK(m0.cell_value(c) == 1.0);
    for (std::int64_t c = 8; c < 16; ++c) CHECK(m0.cell_value(c) == 0.5);
}

TEST_CASE("constants are fixed points of the dyadic maximal") {
    const DyadicTree t(1, 5);
    const GridFunction one = constant_weight(t, 1.0).fn();
    for (const double a : {0.0, 0.3, 0.9}) {
        const GridFunction m = dyadic_frac_maximal(one, t, a);
        for (std::int64_t c = 0; c < m.cell_count(); ++c) CHECK(m.cell_value(c) == 1.0);
    }
}

TEST_CASE("tree passes equal the all-cubes reference exactly") {
    for (const int dim : {1, 2}) {
        const DyadicTree t(dim, dim == 1 ? 6 : 3);
        for (int i = 0; i < 10; ++i) {
            const GridFunction f = random_weight(t, 1000 + i).fn();
            for (const double a : {0.25, 0.5, 0.75}) {
                const GridFunction m = dyadic_frac_maximal(f, t, a);
                const GridFunction s = dyadic_frac_integral(f, t, a);
                const auto mo = all_cubes_reference(f, a, true);
                const auto so = all_cubes_reference(f, a, false);
                for (std::int64_t c = 0; c < t.cell_count(); ++c) {
                    CHECK(m.cell_value(c) == mo[static_cast<std::size_t>(c)]);
                    CHECK(s.cell_value(c) == so[static_cast<std::size_t>(c)]);
                }
            }
        }
    }
}

TEST_CASE("alpha domain errors") {
    const DyadicTree t(1, 3);
    const GridFunction f = constant_weight(t, 1.0).fn();
    CHECK_THROWS_AS(dyadic_frac_maximal(f, t, 1.0), parameter_error);
    CHECK_THROWS_AS(dyadic_frac_maximal(f, t, -0.1), parameter_error);
    CHECK_THROWS_AS(dyadic_frac_integral(f, t, 0.0), parameter_error);
    CHECK_THROWS_AS(frac_maximal(f, 1.0), parameter_error);
    CHECK_THROWS_AS(kernel_frac_integral(f, 0.0), parameter_error);
}

TEST_CASE("windowed maximal dominates the dyadic one") {
    const DyadicTree t(1, 5);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(0.0, 0.999);
    for (int i = 0; i < 50; ++i) {
        const GridFunction f = random_weight(t, 2000 + i).fn();
        const double a = ua(rng);
        const GridFunction full = frac_maximal(f, a);
        const GridFunction dyad = dyadic_frac_maximal(f, t, a);
        for (std::int64_t c = 0; c < t.cell_count(); ++c)
            CHECK(full.cell_value(c) >= dyad.cell_value(c));
    }
}

TEST_CASE("windowed maximal equals the full interval enumeration") {
    const DyadicTree t(1, 6);
    for (int i = 0; i < 3; ++i) {
        const GridFunction f = random_weight(t, 3000 + i).fn();
        for (const double a : {0.0, 0.5}) {
            const GridFunction m = frac_maximal(f, a);
            for (std::int64_t c = 0; c < t.cell_count(); ++c)
                CHECK(m.cell_value(c) == doctest::Approx(window_reference_at(f, a, c)).epsilon(1e-14));
        }
    }
}

TEST_CASE("hl maximal matches the continuum profile of the half indicator") {
    const int L = 12;
    const DyadicTree t(1, L);
    const GridFunction f = indicator_weight(t, {0.0, 0.0}, {0.5, 1.0}).fn();
    const GridFunction m = hl_maximal(f);
    const std::int64_t n = t.cells_per_side();
    const double h = t.cell_size();
    for (std::int64_t c = n / 2; c < n; c += 37) {
        // best lattice window reaches from 0 to just past the cell
        const double lattice = 0.5 / (static_cast<double>(c + 1) * h);
        CHECK(m.cell_value(c) == doctest::Approx(lattice).epsilon(1e-13));
        const double center = (static_cast<double>(c) + 0.5) * h;
        CHECK(std::abs(m.cell_value(c) - 1.0 / (2.0 * center)) <= std::ldexp(1.0, -L + 1));
    }
    // M(1_[0,1)) is 1 on the root
    const GridFunction one = constant_weight(t, 1.0).fn();
    const GridFunction m1 = hl_maximal(one);
    for (std::int64_t c = 0; c < n; c += 101) CHECK(m1.cell_value(c) == 1.0);
    // value at x = 0.75 per the lattice enumeration
    const std::int64_t cell = (3 * n) / 4;
    CHECK(m.cell_value(cell) ==
          doctest::Approx(0.5 / (0.75 + h)).epsilon(1e-13));
}

TEST_CASE("maximal operators are monotone") {
    const DyadicTree t(1, 5);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        const GridFunction f = random_weight(t, 4000 + i).fn();
        std::vector<double> gcells(f.cell_values().begin(), f.cell_values().end());
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto& v : gcells) v += u(rng);
        const GridFunction g(t, std::move(gcells));
        const GridFunction mf = frac_maximal(f, 0.25), mg = frac_maximal(g, 0.25);
        const GridFunction df = dyadic_frac_maximal(f, t, 0.25), dg = dyadic_frac_maximal(g, t, 0.25);
        for (std::int64_t c = 0; c < t.cell_count(); ++c) {
            CHECK(mf.cell_value(c) <= mg.cell_value(c));
            CHECK(df.cell_value(c) <= dg.cell_value(c));
        }
    }
}

TEST_CASE("dyadic fractional integral values") {
    const DyadicTree t2(1, 2);
    const GridFunction one = constant_weight(t2, 1.0).fn();
    const GridFunction s = dyadic_frac_integral(one, t2, 0.5);
    for (std::int64_t c = 0; c < 4; ++c)
        CHECK(s.cell_value(c) == doctest::Approx(1.0 + std::sqrt(0.5) + 0.5).epsilon(1e-15));

    const DyadicTree t1(1, 1);
    const Weight half = indicator_weight(t1, {0.0, 0.0}, {0.5, 1.0});
    std::vector<double> cells(half.fn().cell_values().begin(), half.fn().cell_values().end());
    for (auto& v : cells) v *= 2.0;
    const GridFunction f(t1, std::move(cells));
    const GridFunction s1 = dyadic_frac_integral(f, t1, 0.5);
    CHECK(s1.cell_value(1) == 1.0); // only the root contributes on [1/2,1)

    const DyadicTree t(1, 6);
    const GridFunction g = random_weight(t, 5).fn();
    std::vector<double> tripled(g.cell_values().begin(), g.cell_values().end());
    for (auto& v : tripled) v *= 3.0;
    const GridFunction s3 = dyadic_frac_integral(GridFunction(t, std::move(tripled)), t, 0.5);
    const GridFunction sg = dyadic_frac_integral(g, t, 0.5);
    for (std::int64_t c = 0; c < t.cell_count(); ++c)
        CHECK(s3.cell_value(c) == doctest::Approx(3.0 * sg.cell_value(c)).epsilon(1e-14));
}

TEST_CASE("kernel integral: diagonal, symmetry, capacity") {
    // single cell of width 1: the apply returns the cell-averaged
    // self-interaction 2 h^alpha / (alpha (alpha+1))
    const DyadicTree t0(1, 0);
    const GridFunction one(t0, {1.0});
    const GridFunction k0 = kernel_frac_integral(one, 0.5);
    CHECK(k0.cell_value(0) == doctest::Approx(2.0 / (0.5 * 1.5)).epsilon(1e-15));

    // symmetry through basis vectors
    const DyadicTree t(1, 3);
    std::vector<std::vector<double>> columns;
    for (std::int64_t j = 0; j < t.cell_count(); ++j) {
        std::vector<double> e(static_cast<std::size_t>(t.cell_count()), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        const GridFunction col = kernel_frac_integral(GridFunction(t, std::move(e)), 0.5);
        columns.emplace_back(col.cell_values().begin(), col.cell_values().end());
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        for (std::size_t j = 0; j < columns.size(); ++j)
            CHECK(columns[i][j] == doctest::Approx(columns[j][i]).epsilon(1e-14));

    const DyadicTree big(2, 8);
    const GridFunction fbig = constant_weight(big, 1.0).fn();
    CHECK_THROWS_AS(kernel_frac_integral(fbig, 0.5), capacity_error);
}

TEST_CASE("kernel and stacked shifted-dyadic integrals are comparable") {
    const DyadicTree t(1, 8);
    const GridFunction one = constant_weight(t, 1.0).fn();
    const GridFunction kern = kernel_frac_integral(one, 0.5);
    const GridFunction stack = shifted_sum_integral(one, 0.5);
    double lo = 1e300, hi = 0.0;
    for (std::int64_t c = 0; c < t.cell_count(); ++c) {
        const double r = kern.cell_value(c) / stack.cell_value(c);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 100.0);
    MESSAGE("kernel / stacked-dyadic cellwise ratio range: [", lo, ", ", hi, "]");
}

TEST_CASE("sparse apply") {
    const DyadicTree t(1, 4);
    const GridFunction f = random_weight(t, 6).fn();
    const SparseFamily root_only = SparseFamily::from_cubes(t, {t.root()});
    const GridFunction r = sparse_apply({&root_only, 0.5}, f);
    const double expected = std::pow(1.0, 0.5) * f.average(t.root());
    for (std::int64_t c = 0; c < t.cell_count(); ++c) CHECK(r.cell_value(c) == expected);

    const SparseFamily chain = SparseFamily::from_cubes(
        t, {t.root(), CubeRef{1, {0, 0}}, CubeRef{2, {0, 0}}});
    const GridFunction one = constant_weight(t, 1.0).fn();
    const GridFunction rc = sparse_apply({&chain, 0.5}, one);
    CHECK(rc.cell_value(0) == doctest::Approx(1.0 + std::sqrt(0.5) + 0.5).epsilon(1e-15));
    CHECK(rc.cell_value(15) == 1.0);

    const SparseFamily empty = SparseFamily::from_cubes(t, {});
    const GridFunction rz = sparse_apply({&empty, 0.5}, f);
    for (std::int64_t c = 0; c < t.cell_count(); ++c) CHECK(rz.cell_value(c) == 0.0);
}

TEST_CASE("geometric chain constant") {
    CHECK(geometric_chain_constant(0.5, 1) ==
          doctest::Approx(1.0 / (1.0 - std::pow(2.0, -0.5))).epsilon(1e-15));
    CHECK(std::abs(geometric_chain_constant(0.5, 1) - 3.4142135623730951) < 1e-12);
    CHECK(geometric_chain_constant(1.0, 1) == 2.0);
    CHECK_THROWS_AS(geometric_chain_constant(0.0, 1), parameter_error);

    // pointwise chain bound at moderate depth
    const DyadicTree t(1, 10);
    const double C = geometric_chain_constant(0.5, 1);
    double chain_sum = 0.0;
    for (int k = 0; k <= 10; ++k) chain_sum += std::pow(t.side(k), 0.5);
    CHECK(chain_sum <= C * (1.0 + 1e-12));
}

TEST_CASE("operators preserve positivity") {
    const DyadicTree t(1, 5);
    for (int i = 0; i < 5; ++i) {
        const GridFunction f = random_weight(t, 7000 + i).fn();
        for (const GridFunction& out :
             {dyadic_frac_maximal(f, t, 0.5), dyadic_frac_integral(f, t, 0.5),
              frac_maximal(f, 0.5), kernel_frac_integral(f, 0.5)}) {
            for (std::int64_t c = 0; c < t.cell_count(); ++c) CHECK(out.cell_value(c) >= 0.0);
        }
    }
}

TEST_CASE("2d windowed maximal agrees with a direct square enumeration") {
    const DyadicTree t(2, 2);
    const GridFunction f = random_weight(t, 8).fn();
    const double a = 0.5;
    const GridFunction m = frac_maximal(f, a);
    const std::int64_t n = t.cells_per_side();
    const double h = t.cell_size();
    for (std::int64_t cy = 0; cy < n; ++cy)
        for (std::int64_t cx = 0; cx < n; ++cx) {
            double best = 0.0;
            for (std::int64_t d = 1; d <= 3 * n; ++d)
                for (std::int64_t ix = std::max(cx - d + 1, -n); ix <= std::min(cx, 2 * n - d); ++ix)
                    for (std::int64_t iy = std::max(cy - d + 1, -n); iy <= std::min(cy, 2 * n - d);
                         ++iy) {
                        const double mass = f.mass(LatticeBox{{ix, iy}, {ix + d, iy + d}});
                        best = std::max(best,
                                        std::pow(static_cast<double>(d) * h, a - 2.0) * mass);
                    }
            CHECK(m.cell_value(cy * n + cx) == doctest::Approx(best).epsilon(1e-14));
        }
}
