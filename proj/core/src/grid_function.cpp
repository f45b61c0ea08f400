#include "bumplab/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "bumplab/util.hpp"

namespace bumplab {

namespace {

std::int64_t clip(std::int64_t v, std::int64_t lo, std::int64_t hi) {
    return std::max(lo, std::min(v, hi));
}

// 8-point Gauss-Legendre nodes/weights on [0,1].
constexpr int kGL = 8;
constexpr double kGLNode[kGL] = {0.01985507175123188, 0.10166676129318664, 0.2372337950418355,
                                 0.40828267875217505, 0.591717321247825,   0.7627662049581645,
                                 0.8983332387068134,  0.9801449282487681};
constexpr double kGLWeight[kGL] = {0.05061426814518813, 0.11119051722668723, 0.15685332293894363,
                                   0.18134189168918097, 0.18134189168918097, 0.15685332293894363,
                                   0.11119051722668723, 0.05061426814518813};

double power_moment_1d(double a, double l, double r, double x0) {
    // integral over [l,r) of |x-x0|^a dx, exact antiderivative
    const auto F = [a](double t) { return std::pow(t, a + 1.0) / (a + 1.0); };
    if (r <= x0) return F(x0 - l) - F(x0 - r);
    if (l >= x0) return F(r - x0) - F(l - x0);
    return F(x0 - l) + F(r - x0);
}

double power_quad_2d(double a, std::array<double, 2> lo, double h, std::array<double, 2> x0) {
    // integral over the cell of |x-x0|^a; tensor GL, cell split at x0 when it
    // lands inside so the singular point sits on a sub-rectangle corner
    const double hi0 = lo[0] + h, hi1 = lo[1] + h;
    std::vector<double> xs{lo[0], hi0}, ys{lo[1], hi1};
    if (x0[0] > lo[0] && x0[0] < hi0) xs = {lo[0], x0[0], hi0};
    if (x0[1] > lo[1] && x0[1] < hi1) ys = {lo[1], x0[1], hi1};
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            const double wx = xs[i + 1] - xs[i], wy = ys[j + 1] - ys[j];
            double acc = 0.0;
            for (int u = 0; u < kGL; ++u) {
                const double px = xs[i] + wx * kGLNode[u];
                const double dx2 = (px - x0[0]) * (px - x0[0]);
                for (int v = 0; v < kGL; ++v) {
                    const double py = ys[j] + wy * kGLNode[v];
                    const double r2 = dx2 + (py - x0[1]) * (py - x0[1]);
                    acc += kGLWeight[u] * kGLWeight[v] * std::pow(r2, a / 2.0);
                }
            }
            total += acc * wx * wy;
        }
    }
    return total;
}

} // namespace

GridFunction::GridFunction(const DyadicTree& tree, std::vector<double> cell_values)
    : tree_(&tree), cells_(std::move(cell_values)) {
    if (static_cast<std::int64_t>(cells_.size()) != tree.cell_count())
        throw parameter_error("cell value array does not match the tree");

    // leaf-to-root pairwise aggregation; parents are exact sums of children
    cube_masses_.assign(static_cast<std::size_t>(tree.cube_count()), 0.0);
    const double leaf_vol = tree.volume(tree.depth());
    const std::int64_t leaf_off = tree.cube_count() - tree.cell_count();
    if (tree.dimension() == 1) {
        for (std::int64_t c = 0; c < tree.cell_count(); ++c)
            cube_masses_[static_cast<std::size_t>(leaf_off + c)] = cells_[static_cast<std::size_t>(c)] * leaf_vol;
    } else {
        const std::int64_t n = tree.cells_per_side();
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x)
                cube_masses_[static_cast<std::size_t>(
                    leaf_off + tree.index_of(CubeRef{tree.depth(), {x, y}}))] =
                    cells_[static_cast<std::size_t>(y * n + x)] * leaf_vol;
    }
    for (int k = tree.depth() - 1; k >= 0; --k) {
        const std::int64_t side_cubes = std::int64_t{1} << k;
        if (tree.dimension() == 1) {
            for (std::int64_t x = 0; x < side_cubes; ++x) {
                const CubeRef q{k, {x, 0}};
                cube_masses_[static_cast<std::size_t>(tree.index_of(q))] =
                    cube_masses_[static_cast<std::size_t>(tree.index_of({k + 1, {2 * x, 0}}))] +
                    cube_masses_[static_cast<std::size_t>(tree.index_of({k + 1, {2 * x + 1, 0}}))];
            }
        } else {
            for (std::int64_t y = 0; y < side_cubes; ++y)
                for (std::int64_t x = 0; x < side_cubes; ++x) {
                    const auto m = [&](std::int64_t cx, std::int64_t cy) {
                        return cube_masses_[static_cast<std::size_t>(tree.index_of({k + 1, {cx, cy}}))];
                    };
                    const double m01 = m(2 * x, 2 * y) + m(2 * x + 1, 2 * y);
                    const double m23 = m(2 * x, 2 * y + 1) + m(2 * x + 1, 2 * y + 1);
                    cube_masses_[static_cast<std::size_t>(tree.index_of({k, {x, y}}))] = m01 + m23;
                }
        }
    }

    const std::int64_t n = tree.cells_per_side();
    if (tree.dimension() == 1) {
        prefix_.assign(static_cast<std::size_t>(n + 1), 0.0);
        for (std::int64_t c = 0; c < n; ++c)
            prefix_[static_cast<std::size_t>(c + 1)] =
                prefix_[static_cast<std::size_t>(c)] + cells_[static_cast<std::size_t>(c)] * leaf_vol;
    } else {
        prefix_.assign(static_cast<std::size_t>((n + 1) * (n + 1)), 0.0);
        const auto at = [n](std::vector<double>& p, std::int64_t x, std::int64_t y) -> double& {
            return p[static_cast<std::size_t>(y * (n + 1) + x)];
        };
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x)
                at(prefix_, x + 1, y + 1) = cells_[static_cast<std::size_t>(y * n + x)] * leaf_vol +
                                            at(prefix_, x, y + 1) + at(prefix_, x + 1, y) -
                                            at(prefix_, x, y);
    }
}

double GridFunction::mass(const CubeRef& q) const {
    if (q.level < 0 || q.level > tree_->depth()) throw domain_error("cube level outside the tree");
    for (int a = 0; a < tree_->dimension(); ++a)
        if (q.coords[a] < 0 || q.coords[a] >= (std::int64_t{1} << q.level))
            throw domain_error("cube coordinates outside the tree");
    return cube_masses_[static_cast<std::size_t>(tree_->index_of(q))];
}

double GridFunction::mass(const LatticeBox& box) const {
    const std::int64_t n = tree_->cells_per_side();
    const std::int64_t x0 = clip(box.lo[0], 0, n), x1 = clip(box.hi[0], 0, n);
    if (x1 <= x0) return 0.0;
    if (tree_->dimension() == 1) return prefix_[static_cast<std::size_t>(x1)] - prefix_[static_cast<std::size_t>(x0)];
    const std::int64_t y0 = clip(box.lo[1], 0, n), y1 = clip(box.hi[1], 0, n);
    if (y1 <= y0) return 0.0;
    const auto at = [this, n](std::int64_t x, std::int64_t y) {
        return prefix_[static_cast<std::size_t>(y * (n + 1) + x)];
    };
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
}

double GridFunction::average(const CubeRef& q) const { return mass(q) / tree_->volume(q.level); }

bool GridFunction::nonnegative() const {
    return std::all_of(cells_.begin(), cells_.end(), [](double v) { return v >= 0.0; });
}

Weight::Weight(GridFunction g) : g_(std::move(g)) {
    if (!g_.nonnegative()) throw parameter_error("weight densities must be nonnegative");
}

double mass(const GridFunction& u, const DyadicTree& grid, const CubeRef& q) {
    const DyadicTree& own = u.tree();
    if (grid.dimension() != own.dimension() || grid.depth() != own.depth() ||
        grid.root_size() != own.root_size() || grid.root_lo() != own.root_lo())
        throw mismatch_error("cube belongs to a different grid");
    return u.mass(q);
}

double weighted_average(const GridFunction& f, const CubeRef& q, const Weight& sigma) {
    const double sq = sigma.mass(q);
    if (sq == 0.0) throw zero_mass_error("weighted average over a cube of zero mass");
    const LatticeBox cells = f.tree().cells_of(q);
    const double vol = f.tree().volume(f.tree().depth());
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>((cells.hi[0] - cells.lo[0]) *
                                           (f.tree().dimension() == 2 ? cells.hi[1] - cells.lo[1] : 1)));
    if (f.tree().dimension() == 1) {
        for (std::int64_t c = cells.lo[0]; c < cells.hi[0]; ++c)
            terms.push_back(f.cell_value(c) * sigma.fn().cell_value(c) * vol);
    } else {
        const std::int64_t n = f.tree().cells_per_side();
        for (std::int64_t y = cells.lo[1]; y < cells.hi[1]; ++y)
            for (std::int64_t x = cells.lo[0]; x < cells.hi[0]; ++x) {
                const std::int64_t c = y * n + x;
                terms.push_back(f.cell_value(c) * sigma.fn().cell_value(c) * vol);
            }
    }
    return pairwise_sum(terms) / sq;
}

double lp_norm(const GridFunction& f, const Weight& mu, double p) {
    if (!(p >= 1.0)) throw parameter_error("lp_norm requires p >= 1");
    if (!std::isfinite(p)) throw parameter_error("lp_norm requires finite p");
    const double vol = f.tree().volume(f.tree().depth());
    std::vector<double> terms(static_cast<std::size_t>(f.cell_count()));
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        terms[static_cast<std::size_t>(c)] =
            std::pow(std::abs(f.cell_value(c)), p) * mu.fn().cell_value(c) * vol;
    return std::pow(pairwise_sum(terms), 1.0 / p);
}

double integral_product(const GridFunction& f, const GridFunction& g, const Weight& mu) {
    const double vol = f.tree().volume(f.tree().depth());
    std::vector<double> terms(static_cast<std::size_t>(f.cell_count()));
    for (std::int64_t c = 0; c < f.cell_count(); ++c)
        terms[static_cast<std::size_t>(c)] =
            f.cell_value(c) * g.cell_value(c) * mu.fn().cell_value(c) * vol;
    return pairwise_sum(terms);
}

Weight constant_weight(const DyadicTree& tree, double c) {
    return Weight(GridFunction(tree, std::vector<double>(static_cast<std::size_t>(tree.cell_count()), c)));
}

Weight power_weight(const DyadicTree& tree, double a, std::array<double, 2> x0) {
    if (!(a > -1.0)) throw parameter_error("power weight needs exponent > -1 for local integrability");
    const double h = tree.cell_size();
    std::vector<double> cells(static_cast<std::size_t>(tree.cell_count()));
    if (tree.dimension() == 1) {
        for (std::int64_t c = 0; c < tree.cell_count(); ++c) {
            const double l = tree.root_lo()[0] + h * static_cast<double>(c);
            cells[static_cast<std::size_t>(c)] = power_moment_1d(a, l, l + h, x0[0]) / h;
        }
    } else {
        const std::int64_t n = tree.cells_per_side();
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x) {
                const std::array<double, 2> lo{tree.root_lo()[0] + h * static_cast<double>(x),
                                               tree.root_lo()[1] + h * static_cast<double>(y)};
                cells[static_cast<std::size_t>(y * n + x)] = power_quad_2d(a, lo, h, x0) / (h * h);
            }
    }
    return Weight(GridFunction(tree, std::move(cells)));
}

Weight indicator_weight(const DyadicTree& tree, std::array<double, 2> lo, std::array<double, 2> hi) {
    const double h = tree.cell_size();
    std::vector<double> cells(static_cast<std::size_t>(tree.cell_count()), 0.0);
    const auto overlap = [h](double cell_lo, double a, double b) {
        const double l = std::max(cell_lo, a), r = std::min(cell_lo + h, b);
        return std::max(0.0, r - l) / h;
    };
    if (tree.dimension() == 1) {
        for (std::int64_t c = 0; c < tree.cell_count(); ++c)
            cells[static_cast<std::size_t>(c)] =
                overlap(tree.root_lo()[0] + h * static_cast<double>(c), lo[0], hi[0]);
    } else {
        const std::int64_t n = tree.cells_per_side();
        for (std::int64_t y = 0; y < n; ++y)
            for (std::int64_t x = 0; x < n; ++x)
                cells[static_cast<std::size_t>(y * n + x)] =
                    overlap(tree.root_lo()[0] + h * static_cast<double>(x), lo[0], hi[0]) *
                    overlap(tree.root_lo()[1] + h * static_cast<double>(y), lo[1], hi[1]);
    }
    return Weight(GridFunction(tree, std::move(cells)));
}

Weight cascade_weight(const DyadicTree& tree, std::uint64_t seed, double total, int max_level) {
    if (!(total >= 0.0)) throw parameter_error("cascade total mass must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    const int cap = max_level < 0 ? tree.depth() : std::min(max_level, tree.depth());
    // masses per cube, split top-down in cube-id (level-major) order; the
    // draw sequence depends only on (seed, cap), not on the tree depth
    std::vector<double> masses(static_cast<std::size_t>(tree.cube_count()), 0.0);
    masses[0] = total;
    for (std::int64_t i = 0; i < tree.cube_count(); ++i) {
        const CubeRef q = tree.cube_at(i);
        if (tree.is_leaf(q)) continue;
        const double m = masses[static_cast<std::size_t>(i)];
        const bool random_split = q.level < cap;
        if (tree.dimension() == 1) {
            const double fx = random_split ? u(rng) : 1.0;
            masses[static_cast<std::size_t>(tree.index_of(tree.child(q, 0)))] = m * fx / 2.0;
            masses[static_cast<std::size_t>(tree.index_of(tree.child(q, 1)))] = m * (2.0 - fx) / 2.0;
        } else {
            const double fx = random_split ? u(rng) : 1.0;
            const double fy = random_split ? u(rng) : 1.0;
            const double px[2] = {fx / 2.0, (2.0 - fx) / 2.0};
            const double py[2] = {fy / 2.0, (2.0 - fy) / 2.0};
            for (int j = 0; j < 4; ++j)
                masses[static_cast<std::size_t>(tree.index_of(tree.child(q, j)))] =
                    m * px[j & 1] * py[(j >> 1) & 1];
        }
    }
    const double leaf_vol = tree.volume(tree.depth());
    const std::int64_t leaf_off = tree.cube_count() - tree.cell_count();
    std::vector<double> cells(static_cast<std::size_t>(tree.cell_count()));
    for (std::int64_t i = leaf_off; i < tree.cube_count(); ++i) {
        const CubeRef q = tree.cube_at(i);
        const LatticeBox b = tree.cells_of(q);
        cells[static_cast<std::size_t>(tree.cell_index({b.lo[0], b.lo[1]}))] =
            masses[static_cast<std::size_t>(i)] / leaf_vol;
    }
    return Weight(GridFunction(tree, std::move(cells)));
}

Weight random_weight(const DyadicTree& tree, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> cells(static_cast<std::size_t>(tree.cell_count()));
    for (auto& v : cells) v = u(rng);
    return Weight(GridFunction(tree, std::move(cells)));
}

std::string weight_to_json(const Weight& w) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["dimension"] = w.tree().dimension();
    j["depth"] = w.tree().depth();
    j["shift"] = w.tree().dimension() == 1 ? std::vector<double>{w.tree().root_lo()[0]}
                                           : std::vector<double>{w.tree().root_lo()[0], w.tree().root_lo()[1]};
    j["cell_values"] = std::vector<double>(w.fn().cell_values().begin(), w.fn().cell_values().end());
    return j.dump();
}

Weight weight_from_json(const std::string& text, std::vector<DyadicTree>& tree_storage) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parameter_error(std::string("weight JSON parse failed: ") + e.what());
    }
    const int dim = j.at("dimension").get<int>();
    const int depth = j.at("depth").get<int>();
    const auto shift = j.at("shift").get<std::vector<double>>();
    std::array<double, 2> lo{0.0, 0.0};
    for (std::size_t a = 0; a < shift.size() && a < 2; ++a) lo[a] = shift[a];
    tree_storage.emplace_back(dim, depth, lo, 1.0);
    auto cells = j.at("cell_values").get<std::vector<double>>();
    return Weight(GridFunction(tree_storage.back(), std::move(cells)));
}

} // namespace bumplab
