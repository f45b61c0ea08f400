#include "bumplab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <string>

namespace bumplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |f| fallback for operators defined on |f|; returns f itself when already
// nonnegative.
const GridFunction& as_nonnegative(const GridFunction& f, std::unique_ptr<GridFunction>& storage) {
    if (f.nonnegative()) return f;
    std::vector<double> cells(f.cell_values().begin(), f.cell_values().end());
    for (auto& v : cells) v = std::abs(v);
    storage = std::make_unique<GridFunction>(f.tree(), std::move(cells));
    return *storage;
}

// Own-tree chain pass using the cached cube masses; combine is max or plus.
template <class Combine>
GridFunction chain_pass(const GridFunction& f, double alpha, Combine combine) {
    const DyadicTree& tree = f.tree();
    const int dim = tree.dimension();
    const int L = tree.depth();
    std::vector<double> pow_side(static_cast<std::size_t>(L) + 1);
    std::vector<double> vol(static_cast<std::size_t>(L) + 1);
    for (int k = 0; k <= L; ++k) {
        pow_side[static_cast<std::size_t>(k)] = std::pow(tree.side(k), alpha);
        vol[static_cast<std::size_t>(k)] = tree.volume(k);
    }
    std::vector<double> prev{pow_side[0] * (f.mass(tree.root()) / vol[0])};
    for (int k = 1; k <= L; ++k) {
        const std::int64_t side_cubes = std::int64_t{1} << k;
        const std::int64_t count = tree.cubes_at(k);
        std::vector<double> cur(static_cast<std::size_t>(count));
        for (std::int64_t idx = 0; idx < count; ++idx) {
            const std::int64_t x = dim == 1 ? idx : idx % side_cubes;
            const std::int64_t y = dim == 1 ? 0 : idx / side_cubes;
            const std::int64_t parent_idx = dim == 1 ? (x >> 1) : ((y >> 1) * (side_cubes >> 1) + (x >> 1));
            const double m = f.mass(CubeRef{k, {x, y}});
            const double term = pow_side[static_cast<std::size_t>(k)] * (m / vol[static_cast<std::size_t>(k)]);
            cur[static_cast<std::size_t>(idx)] = combine(prev[static_cast<std::size_t>(parent_idx)], term);
        }
        prev = std::move(cur);
    }
    // level-L layout is row-major over cells already
    return GridFunction(tree, std::move(prev));
}

// Chain pass over a foreign (lattice-aligned) grid with f extended by zero.
template <class Combine>
GridFunction chain_pass_foreign(const GridFunction& f, const DyadicTree& grid, double alpha,
                                Combine combine, double unit) {
    const DyadicTree& base = f.tree();
    const int dim = base.dimension();
    if (grid.dimension() != dim) throw mismatch_error("grid dimension differs from f's tree");
    const std::array<std::int64_t, 2> off = grid.lattice_offset_against(base);
    const std::int64_t n = base.cells_per_side();
    std::vector<double> out(static_cast<std::size_t>(base.cell_count()), unit);
    std::vector<double> pow_side(static_cast<std::size_t>(grid.depth()) + 1);
    for (int k = 0; k <= grid.depth(); ++k) pow_side[static_cast<std::size_t>(k)] = std::pow(grid.side(k), alpha);

    // depth-first over grid cubes that meet the root box
    struct Item {
        CubeRef q;
        double acc;
    };
    const auto base_box = [&](const CubeRef& q) {
        LatticeBox b = grid.cells_of(q);
        for (int a = 0; a < dim; ++a) {
            b.lo[a] += off[a];
            b.hi[a] += off[a];
        }
        return b;
    };
    const auto meets_root = [&](const LatticeBox& b) {
        for (int a = 0; a < dim; ++a)
            if (b.hi[a] <= 0 || b.lo[a] >= n) return false;
        return true;
    };
    std::vector<Item> stack;
    {
        const LatticeBox rb = base_box(grid.root());
        if (!meets_root(rb)) return GridFunction(base, std::move(out));
        const double avg = f.mass(rb) / grid.volume(0);
        stack.push_back({grid.root(), combine(unit, pow_side[0] * avg)});
    }
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        if (grid.is_leaf(it.q)) {
            const LatticeBox b = base_box(it.q);
            // grid leaves coincide with base cells inside the overlap
            const std::int64_t x = b.lo[0], y = b.lo[1];
            if (x >= 0 && x < n && (dim == 1 || (y >= 0 && y < n)))
                out[static_cast<std::size_t>(dim == 1 ? x : y * n + x)] = it.acc;
            continue;
        }
        for (int j = 0; j < grid.children_per_cube(); ++j) {
            const CubeRef c = grid.child(it.q, j);
            const LatticeBox b = base_box(c);
            if (!meets_root(b)) continue;
            const double avg = f.mass(b) / grid.volume(c.level);
            stack.push_back({c, combine(it.acc, pow_side[static_cast<std::size_t>(c.level)] * avg)});
        }
    }
    return GridFunction(base, std::move(out));
}

bool same_tree(const DyadicTree& a, const DyadicTree& b) {
    return &a == &b || (a.dimension() == b.dimension() && a.depth() == b.depth() &&
                        a.root_lo() == b.root_lo() && a.root_size() == b.root_size());
}

// max over i in [max(c-d+1, ilo), min(c, ihi)] of v[i - ilo], streamed over
// ascending c; out_update receives (c, value) only when the range is nonempty.
template <class Update>
void sliding_window_max(const std::vector<double>& v, std::int64_t ilo, std::int64_t ihi,
                        std::int64_t d, std::int64_t c0, std::int64_t c1, Update out_update) {
    if (ihi < ilo) return;
    std::deque<std::int64_t> dq;
    std::int64_t next = ilo;
    for (std::int64_t c = c0; c < c1; ++c) {
        const std::int64_t top = std::min(c, ihi);
        for (; next <= top; ++next) {
            const double val = v[static_cast<std::size_t>(next - ilo)];
            while (!dq.empty() && v[static_cast<std::size_t>(dq.back() - ilo)] <= val) dq.pop_back();
            dq.push_back(next);
        }
        const std::int64_t bottom = c - d + 1;
        while (!dq.empty() && dq.front() < bottom) dq.pop_front();
        if (!dq.empty()) out_update(c, v[static_cast<std::size_t>(dq.front() - ilo)]);
    }
}

} // namespace

void ExponentConfig::validate() const {
    if (dim != 1 && dim != 2) throw parameter_error("dimension must be 1 or 2");
    if (!(alpha >= 0.0 && alpha < static_cast<double>(dim)))
        throw parameter_error("alpha must lie in [0, n)");
    if (!(p >= 1.0 && p <= q && std::isfinite(q))) throw parameter_error("need 1 <= p <= q < inf");
}

double ExponentConfig::p_conj() const { return p == 1.0 ? kInf : p / (p - 1.0); }
double ExponentConfig::q_conj() const { return q == 1.0 ? kInf : q / (q - 1.0); }

ExponentConfig ExponentConfig::dual() const {
    if (p == 1.0) throw parameter_error("dual configuration needs p > 1");
    ExponentConfig d{dim, alpha, q_conj(), p_conj()};
    d.validate();
    return d;
}

GridFunction dyadic_frac_maximal(const GridFunction& f, const DyadicTree& grid, double alpha) {
    if (!(alpha >= 0.0 && alpha < f.tree().dimension()))
        throw parameter_error("dyadic maximal needs alpha in [0, n)");
    std::unique_ptr<GridFunction> storage;
    const GridFunction& g = as_nonnegative(f, storage);
    const auto mx = [](double a, double b) { return a > b ? a : b; };
    if (same_tree(grid, g.tree())) return chain_pass(g, alpha, mx);
    return chain_pass_foreign(g, grid, alpha, mx, 0.0);
}

GridFunction dyadic_frac_integral(const GridFunction& f, const DyadicTree& grid, double alpha) {
    if (!(alpha > 0.0 && alpha < f.tree().dimension()))
        throw parameter_error("dyadic fractional integral needs alpha in (0, n); the chain sum diverges at 0");
    std::unique_ptr<GridFunction> storage;
    const GridFunction& g = as_nonnegative(f, storage);
    const auto plus = [](double a, double b) { return a + b; };
    if (same_tree(grid, g.tree())) return chain_pass(g, alpha, plus);
    return chain_pass_foreign(g, grid, alpha, plus, 0.0);
}

GridFunction frac_maximal(const GridFunction& f, double alpha) {
    const DyadicTree& tree = f.tree();
    const int dim = tree.dimension();
    if (!(alpha >= 0.0 && alpha < dim)) throw parameter_error("frac_maximal needs alpha in [0, n)");
    std::unique_ptr<GridFunction> storage;
    const GridFunction& g = as_nonnegative(f, storage);
    const std::int64_t n = tree.cells_per_side();
    const double h = tree.cell_size();
    std::vector<double> out(static_cast<std::size_t>(tree.cell_count()), 0.0);

    // Sides beyond 2n are dominated by a side-2n window that already covers
    // the whole support, so the sweep below is exact for the full window.
    if (dim == 1) {
        std::vector<double> v;
        for (std::int64_t d = 1; d <= 2 * n; ++d) {
            const double t = std::pow(static_cast<double>(d) * h, alpha - 1.0);
            const std::int64_t ilo = std::max<std::int64_t>(1 - d, -n);
            const std::int64_t ihi = std::min<std::int64_t>(n - 1, 2 * n - d);
            if (ihi < ilo) continue;
            v.resize(static_cast<std::size_t>(ihi - ilo + 1));
            for (std::int64_t i = ilo; i <= ihi; ++i)
                v[static_cast<std::size_t>(i - ilo)] = t * g.mass(LatticeBox{{i, 0}, {i + d, 1}});
            sliding_window_max(v, ilo, ihi, d, 0, n, [&](std::int64_t c, double val) {
                auto& slot = out[static_cast<std::size_t>(c)];
                slot = std::max(slot, val);
            });
        }
    } else {
        std::vector<double> v, rowmax;
        for (std::int64_t d = 1; d <= 2 * n; ++d) {
            const double t = std::pow(static_cast<double>(d) * h, alpha - 2.0);
            const std::int64_t ilo = std::max<std::int64_t>(1 - d, -n);
            const std::int64_t ihi = std::min<std::int64_t>(n - 1, 2 * n - d);
            if (ihi < ilo) continue;
            const std::int64_t w = ihi - ilo + 1;
            v.assign(static_cast<std::size_t>(w * w), 0.0);
            for (std::int64_t iy = ilo; iy <= ihi; ++iy)
                for (std::int64_t ix = ilo; ix <= ihi; ++ix)
                    v[static_cast<std::size_t>((iy - ilo) * w + (ix - ilo))] =
                        t * g.mass(LatticeBox{{ix, iy}, {ix + d, iy + d}});
            // horizontal pass: rows indexed by iy, columns by cell cx
            rowmax.assign(static_cast<std::size_t>(w * n), -kInf);
            for (std::int64_t iy = ilo; iy <= ihi; ++iy) {
                std::vector<double> line(v.begin() + static_cast<std::ptrdiff_t>((iy - ilo) * w),
                                         v.begin() + static_cast<std::ptrdiff_t>((iy - ilo + 1) * w));
                sliding_window_max(line, ilo, ihi, d, 0, n, [&](std::int64_t cx, double val) {
                    rowmax[static_cast<std::size_t>((iy - ilo) * n + cx)] = val;
                });
            }
            // vertical pass per cell column
            std::vector<double> col(static_cast<std::size_t>(w));
            for (std::int64_t cx = 0; cx < n; ++cx) {
                for (std::int64_t iy = ilo; iy <= ihi; ++iy)
                    col[static_cast<std::size_t>(iy - ilo)] =
                        rowmax[static_cast<std::size_t>((iy - ilo) * n + cx)];
                sliding_window_max(col, ilo, ihi, d, 0, n, [&](std::int64_t cy, double val) {
                    auto& slot = out[static_cast<std::size_t>(cy * n + cx)];
                    slot = std::max(slot, val);
                });
            }
        }
    }
    return GridFunction(tree, std::move(out));
}

GridFunction hl_maximal(const GridFunction& f) { return frac_maximal(f, 0.0); }

std::vector<double> restricted_maximal_field(const GridFunction& g, const LatticeBox& box,
                                             double alpha) {
    const DyadicTree& tree = g.tree();
    const int dim = tree.dimension();
    if (!(alpha >= 0.0 && alpha < dim)) throw parameter_error("alpha must lie in [0, n)");
    const double h = tree.cell_size();
    if (dim == 1) {
        const std::int64_t m = box.hi[0] - box.lo[0];
        // local prefix of the truncated density
        std::vector<double> S(static_cast<std::size_t>(m) + 1, 0.0);
        for (std::int64_t c = 0; c < m; ++c)
            S[static_cast<std::size_t>(c + 1)] =
                S[static_cast<std::size_t>(c)] + g.cell_value(box.lo[0] + c) * h;
        std::vector<double> t(static_cast<std::size_t>(m) + 1, 0.0);
        for (std::int64_t d = 1; d <= m; ++d)
            t[static_cast<std::size_t>(d)] = std::pow(static_cast<double>(d) * h, alpha - 1.0);
        // For every cell c: max over sub-intervals [i, j) of the box holding
        // c. Shrinking any window to its intersection with the box can only
        // raise the truncated average, so within-box windows are exhaustive.
        std::vector<double> field(static_cast<std::size_t>(m), 0.0);
        std::vector<double> sfx(static_cast<std::size_t>(m) + 2, 0.0);
        for (std::int64_t i = 0; i < m; ++i) {
            sfx[static_cast<std::size_t>(m + 1)] = -kInf;
            for (std::int64_t j = m; j > i; --j) {
                const double val =
                    t[static_cast<std::size_t>(j - i)] * (S[static_cast<std::size_t>(j)] - S[static_cast<std::size_t>(i)]);
                sfx[static_cast<std::size_t>(j)] = std::max(sfx[static_cast<std::size_t>(j + 1)], val);
            }
            for (std::int64_t c = i; c < m; ++c) {
                auto& slot = field[static_cast<std::size_t>(c)];
                slot = std::max(slot, sfx[static_cast<std::size_t>(c + 1)]);
            }
        }
        return field;
    }

    // 2d: lattice squares meeting the box, truncated mass from a local
    // summed-area table; sides beyond twice the box side are dominated by the
    // covering window of side 2m.
    const std::int64_t m = box.hi[0] - box.lo[0];
    if (box.hi[1] - box.lo[1] != m) throw parameter_error("restricted field needs a square box in 2d");
    const std::int64_t n = tree.cells_per_side();
    std::vector<double> sat(static_cast<std::size_t>((m + 1) * (m + 1)), 0.0);
    const auto sat_at = [&](std::int64_t x, std::int64_t y) -> double& {
        return sat[static_cast<std::size_t>(y * (m + 1) + x)];
    };
    for (std::int64_t y = 0; y < m; ++y)
        for (std::int64_t x = 0; x < m; ++x)
            sat_at(x + 1, y + 1) = g.cell_value((box.lo[1] + y) * n + box.lo[0] + x) * h * h +
                                   sat_at(x, y + 1) + sat_at(x + 1, y) - sat_at(x, y);
    const auto box_mass = [&](std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
        x0 = std::clamp<std::int64_t>(x0 - box.lo[0], 0, m);
        x1 = std::clamp<std::int64_t>(x1 - box.lo[0], 0, m);
        y0 = std::clamp<std::int64_t>(y0 - box.lo[1], 0, m);
        y1 = std::clamp<std::int64_t>(y1 - box.lo[1], 0, m);
        if (x1 <= x0 || y1 <= y0) return 0.0;
        return sat_at(x1, y1) - sat_at(x0, y1) - sat_at(x1, y0) + sat_at(x0, y0);
    };

    std::vector<double> field(static_cast<std::size_t>(m * m), 0.0);
    std::vector<double> v, rowmax, col;
    for (std::int64_t d = 1; d <= 2 * m; ++d) {
        const double t = std::pow(static_cast<double>(d) * h, alpha - 2.0);
        const std::int64_t ixlo = std::max(box.lo[0] - d + 1, -n);
        const std::int64_t ixhi = std::min(box.hi[0] - 1, 2 * n - d);
        const std::int64_t iylo = std::max(box.lo[1] - d + 1, -n);
        const std::int64_t iyhi = std::min(box.hi[1] - 1, 2 * n - d);
        if (ixhi < ixlo || iyhi < iylo) continue;
        const std::int64_t wx = ixhi - ixlo + 1, wy = iyhi - iylo + 1;
        v.assign(static_cast<std::size_t>(wx * wy), 0.0);
        for (std::int64_t iy = iylo; iy <= iyhi; ++iy)
            for (std::int64_t ix = ixlo; ix <= ixhi; ++ix)
                v[static_cast<std::size_t>((iy - iylo) * wx + (ix - ixlo))] =
                    t * box_mass(ix, iy, ix + d, iy + d);
        rowmax.assign(static_cast<std::size_t>(wy * m), -kInf);
        for (std::int64_t iy = iylo; iy <= iyhi; ++iy) {
            std::vector<double> line(v.begin() + static_cast<std::ptrdiff_t>((iy - iylo) * wx),
                                     v.begin() + static_cast<std::ptrdiff_t>((iy - iylo + 1) * wx));
            sliding_window_max(line, ixlo, ixhi, d, box.lo[0], box.hi[0], [&](std::int64_t cx, double val) {
                rowmax[static_cast<std::size_t>((iy - iylo) * m + (cx - box.lo[0]))] = val;
            });
        }
        col.assign(static_cast<std::size_t>(wy), 0.0);
        for (std::int64_t cx = box.lo[0]; cx < box.hi[0]; ++cx) {
            for (std::int64_t iy = iylo; iy <= iyhi; ++iy)
                col[static_cast<std::size_t>(iy - iylo)] =
                    rowmax[static_cast<std::size_t>((iy - iylo) * m + (cx - box.lo[0]))];
            sliding_window_max(col, iylo, iyhi, d, box.lo[1], box.hi[1], [&](std::int64_t cy, double val) {
                auto& slot = field[static_cast<std::size_t>((cy - box.lo[1]) * m + (cx - box.lo[0]))];
                slot = std::max(slot, val);
            });
        }
    }
    return field;
}

namespace {

// cell self-interaction (1/|c|) int_c int_c |x-y|^(alpha-2) in 2d: symmetric
// split along the diagonal plus the substitution u = h s^(1/alpha), which
// absorbs the radial singularity; 4-point tensor Gauss-Legendre.
double cell_self_interaction_2d(double h, double alpha) {
    constexpr int kN = 4;
    constexpr double node[kN] = {0.06943184420297371, 0.33000947820757187, 0.6699905217924281,
                                 0.9305681557970262};
    constexpr double wt[kN] = {0.1739274225687269, 0.3260725774312731, 0.3260725774312731,
                               0.1739274225687269};
    double outer = 0.0;
    for (int a = 0; a < kN; ++a) {
        const double u = h * std::pow(node[a], 1.0 / alpha);
        double inner = 0.0;
        for (int b = 0; b < kN; ++b) {
            const double tt = node[b];
            inner += wt[b] * (h - u * tt) * std::pow(1.0 + tt * tt, (alpha - 2.0) / 2.0);
        }
        outer += wt[a] * (h - u) * inner;
    }
    const double raw = 8.0 * (std::pow(h, alpha) / alpha) * outer;
    return raw / (h * h);
}

} // namespace

GridFunction kernel_frac_integral(const GridFunction& f, double alpha) {
    const DyadicTree& tree = f.tree();
    const int dim = tree.dimension();
    if (!(alpha > 0.0 && alpha < dim)) throw parameter_error("kernel integral needs alpha in (0, n)");
    if (dim == 2 && tree.depth() > 7)
        throw capacity_error("2d kernel apply limited to depth <= 7 (dense cell-pair coupling)");
    const double h = tree.cell_size();
    const std::int64_t n = tree.cells_per_side();
    std::vector<double> out(static_cast<std::size_t>(tree.cell_count()), 0.0);
    if (dim == 1) {
        std::vector<double> kr(static_cast<std::size_t>(n), 0.0);
        // cell-averaged self term: (1/h) int_0^h int_0^h |x-y|^(alpha-1)
        kr[0] = 2.0 * std::pow(h, alpha) / (alpha * (alpha + 1.0));
        for (std::int64_t d = 1; d < n; ++d)
            kr[static_cast<std::size_t>(d)] = h * std::pow(static_cast<double>(d) * h, alpha - 1.0);
        for (std::int64_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::int64_t j = 0; j < n; ++j)
                acc += f.cell_value(j) * kr[static_cast<std::size_t>(std::llabs(i - j))];
            out[static_cast<std::size_t>(i)] = acc;
        }
    } else {
        const double self = cell_self_interaction_2d(h, alpha);
        std::vector<double> kr(static_cast<std::size_t>(n * n), 0.0);
        for (std::int64_t dy = 0; dy < n; ++dy)
            for (std::int64_t dx = 0; dx < n; ++dx) {
                if (dx == 0 && dy == 0) {
                    kr[0] = self;
                    continue;
                }
                const double r = h * std::sqrt(static_cast<double>(dx * dx + dy * dy));
                kr[static_cast<std::size_t>(dy * n + dx)] = h * h * std::pow(r, alpha - 2.0);
            }
        for (std::int64_t yi = 0; yi < n; ++yi)
            for (std::int64_t xi = 0; xi < n; ++xi) {
                double acc = 0.0;
                for (std::int64_t yj = 0; yj < n; ++yj) {
                    const std::int64_t dy = std::llabs(yi - yj);
                    for (std::int64_t xj = 0; xj < n; ++xj)
                        acc += f.cell_value(yj * n + xj) *
                               kr[static_cast<std::size_t>(dy * n + std::llabs(xi - xj))];
                }
                out[static_cast<std::size_t>(yi * n + xi)] = acc;
            }
    }
    return GridFunction(tree, std::move(out));
}

GridFunction sparse_apply(const SparseOperatorSpec& spec, const GridFunction& f) {
    if (spec.family == nullptr) throw parameter_error("sparse operator needs a family");
    const SparseFamily& fam = *spec.family;
    if (!same_tree(fam.tree(), f.tree())) throw mismatch_error("sparse_apply needs f on the family's tree");
    const DyadicTree& tree = f.tree();
    const std::int64_t per_side = tree.cells_per_side();
    std::vector<double> out(static_cast<std::size_t>(tree.cell_count()), 0.0);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const CubeRef q = fam.member(i);
        const double term = std::pow(tree.side(q.level), spec.alpha) * f.average(q);
        const LatticeBox b = tree.cells_of(q);
        if (tree.dimension() == 1) {
            for (std::int64_t c = b.lo[0]; c < b.hi[0]; ++c) out[static_cast<std::size_t>(c)] += term;
        } else {
            for (std::int64_t y = b.lo[1]; y < b.hi[1]; ++y)
                for (std::int64_t x = b.lo[0]; x < b.hi[0]; ++x)
                    out[static_cast<std::size_t>(y * per_side + x)] += term;
        }
    }
    return GridFunction(tree, std::move(out));
}

double geometric_chain_constant(double alpha, int dim) {
    if (dim != 1 && dim != 2) throw parameter_error("dimension must be 1 or 2");
    if (!(alpha > 0.0 && alpha <= static_cast<double>(dim)))
        throw parameter_error("chain constant diverges unless alpha > 0");
    return 1.0 / (1.0 - std::pow(2.0, -alpha));
}

GridFunction shifted_sum_maximal(const GridFunction& f, double alpha) {
    const auto grids = shifted_grid_family(f.tree().dimension(), f.tree().depth());
    std::vector<double> acc(static_cast<std::size_t>(f.cell_count()), 0.0);
    for (const auto& g : grids) {
        const GridFunction part = dyadic_frac_maximal(f, g, alpha);
        for (std::int64_t c = 0; c < f.cell_count(); ++c)
            acc[static_cast<std::size_t>(c)] += part.cell_value(c);
    }
    return GridFunction(f.tree(), std::move(acc));
}

GridFunction shifted_sum_integral(const GridFunction& f, double alpha) {
    const auto grids = shifted_grid_family(f.tree().dimension(), f.tree().depth());
    std::vector<double> acc(static_cast<std::size_t>(f.cell_count()), 0.0);
    for (const auto& g : grids) {
        const GridFunction part = dyadic_frac_integral(f, g, alpha);
        for (std::int64_t c = 0; c < f.cell_count(); ++c)
            acc[static_cast<std::size_t>(c)] += part.cell_value(c);
    }
    return GridFunction(f.tree(), std::move(acc));
}

} // namespace bumplab
