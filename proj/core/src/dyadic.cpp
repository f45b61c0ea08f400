#include "bumplab/dyadic.hpp"

#include <cmath>
#include <string>

namespace bumplab {

namespace {

// Guard for explicit construction; the shifted family needs two extra levels
// on its enlarged root, hence the allowance in the DyadicTree ctor itself.
constexpr int kGuardBudget = 24;

std::int64_t ipow2(int e) { return std::int64_t{1} << e; }

} // namespace

DyadicTree::DyadicTree(int dim, int depth, std::array<double, 2> root_lo, double root_size)
    : dim_(dim), depth_(depth), root_lo_(root_lo), root_size_(root_size) {
    if (dim != 1 && dim != 2) throw parameter_error("dimension must be 1 or 2");
    if (depth < 0) throw parameter_error("depth must be nonnegative");
    if (!(root_size > 0.0)) throw parameter_error("root box must have positive size");
    if (dim * depth > kGuardBudget + 2 * dim)
        throw capacity_error("tree of dimension " + std::to_string(dim) + " exceeds depth guard at depth " +
                             std::to_string(depth));
}

double DyadicTree::side(int level) const { return root_size_ * std::ldexp(1.0, -level); }

double DyadicTree::volume(int level) const {
    const double s = side(level);
    return dim_ == 1 ? s : s * s;
}

std::int64_t DyadicTree::cell_count() const {
    const std::int64_t per_side = cells_per_side();
    return dim_ == 1 ? per_side : per_side * per_side;
}

std::int64_t DyadicTree::cubes_at(int level) const { return ipow2(dim_ * level); }

std::int64_t DyadicTree::cube_count() const {
    std::int64_t total = 0;
    for (int k = 0; k <= depth_; ++k) total += cubes_at(k);
    return total;
}

std::int64_t DyadicTree::index_of(const CubeRef& q) const {
    // offset of level k: sum_{j<k} 2^(dim j) = (2^(dim k) - 1) / (2^dim - 1)
    const std::int64_t level_off = (ipow2(dim_ * q.level) - 1) / (ipow2(dim_) - 1);
    const std::int64_t within =
        dim_ == 1 ? q.coords[0] : q.coords[1] * ipow2(q.level) + q.coords[0];
    return level_off + within;
}

CubeRef DyadicTree::cube_at(std::int64_t index) const {
    int level = 0;
    std::int64_t off = 0;
    while (index - off >= cubes_at(level)) {
        off += cubes_at(level);
        ++level;
    }
    const std::int64_t within = index - off;
    CubeRef q;
    q.level = level;
    if (dim_ == 1) {
        q.coords = {within, 0};
    } else {
        q.coords = {within % ipow2(level), within / ipow2(level)};
    }
    return q;
}

CubeRef DyadicTree::parent(const CubeRef& q) const {
    if (q.level == 0) throw domain_error("root cube has no parent");
    return CubeRef{q.level - 1, {q.coords[0] >> 1, q.coords[1] >> 1}};
}

CubeRef DyadicTree::child(const CubeRef& q, int j) const {
    if (q.level >= depth_) throw domain_error("leaf cube has no children");
    CubeRef c;
    c.level = q.level + 1;
    c.coords[0] = q.coords[0] * 2 + (j & 1);
    c.coords[1] = dim_ == 2 ? q.coords[1] * 2 + ((j >> 1) & 1) : 0;
    return c;
}

LatticeBox DyadicTree::cells_of(const CubeRef& q) const {
    const std::int64_t w = ipow2(depth_ - q.level);
    LatticeBox b;
    for (int a = 0; a < dim_; ++a) {
        b.lo[a] = q.coords[a] * w;
        b.hi[a] = b.lo[a] + w;
    }
    if (dim_ == 1) {
        b.lo[1] = 0;
        b.hi[1] = 1;
    }
    return b;
}

std::int64_t DyadicTree::cell_index(std::array<std::int64_t, 2> cell) const {
    return dim_ == 1 ? cell[0] : cell[1] * cells_per_side() + cell[0];
}

std::array<double, 2> DyadicTree::cube_lo(const CubeRef& q) const {
    const double s = side(q.level);
    return {root_lo_[0] + s * static_cast<double>(q.coords[0]),
            dim_ == 2 ? root_lo_[1] + s * static_cast<double>(q.coords[1]) : 0.0};
}

bool DyadicTree::contains_point(std::array<double, 2> x) const {
    for (int a = 0; a < dim_; ++a)
        if (!(x[a] >= root_lo_[a] && x[a] < root_lo_[a] + root_size_)) return false;
    return true;
}

std::vector<CubeRef> DyadicTree::cubes_containing(std::array<double, 2> x) const {
    if (!contains_point(x)) throw domain_error("point lies outside the root box");
    const double h = cell_size();
    std::array<std::int64_t, 2> cell{0, 0};
    for (int a = 0; a < dim_; ++a) {
        auto c = static_cast<std::int64_t>(std::floor((x[a] - root_lo_[a]) / h));
        if (c >= cells_per_side()) c = cells_per_side() - 1; // guard the fp edge
        cell[a] = c;
    }
    std::vector<CubeRef> chain(static_cast<std::size_t>(depth_) + 1);
    for (int k = depth_; k >= 0; --k) {
        chain[k] = CubeRef{k, {cell[0] >> (depth_ - k), cell[1] >> (depth_ - k)}};
        if (dim_ == 1) chain[k].coords[1] = 0;
    }
    return chain;
}

std::array<std::int64_t, 2> DyadicTree::lattice_offset_against(const DyadicTree& base) const {
    const double h = base.cell_size();
    if (std::abs(cell_size() - h) > 1e-12 * h)
        throw mismatch_error("grids have different finest resolutions");
    std::array<std::int64_t, 2> off{0, 0};
    for (int a = 0; a < dim_; ++a) {
        const double raw = (root_lo_[a] - base.root_lo_[a]) / h;
        off[a] = std::llround(raw);
        if (std::abs(raw - static_cast<double>(off[a])) > 1e-9)
            throw mismatch_error("grid lattices are not aligned");
    }
    return off;
}

DyadicTree build_tree(int dim, int depth, std::array<double, 2> root_lo, double root_size,
                      std::array<double, 2> shift) {
    if (dim != 1 && dim != 2) throw parameter_error("dimension must be 1 or 2");
    if (depth < 0 || dim * depth > kGuardBudget)
        throw capacity_error("depth " + std::to_string(depth) + " exceeds the dim*depth <= 24 guard");
    const double h = root_size * std::ldexp(1.0, -depth);
    std::array<double, 2> lo = root_lo;
    for (int a = 0; a < dim; ++a) {
        const double cells = std::round(shift[a] * root_size / h);
        lo[a] += cells * h;
    }
    return DyadicTree(dim, depth, lo, root_size);
}

std::vector<DyadicTree> shifted_grid_family(int dim, int depth) {
    if (dim != 1 && dim != 2) throw parameter_error("dimension must be 1 or 2");
    if (depth < 0 || dim * depth > kGuardBudget)
        throw capacity_error("depth " + std::to_string(depth) + " exceeds the dim*depth <= 24 guard");
    const double h = std::ldexp(1.0, -depth);
    const auto cells = static_cast<double>(std::int64_t{1} << depth);
    std::vector<DyadicTree> grids;
    const int variants = dim == 1 ? 3 : 9;
    grids.reserve(variants);
    for (int v = 0; v < variants; ++v) {
        const int s0 = v % 3;
        const int s1 = v / 3;
        std::array<double, 2> lo{-1.0, dim == 2 ? -1.0 : 0.0};
        lo[0] += std::round(s0 * cells / 3.0) * h;
        if (dim == 2) lo[1] += std::round(s1 * cells / 3.0) * h;
        grids.emplace_back(dim, depth + 2, lo, 4.0);
    }
    return grids;
}

} // namespace bumplab
