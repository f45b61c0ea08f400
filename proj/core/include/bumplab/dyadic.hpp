#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bumplab/errors.hpp"

namespace bumplab {

/// One cube inside a DyadicTree, addressed by level and integer coordinates.
/// Level k cubes have side root_size * 2^-k; coords[i] ranges over [0, 2^k).
struct CubeRef {
    int level = 0;
    std::array<std::int64_t, 2> coords{0, 0};

    friend bool operator==(const CubeRef&, const CubeRef&) = default;
};

/// Identifies a cube across several grids (root grid is id 0, the shifted
/// family takes 1..3^n). Ordering gives the deterministic tie-break used by
/// argmax reporting: grid, then level, then coords.
struct CubeKey {
    int grid = 0;
    int level = 0;
    std::array<std::int64_t, 2> coords{0, 0};

    friend bool operator==(const CubeKey&, const CubeKey&) = default;
    friend auto operator<=>(const CubeKey&, const CubeKey&) = default;
};

/// Axis-aligned box in finest-cell units of some tree's lattice, half-open:
/// cells lo[i] <= c < hi[i]. The second axis is ignored when dim == 1.
struct LatticeBox {
    std::array<std::int64_t, 2> lo{0, 0};
    std::array<std::int64_t, 2> hi{0, 0};
};

/// Truncated dyadic grid over a cubic root box. Cubes are half-open, children
/// halve the side, and everything is addressed by integer lattice arithmetic;
/// no per-cube storage is kept, so trees are cheap to create and share.
///
/// Immutable after construction; all member functions are const and safe to
/// call concurrently.
class DyadicTree {
  public:
    DyadicTree(int dim, int depth, std::array<double, 2> root_lo, double root_size);

    /// Unit root [0,1)^dim.
    DyadicTree(int dim, int depth) : DyadicTree(dim, depth, {0.0, 0.0}, 1.0) {}

    int dimension() const { return dim_; }
    int depth() const { return depth_; }
    double root_size() const { return root_size_; }
    std::array<double, 2> root_lo() const { return root_lo_; }

    /// Side of a level-k cube / volume of a level-k cube.
    double side(int level) const;
    double volume(int level) const;
    /// Finest-cell side, side(depth()).
    double cell_size() const { return side(depth_); }

    std::int64_t cells_per_side() const { return std::int64_t{1} << depth_; }
    std::int64_t cell_count() const;
    /// Sum over levels of 2^(dim*k).
    std::int64_t cube_count() const;
    std::int64_t cubes_at(int level) const;

    /// Linear id of a cube: levels are laid out consecutively, row-major
    /// within a level. Inverse of cube_at.
    std::int64_t index_of(const CubeRef& q) const;
    CubeRef cube_at(std::int64_t index) const;

    CubeRef root() const { return CubeRef{}; }
    CubeRef parent(const CubeRef& q) const;
    /// j enumerates the 2^dim children in row-major order.
    CubeRef child(const CubeRef& q, int j) const;
    int children_per_cube() const { return 1 << dim_; }
    bool is_leaf(const CubeRef& q) const { return q.level == depth_; }

    /// Finest cells covered by q, in this tree's own lattice.
    LatticeBox cells_of(const CubeRef& q) const;
    /// Linear finest-cell index (row-major) of the cell holding a leaf-level
    /// lattice coordinate.
    std::int64_t cell_index(std::array<std::int64_t, 2> cell) const;

    std::array<double, 2> cube_lo(const CubeRef& q) const;
    bool contains_point(std::array<double, 2> x) const;

    /// The chain of nested cubes root = chain[0] > ... > chain[depth]
    /// containing x. Throws domain_error when x is outside the root box.
    std::vector<CubeRef> cubes_containing(std::array<double, 2> x) const;

    /// Offset (in finest cells, per axis) of this tree's lattice relative to
    /// `base`'s lattice. Throws mismatch_error unless the two finest lattices
    /// coincide up to an integer translation.
    std::array<std::int64_t, 2> lattice_offset_against(const DyadicTree& base) const;

  private:
    int dim_;
    int depth_;
    std::array<double, 2> root_lo_;
    double root_size_;
};

/// Spec'd constructor with the memory guard dim*depth <= 24. The shift is
/// given in units of the root size and gets rounded to the finest lattice.
DyadicTree build_tree(int dim, int depth, std::array<double, 2> root_lo, double root_size,
                      std::array<double, 2> shift = {0.0, 0.0});

/// The 3^dim one-third-shift family for the unit root at resolution `depth`:
/// trees of side 4 over [-1,3)^dim (shift offsets rounded to the 2^-depth
/// lattice) whose finest cells line up with the unit root's cells. Every
/// lattice-aligned cube Q inside the unit root has a family cube P containing
/// it with |P| <= 3^dim |Q|.
std::vector<DyadicTree> shifted_grid_family(int dim, int depth);

} // namespace bumplab
