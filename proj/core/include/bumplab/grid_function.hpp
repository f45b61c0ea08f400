#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bumplab/dyadic.hpp"

namespace bumplab {

/// Cellwise-constant density on a tree's finest cells, together with the
/// exact aggregated mass of every cube (leaf-to-root pairwise summation) and
/// lattice prefix sums for O(1) masses of arbitrary lattice boxes.
///
/// Immutable after construction; the tree must outlive the function.
class GridFunction {
  public:
    GridFunction(const DyadicTree& tree, std::vector<double> cell_values);

    const DyadicTree& tree() const { return *tree_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(cells_.size()); }
    double cell_value(std::int64_t i) const { return cells_[static_cast<std::size_t>(i)]; }
    std::span<const double> cell_values() const { return cells_; }

    /// Integral of the density over a cube of the owning tree.
    double mass(const CubeRef& q) const;
    double total_mass() const { return mass(tree_->root()); }
    /// Integral over a lattice box (finest-cell units of the owning tree);
    /// the box is clipped to the tree, everything outside counts as zero.
    double mass(const LatticeBox& box) const;

    /// mass(q) / |q|.
    double average(const CubeRef& q) const;

    bool nonnegative() const;

  private:
    const DyadicTree* tree_;
    std::vector<double> cells_;
    std::vector<double> cube_masses_;
    std::vector<double> prefix_; // 1d: N+1 entries; 2d: (N+1)^2 summed-area table
};

/// A nonnegative GridFunction, i.e. the density of a measure.
class Weight {
  public:
    explicit Weight(GridFunction g);

    const GridFunction& fn() const { return g_; }
    operator const GridFunction&() const { return g_; }
    const DyadicTree& tree() const { return g_.tree(); }
    double mass(const CubeRef& q) const { return g_.mass(q); }
    double mass(const LatticeBox& b) const { return g_.mass(b); }
    double average(const CubeRef& q) const { return g_.average(q); }

  private:
    GridFunction g_;
};

/// Checked cube mass: throws mismatch_error when the cube's grid is not the
/// function's own grid.
double mass(const GridFunction& u, const DyadicTree& grid, const CubeRef& q);

/// sigma-weighted average of f over q. Throws zero_mass_error when
/// sigma(q) == 0; callers taking suprema skip such cubes instead.
double weighted_average(const GridFunction& f, const CubeRef& q, const Weight& sigma);

/// (integral of |f|^p dmu)^(1/p); exact for cellwise data. Requires p >= 1.
double lp_norm(const GridFunction& f, const Weight& mu, double p);

/// Plain L^p integral pairing: integral of f*g dmu over the whole root.
double integral_product(const GridFunction& f, const GridFunction& g, const Weight& mu);

// --- generators -----------------------------------------------------------

Weight constant_weight(const DyadicTree& tree, double c);

/// |x - x0|^a with exact per-cell moments in 1d and a fixed-order tensor
/// Gauss-Legendre rule in 2d. Requires a > -1.
Weight power_weight(const DyadicTree& tree, double a, std::array<double, 2> x0);

/// Density 1 on the box [lo, hi), cell masses exact under partial overlap.
Weight indicator_weight(const DyadicTree& tree, std::array<double, 2> lo, std::array<double, 2> hi);

/// Multiplicative cascade: child masses get factors (u, 2-u)/2 per axis with
/// u ~ U(0,2); total mass is conserved exactly at every level. Reproducible
/// from the seed. With max_level >= 0 the random subdivision stops there and
/// mass spreads uniformly below, so the same (seed, max_level) describes one
/// fixed measure at every resolution >= max_level.
Weight cascade_weight(const DyadicTree& tree, std::uint64_t seed, double total = 1.0,
                      int max_level = -1);

/// iid uniform cell densities on [lo, hi).
Weight random_weight(const DyadicTree& tree, std::uint64_t seed, double lo = 0.0, double hi = 1.0);

// --- serialization ---------------------------------------------------------

/// {"schema_version", "dimension", "depth", "shift", "cell_values"}; binary64
/// values round-trip bit-exactly. "shift" is the root box offset; the root
/// size is fixed to 1.
std::string weight_to_json(const Weight& w);

/// Parses weight_to_json output. The returned Weight owns a tree constructed
/// from the header fields; `tree_storage` receives it and must stay alive as
/// long as the weight is used.
Weight weight_from_json(const std::string& text, std::vector<DyadicTree>& tree_storage);

} // namespace bumplab
