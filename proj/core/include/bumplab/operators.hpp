#pragma once

#include <vector>

#include "bumplab/grid_function.hpp"
#include "bumplab/stopping.hpp"

namespace bumplab {

/// Exponent bookkeeping for one (n, alpha, p, q) configuration.
struct ExponentConfig {
    int dim = 1;
    double alpha = 0.0;
    double p = 2.0;
    double q = 2.0;

    void validate() const;
    /// p/(p-1); +infinity when p == 1.
    double p_conj() const;
    double q_conj() const;
    /// The dual configuration (alpha, q', p'); requires p > 1.
    ExponentConfig dual() const;
};

/// Chain-max of side(Q)^alpha <f>_Q over the containing cubes of `grid`.
/// When grid is f's own tree the cached cube masses are used (exact
/// root-to-leaf pass); any lattice-aligned grid (e.g. a member of the shifted
/// family) is accepted, with f extended by zero. Output lives on f's cells.
/// Requires alpha in [0, n); f is replaced by |f| when it takes negative
/// values.
GridFunction dyadic_frac_maximal(const GridFunction& f, const DyadicTree& grid, double alpha);

/// Chain-sum analogue of the above; requires alpha in (0, n).
GridFunction dyadic_frac_integral(const GridFunction& f, const DyadicTree& grid, double alpha);

/// The full fractional maximal operator at desk scale: the supremum of
/// side(P)^alpha <|f|>_P over every lattice-aligned cube P inside the window
/// [-1,2)^n (all integer side lengths and positions, f extended by zero).
/// Values are reported on f's cells. alpha in [0, n).
GridFunction frac_maximal(const GridFunction& f, double alpha);

/// frac_maximal with alpha = 0 (Hardy-Littlewood).
GridFunction hl_maximal(const GridFunction& f);

/// M_alpha(g 1_Q) evaluated on the cells of the lattice box `box` only, with
/// g truncated to the box. Row-major values over the box. Used by the entropy
/// functionals, where only the restriction matters. Requires g >= 0.
std::vector<double> restricted_maximal_field(const GridFunction& g, const LatticeBox& box,
                                             double alpha);

/// Riesz-kernel discretization: off-diagonal couplings use the kernel at cell
/// centers times the cell volume, the diagonal the exact (1d) or quadrature
/// (2d) cell self-interaction. Dense matrix-free apply; 2d trees deeper than
/// 7 are rejected.
GridFunction kernel_frac_integral(const GridFunction& f, double alpha);

struct SparseOperatorSpec {
    const SparseFamily* family = nullptr;
    double alpha = 0.0;
};

/// sum over family cubes of side(Q)^alpha <f>_Q 1_Q.
GridFunction sparse_apply(const SparseOperatorSpec& spec, const GridFunction& f);

/// The geometric bound on a dyadic chain below a fixed cube:
/// sum side(Q)^alpha <= C * side(S)^alpha with C = 1/(1 - 2^-alpha).
double geometric_chain_constant(double alpha, int dim);

/// Cellwise sum of the per-grid dyadic operators over the 3^n shifted grids;
/// comparability references for frac_maximal / kernel_frac_integral.
GridFunction shifted_sum_maximal(const GridFunction& f, double alpha);
GridFunction shifted_sum_integral(const GridFunction& f, double alpha);

} // namespace bumplab
