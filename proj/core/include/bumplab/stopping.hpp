#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bumplab/grid_function.hpp"

namespace bumplab {

struct SparsenessCertificate {
    bool ok = false;
    double worst_child_ratio = 0.0;       // max over S of sum_{ch(S)} |Q| / |S|
    double worst_exceptional_ratio = 0.0; // max over S of |S| / |E_S|
};

/// A cube collection with parent links, maximal-descendant sets and the
/// disjoint exceptional sets E_S = S minus its family children. Built by the
/// stopping constructions below (or assembled directly for tests); immutable
/// afterwards.
class SparseFamily {
  public:
    enum class Variant { fractional, plain, manual };

    /// Assembles a family from explicit member cubes (root first member or
    /// not, the true root is the unique member without a member-ancestor;
    /// exactly one is required).
    static SparseFamily from_cubes(const DyadicTree& tree, std::vector<CubeRef> cubes);

    const DyadicTree& tree() const { return *tree_; }
    const std::vector<CubeRef>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    const CubeRef& member(std::size_t i) const { return members_[i]; }
    int parent_index(std::size_t i) const { return parent_[i]; }
    const std::vector<int>& child_indices(std::size_t i) const { return children_[i]; }
    std::size_t root_index() const { return root_index_; }

    Variant variant() const { return variant_; }
    double stopping_alpha() const { return alpha_; }
    double stopping_factor() const { return factor_; }
    const GridFunction* source() const { return source_; }

    double member_measure(std::size_t i) const;
    double children_measure(std::size_t i) const;
    double exceptional_measure(std::size_t i) const;

    /// Index of the minimal member containing a finest cell, -1 outside the
    /// family root. Cell c belongs to E_S exactly when owner(c) == S.
    int owner_of_cell(std::int64_t cell) const { return owner_[static_cast<std::size_t>(cell)]; }
    std::vector<std::int64_t> exceptional_cells(std::size_t i) const;

    SparsenessCertificate sparseness_check() const;

  private:
    friend SparseFamily build_stopping_fractional(const GridFunction&, const DyadicTree&,
                                                  const CubeRef&, double, double);
    friend SparseFamily build_stopping_plain(const GridFunction&, const DyadicTree&, const CubeRef&,
                                             double);
    static SparseFamily build_stopping(const GridFunction& f, const DyadicTree& tree,
                                       const CubeRef& q0, double alpha, double factor,
                                       Variant variant);
    SparseFamily() = default;
    void finalize();

    const DyadicTree* tree_ = nullptr;
    std::vector<CubeRef> members_;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<std::int32_t> owner_;
    std::size_t root_index_ = 0;
    Variant variant_ = Variant::manual;
    double alpha_ = 0.0;
    double factor_ = 0.0;
    const GridFunction* source_ = nullptr;
};

/// Stopping on fractional averages: starting from {q0}, each minimal member P
/// recruits its maximal descendants Q with side(Q)^alpha <f>_Q strictly above
/// factor * side(P)^alpha <f>_P. Ties are not recruited. Throws
/// degenerate_input_error when f vanishes identically on q0.
SparseFamily build_stopping_fractional(const GridFunction& f, const DyadicTree& tree,
                                       const CubeRef& q0, double alpha, double factor = 4.0);

/// Stopping on plain averages (<f>_Q > factor * <f>_P).
SparseFamily build_stopping_plain(const GridFunction& f, const DyadicTree& tree, const CubeRef& q0,
                                  double factor = 4.0);

/// The linearization sum_S side(S)^alpha <f>_S 1_{E_S}. Requires the family
/// to have been built by build_stopping_fractional on the same f and alpha;
/// then linearize <= M^D_alpha f <= factor * linearize cellwise.
GridFunction linearize_maximal(const GridFunction& f, const SparseFamily& family, double alpha);

/// The sparse upper envelope sum_S side(S)^alpha <f>_S 1_S for a family built
/// by build_stopping_plain on f; dominates I^D_alpha f / (factor * chain
/// constant) cellwise.
GridFunction reduce_integral(const GridFunction& f, const SparseFamily& family, double alpha);

/// {"schema_version", "cubes": [{"level", "coords"}], "parents": [...]}.
std::string family_to_json(const SparseFamily& family);

} // namespace bumplab
