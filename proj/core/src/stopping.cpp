#include "bumplab/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include <json.hpp>

namespace bumplab {

namespace {

bool cube_contains(const CubeRef& outer, const CubeRef& inner, int dim) {
    if (inner.level < outer.level) return false;
    const int shift = inner.level - outer.level;
    for (int a = 0; a < dim; ++a)
        if ((inner.coords[a] >> shift) != outer.coords[a]) return false;
    return true;
}

double fractional_value(const GridFunction& f, const DyadicTree& tree, const CubeRef& q, double alpha) {
    return std::pow(tree.side(q.level), alpha) * f.average(q);
}

} // namespace

SparseFamily SparseFamily::from_cubes(const DyadicTree& tree, std::vector<CubeRef> cubes) {
    SparseFamily fam;
    fam.tree_ = &tree;
    fam.members_ = std::move(cubes);
    fam.variant_ = Variant::manual;
    fam.finalize();
    return fam;
}

void SparseFamily::finalize() {
    const int dim = tree_->dimension();
    const std::size_t n = members_.size();
    parent_.assign(n, -1);
    children_.assign(n, {});

    // minimal strict member-ancestor of each member
    for (std::size_t i = 0; i < n; ++i) {
        int best = -1;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (members_[j].level >= members_[i].level) continue;
            if (!cube_contains(members_[j], members_[i], dim)) continue;
            if (best < 0 || members_[j].level > members_[static_cast<std::size_t>(best)].level)
                best = static_cast<int>(j);
        }
        parent_[i] = best;
    }
    int roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (parent_[i] < 0) {
            root_index_ = i;
            ++roots;
        } else {
            children_[static_cast<std::size_t>(parent_[i])].push_back(static_cast<int>(i));
        }
    }
    if (roots != 1) throw parameter_error("sparse family must have exactly one root cube");

    // deepest-member ownership per finest cell; overwriting in level order
    // leaves the minimal member
    owner_.assign(static_cast<std::size_t>(tree_->cell_count()), -1);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return members_[a].level < members_[b].level; });
    const std::int64_t per_side = tree_->cells_per_side();
    for (std::size_t oi : order) {
        const LatticeBox b = tree_->cells_of(members_[oi]);
        if (dim == 1) {
            for (std::int64_t c = b.lo[0]; c < b.hi[0]; ++c)
                owner_[static_cast<std::size_t>(c)] = static_cast<std::int32_t>(oi);
        } else {
            for (std::int64_t y = b.lo[1]; y < b.hi[1]; ++y)
                for (std::int64_t x = b.lo[0]; x < b.hi[0]; ++x)
                    owner_[static_cast<std::size_t>(y * per_side + x)] = static_cast<std::int32_t>(oi);
        }
    }
}

double SparseFamily::member_measure(std::size_t i) const { return tree_->volume(members_[i].level); }

double SparseFamily::children_measure(std::size_t i) const {
    double s = 0.0;
    for (int c : children_[i]) s += member_measure(static_cast<std::size_t>(c));
    return s;
}

double SparseFamily::exceptional_measure(std::size_t i) const {
    return member_measure(i) - children_measure(i);
}

std::vector<std::int64_t> SparseFamily::exceptional_cells(std::size_t i) const {
    std::vector<std::int64_t> cells;
    for (std::int64_t c = 0; c < tree_->cell_count(); ++c)
        if (owner_[static_cast<std::size_t>(c)] == static_cast<std::int32_t>(i)) cells.push_back(c);
    return cells;
}

SparsenessCertificate SparseFamily::sparseness_check() const {
    SparsenessCertificate cert;
    cert.ok = true;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const double m = member_measure(i);
        const double ch = children_measure(i);
        const double es = m - ch;
        cert.worst_child_ratio = std::max(cert.worst_child_ratio, ch / m);
        const double es_ratio = es > 0.0 ? m / es : std::numeric_limits<double>::infinity();
        cert.worst_exceptional_ratio = std::max(cert.worst_exceptional_ratio, es_ratio);
        if (ch > 0.5 * m || m > 2.0 * es) cert.ok = false;
    }
    return cert;
}

SparseFamily SparseFamily::build_stopping(const GridFunction& f, const DyadicTree& tree,
                                          const CubeRef& q0, double alpha, double factor,
                                          Variant variant) {
    if (&f.tree() != &tree &&
        (f.tree().dimension() != tree.dimension() || f.tree().depth() != tree.depth() ||
         f.tree().root_lo() != tree.root_lo() || f.tree().root_size() != tree.root_size()))
        throw mismatch_error("stopping construction needs f on the given tree");
    if (!(factor > 1.0)) throw parameter_error("stopping factor must exceed 1");
    if (!f.nonnegative()) throw parameter_error("stopping construction needs f >= 0");
    if (f.mass(q0) == 0.0) throw degenerate_input_error("f vanishes on the stopping root");

    SparseFamily fam;
    fam.tree_ = &tree;
    fam.variant_ = variant;
    fam.alpha_ = variant == SparseFamily::Variant::fractional ? alpha : 0.0;
    fam.factor_ = factor;
    fam.source_ = &f;

    const auto value = [&](const CubeRef& q) {
        return variant == SparseFamily::Variant::fractional ? fractional_value(f, tree, q, alpha)
                                                            : f.average(q);
    };

    fam.members_.push_back(q0);
    std::deque<std::size_t> work{0};
    while (!work.empty()) {
        const std::size_t pi = work.front();
        work.pop_front();
        const CubeRef parent = fam.members_[pi];
        const double threshold = factor * value(parent);
        // maximal descendants strictly above the threshold; strict ">" so a
        // tie never stops
        std::vector<CubeRef> stack;
        if (parent.level < tree.depth())
            for (int j = 0; j < tree.children_per_cube(); ++j) stack.push_back(tree.child(parent, j));
        while (!stack.empty()) {
            const CubeRef q = stack.back();
            stack.pop_back();
            if (value(q) > threshold) {
                fam.members_.push_back(q);
                work.push_back(fam.members_.size() - 1);
                continue;
            }
            if (q.level < tree.depth())
                for (int j = 0; j < tree.children_per_cube(); ++j) stack.push_back(tree.child(q, j));
        }
    }
    fam.finalize();
    return fam;
}

SparseFamily build_stopping_fractional(const GridFunction& f, const DyadicTree& tree,
                                       const CubeRef& q0, double alpha, double factor) {
    if (!(alpha >= 0.0 && alpha <= tree.dimension()))
        throw parameter_error("stopping alpha must lie in [0, n]");
    return SparseFamily::build_stopping(f, tree, q0, alpha, factor,
                                        SparseFamily::Variant::fractional);
}

SparseFamily build_stopping_plain(const GridFunction& f, const DyadicTree& tree, const CubeRef& q0,
                                  double factor) {
    return SparseFamily::build_stopping(f, tree, q0, 0.0, factor, SparseFamily::Variant::plain);
}

GridFunction linearize_maximal(const GridFunction& f, const SparseFamily& family, double alpha) {
    if (family.variant() != SparseFamily::Variant::fractional || family.source() != &f ||
        family.stopping_alpha() != alpha)
        throw mismatch_error("linearize_maximal needs the fractional stopping family of this exact f, alpha");
    const DyadicTree& tree = family.tree();
    std::vector<double> member_value(family.size());
    for (std::size_t i = 0; i < family.size(); ++i)
        member_value[i] = fractional_value(f, tree, family.member(i), alpha);
    std::vector<double> out(static_cast<std::size_t>(tree.cell_count()), 0.0);
    for (std::int64_t c = 0; c < tree.cell_count(); ++c) {
        const int o = family.owner_of_cell(c);
        if (o >= 0) out[static_cast<std::size_t>(c)] = member_value[static_cast<std::size_t>(o)];
    }
    return GridFunction(tree, std::move(out));
}

GridFunction reduce_integral(const GridFunction& f, const SparseFamily& family, double alpha) {
    if (family.variant() != SparseFamily::Variant::plain || family.source() != &f)
        throw mismatch_error("reduce_integral needs the plain stopping family of this exact f");
    if (!(alpha > 0.0 && alpha < family.tree().dimension()))
        throw parameter_error("reduce_integral needs alpha in (0, n)");
    const DyadicTree& tree = family.tree();
    const std::int64_t per_side = tree.cells_per_side();
    std::vector<double> out(static_cast<std::size_t>(tree.cell_count()), 0.0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const CubeRef s = family.member(i);
        const double term = fractional_value(f, tree, s, alpha);
        const LatticeBox b = tree.cells_of(s);
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

std::string family_to_json(const SparseFamily& family) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    auto cubes = nlohmann::ordered_json::array();
    auto parents = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
        const CubeRef& q = family.member(i);
        nlohmann::ordered_json c;
        c["level"] = q.level;
        c["coords"] = family.tree().dimension() == 1
                          ? std::vector<std::int64_t>{q.coords[0]}
                          : std::vector<std::int64_t>{q.coords[0], q.coords[1]};
        cubes.push_back(std::move(c));
        parents.push_back(family.parent_index(i));
    }
    j["cubes"] = std::move(cubes);
    j["parents"] = std::move(parents);
    return j.dump();
}

} // namespace bumplab
