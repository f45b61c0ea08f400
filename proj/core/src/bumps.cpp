#include "bumplab/bumps.hpp"

#include <cmath>

#include <json.hpp>

#include "bumplab/util.hpp"

namespace bumplab {

EpsilonSpec::EpsilonSpec(Variant v, double slot, double delta)
    : variant_(v), slot_(slot), delta_(delta) {
    if (!(delta > 0.0)) throw parameter_error("epsilon family needs delta > 0");
    if (!(slot >= 1.0)) throw parameter_error("epsilon exponent slot must be >= 1");
}

double EpsilonSpec::eval(double t) const {
    if (variant_ == Variant::onebump) {
        // domain (1, inf); rho >= 1 makes t < 1 unreachable except through
        // rounding, which clamps to the t = 1 value
        const double u = t > 1.0 ? std::log(t) : 0.0;
        return std::pow(std::pow(1.0 + u, 1.0 + delta_) / delta_, 1.0 / slot_);
    }
    if (!(t > 0.0)) throw parameter_error("separated epsilon needs t > 0");
    return std::pow(1.0 + std::abs(std::log(t)), slot_ * (1.0 + delta_));
}

double EpsilonSpec::normalization() const {
    return variant_ == Variant::onebump ? 1.0 : 2.0 / delta_;
}

double EpsilonSpec::onebump_partial(double T) const {
    if (variant_ != Variant::onebump) throw parameter_error("partial normalization is a one-bump quantity");
    if (!(T >= 1.0)) throw parameter_error("partial normalization needs T >= 1");
    return 1.0 - std::pow(1.0 + std::log(T), -delta_);
}

namespace {

// candidate cube for a bump sweep: geometry on the root lattice
struct Candidate {
    CubeKey key;
    LatticeBox box;
    std::int64_t side_cells = 0;
};

std::vector<Candidate> candidate_cubes(const DyadicTree& tree, bool include_shifted) {
    std::vector<Candidate> out;
    const int dim = tree.dimension();
    const std::int64_t n = tree.cells_per_side();
    for (std::int64_t id = 0; id < tree.cube_count(); ++id) {
        const CubeRef q = tree.cube_at(id);
        out.push_back({CubeKey{0, q.level, q.coords}, tree.cells_of(q),
                       std::int64_t{1} << (tree.depth() - q.level)});
    }
    if (!include_shifted) return out;
    const auto grids = shifted_grid_family(dim, tree.depth());
    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
        const DyadicTree& g = grids[gi];
        const auto off = g.lattice_offset_against(tree);
        // depth-first, pruning branches that left the root box
        std::vector<CubeRef> stack{g.root()};
        while (!stack.empty()) {
            const CubeRef q = stack.back();
            stack.pop_back();
            LatticeBox b = g.cells_of(q);
            bool outside = false, inside = true;
            for (int a = 0; a < dim; ++a) {
                b.lo[a] += off[a];
                b.hi[a] += off[a];
                if (b.hi[a] <= 0 || b.lo[a] >= n) outside = true;
                if (b.lo[a] < 0 || b.hi[a] > n) inside = false;
            }
            if (outside) continue;
            if (inside)
                out.push_back({CubeKey{static_cast<int>(gi) + 1, q.level, q.coords}, b,
                               std::int64_t{1} << (g.depth() - q.level)});
            if (!g.is_leaf(q))
                for (int j = 0; j < g.children_per_cube(); ++j) stack.push_back(g.child(q, j));
        }
    }
    return out;
}

double pow_or_one(double base, double e) { return e == 0.0 ? 1.0 : std::pow(base, e); }

// shared sweep driver: evaluate takes a candidate and reports beta or nullopt
// (skip); the reduction keeps the deterministic (grid, level, coords)
// tie-break regardless of thread interleaving
template <class Eval>
BumpReport sweep(const DyadicTree& tree, const SweepOptions& opts, Eval evaluate) {
    const std::vector<Candidate> cands = candidate_cubes(tree, opts.include_shifted);
    struct Slot {
        double value = -1.0;
        std::size_t index = 0;
        bool set = false;
    };
    const std::size_t count = cands.size();
    std::vector<double> values(count, 0.0);
    std::vector<char> skipped(count, 0);
    parallel_for(count, opts.threads, [&](std::size_t i) {
        const std::optional<double> beta = evaluate(cands[i]);
        if (beta.has_value())
            values[i] = *beta;
        else
            skipped[i] = 1;
    });
    BumpReport report;
    Slot best;
    for (std::size_t i = 0; i < count; ++i) {
        if (skipped[i]) {
            ++report.skipped;
            continue;
        }
        if (!best.set || values[i] > best.value ||
            (values[i] == best.value && cands[i].key < cands[best.index].key)) {
            best = {values[i], i, true};
        }
    }
    if (best.set) {
        report.constant = best.value;
        report.argmax = cands[best.index].key;
    }
    if (opts.with_table) {
        report.table.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            if (!skipped[i]) report.table.emplace_back(cands[i].key, values[i]);
    }
    return report;
}

} // namespace

std::optional<double> rho_box(const Weight& sigma, const LatticeBox& box) {
    const double sq = sigma.mass(box);
    if (sq == 0.0) return std::nullopt;
    const std::vector<double> field = restricted_maximal_field(sigma.fn(), box, 0.0);
    const double cell_vol = sigma.tree().volume(sigma.tree().depth());
    return cell_vol * pairwise_sum(field) / sq;
}

std::optional<double> rho(const Weight& sigma, const DyadicTree& grid, const CubeRef& q) {
    LatticeBox box = grid.cells_of(q);
    const auto off = grid.lattice_offset_against(sigma.tree());
    for (int a = 0; a < sigma.tree().dimension(); ++a) {
        box.lo[a] += off[a];
        box.hi[a] += off[a];
    }
    return rho_box(sigma, box);
}

std::optional<double> varrho_box(const Weight& sigma, const LatticeBox& box, double alpha, double p,
                                 double q_exp) {
    const double sq = sigma.mass(box);
    if (sq == 0.0) return std::nullopt;
    const std::vector<double> field = restricted_maximal_field(sigma.fn(), box, alpha);
    const double e = q_exp / p;
    std::vector<double> powed(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) powed[i] = std::pow(field[i], e);
    const double cell_vol = sigma.tree().volume(sigma.tree().depth());
    return cell_vol * pairwise_sum(powed) / std::pow(sq, e);
}

std::optional<double> varrho(const Weight& sigma, const DyadicTree& grid, const CubeRef& q,
                             double alpha, double p, double q_exp) {
    LatticeBox box = grid.cells_of(q);
    const auto off = grid.lattice_offset_against(sigma.tree());
    for (int a = 0; a < sigma.tree().dimension(); ++a) {
        box.lo[a] += off[a];
        box.hi[a] += off[a];
    }
    return varrho_box(sigma, box, alpha, p, q_exp);
}

BumpReport weak_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                         const SweepOptions& opts) {
    cfg.validate();
    const DyadicTree& tree = sigma.tree();
    const double h = tree.cell_size();
    const int dim = tree.dimension();
    const double ep = 1.0 / cfg.p_conj(); // 0 when p == 1
    const double eq = 1.0 / cfg.q;
    return sweep(tree, opts, [&](const Candidate& c) -> std::optional<double> {
        const double sm = sigma.mass(c.box);
        const double wm = w.mass(c.box);
        if (sm == 0.0 || wm == 0.0) return std::nullopt; // contributes 0; recorded
        const double side = static_cast<double>(c.side_cells) * h;
        const double vol = dim == 1 ? side : side * side;
        return pow_or_one(sm, ep) * pow_or_one(wm, eq) * std::pow(side, cfg.alpha) / vol;
    });
}

BumpReport onebump_max_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                                const EpsilonSpec& eps_q, const SweepOptions& opts) {
    cfg.validate();
    if (!(cfg.p > 1.0)) throw parameter_error("strong bump constants need p > 1");
    if (eps_q.variant() != EpsilonSpec::Variant::onebump || std::abs(eps_q.slot() - cfg.q) > 1e-12)
        throw parameter_error("one-bump maximal constant needs a one-bump epsilon in slot q");
    const DyadicTree& tree = sigma.tree();
    const double h = tree.cell_size();
    const int dim = tree.dimension();
    const double ep = 1.0 / cfg.p_conj();
    const double eq = 1.0 / cfg.q;
    return sweep(tree, opts, [&](const Candidate& c) -> std::optional<double> {
        const double sm = sigma.mass(c.box);
        const double wm = w.mass(c.box);
        if (sm == 0.0 || wm == 0.0) return std::nullopt;
        const auto r = rho_box(sigma, c.box);
        const double side = static_cast<double>(c.side_cells) * h;
        const double vol = dim == 1 ? side : side * side;
        const double weak = std::pow(sm, ep) * std::pow(wm, eq) * std::pow(side, cfg.alpha) / vol;
        return weak * std::pow(*r, 1.0 / cfg.p) * eps_q.eval(*r);
    });
}

BumpReport onebump_int_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                                const EpsilonSpec& eps_p, const EpsilonSpec& eps_qc,
                                const SweepOptions& opts) {
    cfg.validate();
    if (!(cfg.p > 1.0)) throw parameter_error("strong bump constants need p > 1");
    if (eps_p.variant() != EpsilonSpec::Variant::onebump || std::abs(eps_p.slot() - cfg.p) > 1e-12)
        throw parameter_error("one-bump integral constant needs a one-bump epsilon in slot p");
    if (eps_qc.variant() != EpsilonSpec::Variant::onebump ||
        std::abs(eps_qc.slot() - cfg.q_conj()) > 1e-12)
        throw parameter_error("one-bump integral constant needs a one-bump epsilon in slot q'");
    const DyadicTree& tree = sigma.tree();
    const double h = tree.cell_size();
    const int dim = tree.dimension();
    const double ep = 1.0 / cfg.p_conj();
    const double eq = 1.0 / cfg.q;
    return sweep(tree, opts, [&](const Candidate& c) -> std::optional<double> {
        const double sm = sigma.mass(c.box);
        const double wm = w.mass(c.box);
        if (sm == 0.0 || wm == 0.0) return std::nullopt;
        const auto rs = rho_box(sigma, c.box);
        const auto rw = rho_box(w, c.box);
        const double side = static_cast<double>(c.side_cells) * h;
        const double vol = dim == 1 ? side : side * side;
        const double weak = std::pow(sm, ep) * std::pow(wm, eq) * std::pow(side, cfg.alpha) / vol;
        return weak * std::pow(*rs, 1.0 / cfg.p) * eps_p.eval(*rs) *
               std::pow(*rw, 1.0 / cfg.q_conj()) * eps_qc.eval(*rw);
    });
}

BumpReport sep_bump_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                             const EpsilonSpec& eps_q, const SweepOptions& opts) {
    cfg.validate();
    if (!(cfg.p > 1.0)) throw parameter_error("strong bump constants need p > 1");
    if (eps_q.variant() != EpsilonSpec::Variant::separated || std::abs(eps_q.slot() - cfg.q) > 1e-12)
        throw parameter_error("separated bump constant needs a separated epsilon in slot q");
    const DyadicTree& tree = sigma.tree();
    const double h = tree.cell_size();
    const int dim = tree.dimension();
    const double e_sigma = cfg.q / cfg.p_conj();
    return sweep(tree, opts, [&](const Candidate& c) -> std::optional<double> {
        const double sm = sigma.mass(c.box);
        const double wm = w.mass(c.box);
        if (sm == 0.0 || wm == 0.0) return std::nullopt;
        const auto vr = varrho_box(sigma, c.box, cfg.alpha, cfg.p, cfg.q);
        const double side = static_cast<double>(c.side_cells) * h;
        const double vol = dim == 1 ? side : side * side;
        const double savg = sm / vol;
        const double wavg = wm / vol;
        return std::pow(std::pow(side, cfg.alpha) * savg, e_sigma) * wavg * (*vr) * eps_q.eval(*vr);
    });
}

BumpReport sep_bump_dual(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                         double delta, const SweepOptions& opts) {
    const ExponentConfig dual = cfg.dual();
    const EpsilonSpec eps = EpsilonSpec::separated(dual.q, delta);
    return sep_bump_constant(w, sigma, dual, eps, opts);
}

std::string bump_report_to_json(const BumpReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["constant"] = report.constant;
    j["argmax"] = {{"grid", report.argmax.grid},
                   {"level", report.argmax.level},
                   {"coords", {report.argmax.coords[0], report.argmax.coords[1]}}};
    j["skipped"] = report.skipped;
    if (!report.table.empty()) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto& [key, value] : report.table) {
            rows.push_back({{"grid", key.grid},
                            {"level", key.level},
                            {"coords", {key.coords[0], key.coords[1]}},
                            {"beta", value}});
        }
        j["table"] = std::move(rows);
    }
    return j.dump();
}

} // namespace bumplab
