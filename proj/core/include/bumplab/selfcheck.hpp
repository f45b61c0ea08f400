#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bumplab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The full verification suite: operator oracle equivalence, sparseness and
/// sandwich properties, frozen numeric benchmarks, the theorem ratio checks
/// over the standard suite, and output determinism. Oracles are brute-force
/// enumerations independent of the library's fast paths. Deterministic given
/// `seed`.
std::vector<CheckResult> run_all_checks(std::uint64_t seed, unsigned threads);

/// Structural spot checks at a chosen resolution: level partitions, the
/// nested-or-disjoint trichotomy, containment-chain consistency and exact
/// mass aggregation on a random cascade.
std::vector<CheckResult> structural_invariant_checks(int depth, std::uint64_t seed);

} // namespace bumplab
