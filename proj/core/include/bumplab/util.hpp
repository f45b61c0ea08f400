#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bumplab {

/// Pairwise (cascade) summation. Deterministic for a fixed element order and
/// noticeably more accurate than a running sum on long arrays.
double pairwise_sum(std::span<const double> xs);

/// exp10-style float formatting used by the CSV writer: 17 significant digits,
/// locale independent.
std::string format_g17(double x);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results must be
/// written to disjoint slots by the callee; iteration order inside a worker is
/// ascending, so per-index work must not depend on global mutable state.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Splitmix-style stream derivation so that one u64 seed can feed many
/// independent generators reproducibly.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

} // namespace bumplab
