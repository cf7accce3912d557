#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpat/hypergraph.hpp"
#include "mpat/pattern.hpp"

namespace mpat {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

// Occurrence counts of m-patterns over node subsets.
struct PatternCensus {
  enum class Mode { Exhaustive, Sampled };

  int m = 0;
  Mode mode = Mode::Exhaustive;
  std::uint64_t total = 0;
  // Basis order for m <= 5 (zero-count entries included); canonical-id order
  // of observed patterns for m in 6..8.
  std::vector<std::pair<PatternId, std::uint64_t>> counts;

  std::uint64_t count_of(const PatternId& id) const;
  double frequency_of(const PatternId& id) const;
};

// Pattern of one m-subset: canonical form of its maximal induced
// subhypergraph relabelled to local slots. |v_sub| <= 8.
MPattern subset_pattern(const Hypergraph& h, std::span<const NodeId> v_sub);
PatternId subset_pattern_id(const Hypergraph& h, std::span<const NodeId> v_sub);

// Classify every m-subset of h's nodes. Throws Capacity when C(N,m) exceeds
// the budget (use census_sampled instead).
PatternCensus census_all(const Hypergraph& h, int m,
                         std::uint64_t budget = kDefaultBudget,
                         int workers = 1);

// Unbiased estimate from `samples` m-subsets drawn uniformly with
// replacement. Deterministic per seed, independent of worker count.
PatternCensus census_sampled(const Hypergraph& h, int m, std::uint64_t samples,
                             std::uint64_t seed, int workers = 1);

}  // namespace mpat
