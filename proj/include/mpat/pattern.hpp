#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpat/hypergraph.hpp"

namespace mpat {

// Isomorphism class of a simple hypergraph on m labelled slots. Edges are
// bit masks over slots 0..m-1 (bit i = slot i), stored ascending by numeric
// value. When canonical, the mask list is the minimum over all m! slot
// permutations under lexicographic comparison of the sorted lists.
struct MPattern {
  int m = 0;
  std::vector<std::uint32_t> edges;  // antichain of nonzero masks, ascending
  bool canonical = false;

  bool operator==(const MPattern&) const = default;
};

// Stable serialized key, e.g. "m=3:[0b011,0b100]" (format v1). Bijective
// with the canonical pattern.
using PatternId = std::string;

// Present-edge counts x_i and missing-subset counts y_i by size; index i in
// 1..m (index 0 unused). y_i counts size-i slot subsets contained in no edge.
struct PatternCounts {
  std::vector<int> x;
  std::vector<int> y;
};

// Canonical form of an antichain of slot masks. Throws Contract if the input
// is not an antichain (duplicates or containment), Capacity if m > 8.
MPattern canonicalize(int m, std::span<const std::uint32_t> masks);

// Convenience overload for subsets expressed as node lists over slots 0..m-1.
MPattern canonicalize_subsets(int m,
                              std::span<const std::vector<NodeId>> subsets);

// All m-patterns (including the empty one) in canonical form, ordered by
// (edge count, mask-list lexicographic). 1 <= m <= 5.
const std::vector<MPattern>& enumerate_patterns(int m);

// Combinatorial factor: number of distinct labelled edge sets isomorphic to
// X, i.e. m!/|Aut(X)|.
std::uint64_t gamma(const MPattern& x);

PatternCounts pattern_counts(const MPattern& x);

// Sufficient condition from the size-gap theorem: true iff there are sizes
// H, l with x_H > 0, y_{l+1} > 0 and H - l >= 2. (The condition is one-sided:
// the pattern must contain an edge at least two sizes above a missing one.
// A pattern with only larger missing sizes can still be extreme; false does
// not assert extremeness.)
bool not_extreme_in_limit(const MPattern& x);

PatternId pattern_id(const MPattern& x);
MPattern pattern_from_id(const std::string& id);

// Cached canonical pattern table plus ids/names for one m; shared by censuses
// and prevalence tables so entries align by index. m <= 5.
class PatternBasis {
 public:
  static const PatternBasis& get(int m);

  int m() const { return m_; }
  const std::vector<MPattern>& patterns() const { return patterns_; }
  const std::vector<PatternId>& ids() const { return ids_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::uint64_t>& gammas() const { return gammas_; }
  std::size_t size() const { return patterns_.size(); }

  // Index of a canonical pattern; throws Input if unknown.
  int index_of(const PatternId& id) const;
  int index_of(const MPattern& x) const { return index_of(pattern_id(x)); }

  int empty_index() const { return empty_idx_; }
  // Index of the single-m-edge (repeat collaboration) pattern.
  int repeat_index() const { return repeat_idx_; }
  // Index of the pure pattern with all C(m,k) k-edges.
  int pure_index(int k) const;

 private:
  explicit PatternBasis(int m);
  int m_;
  std::vector<MPattern> patterns_;
  std::vector<PatternId> ids_;
  std::vector<std::string> names_;
  std::vector<std::uint64_t> gammas_;
  std::vector<int> pure_idx_;
  int empty_idx_ = -1;
  int repeat_idx_ = -1;
};

// Fig-2 / appendix-style display names. Unique for m <= 4 (with -a/-b
// suffixes where two m=4 classes share a digit signature); the PatternId for
// m >= 5.
std::string pattern_name(const MPattern& x);

// Inverse of pattern_name for m <= 3 (names are unique only there).
// Throws Naming on unknown or malformed names.
MPattern parse_name(const std::string& s, int m);

}  // namespace mpat
