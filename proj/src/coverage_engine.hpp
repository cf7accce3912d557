#pragma once

// Internal census machinery shared by census.cpp and monte_carlo.cpp.
//
// A subset's maximal induced pattern depends only on the coverage predicate
// cov(T) = "some hyperedge contains T". The engine stores one bitset per
// subset size k in 2..m over a compact node index space [0,n): bit at the
// colexicographic index of a k-subset T says whether T is covered. Level m
// ("presence") is covered-ness of the classified m-subsets themselves;
// level 1 is the singles bitset. A subset's closure bitmap (bit mask-1 =
// cov of the slots selected by mask) feeds a lookup table that maps it to
// the canonical pattern index in PatternBasis.

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "mpat/bitset.hpp"
#include "mpat/pattern.hpp"

namespace mpat::detail {

// Closure-bitmap -> pattern-index tables for one m (<= 5): dense for strata
// of size i <= 4, hashed for the 31-bit i = 5 case. Built once, read-only.
struct StrataLuts {
  int m = 0;
  std::array<std::vector<std::uint16_t>, 5> dense;  // index i in 0..4
  std::unordered_map<std::uint32_t, std::uint16_t> top5;

  static const StrataLuts& get(int m);
  int lookup(std::uint32_t closure, int i) const {
    if (i <= 4) return dense[i][closure];
    return top5.at(closure);
  }
};

class CoverageEngine {
 public:
  // m in [1,5]; n = size of the compact node index space.
  CoverageEngine(int m, std::uint32_t n);

  int m() const { return m_; }
  std::uint32_t n() const { return n_; }

  Bitset& presence() { return levels_[m_]; }
  const Bitset& presence() const { return levels_[m_]; }
  Bitset& singles() { return singles_; }

  // General marking: edge given as strictly increasing ids in [0,n).
  // Sets singles and all k-subset coverage bits for k in 2..m.
  void mark_edge(std::span<const std::uint32_t> edge);

  // Uniform-m marking: derive levels 1..m-1 from the presence bitset.
  void mark_from_presence();

  // Colex index of a sorted k-subset.
  std::uint64_t colex(const std::uint32_t* t, int k) const;

  // Pattern index of a sorted subset of ACTIVE ids, |t| = i <= m. Slots
  // beyond i are treated as isolated (used for subsets touching inactive
  // nodes of the enclosing graph).
  int classify_active_subset(const std::uint32_t* t, int i) const;

  // All (m-1)-subsets covered (then every classified subset is either the
  // repeat pattern or the pure-(m-1) pattern).
  bool top_saturated() const;

  std::vector<std::uint32_t> active_ids() const;

  // Adds the pattern census of all m-subsets of [0,n) to counts (aligned to
  // PatternBasis::get(m)); requires every id active. Word-at-a-time loop for
  // m in 2..4, scalar otherwise.
  void classify_all_dense(std::vector<std::uint64_t>& counts,
                          int workers) const;

  // Census over subsets of the active list only, stratum size i, each
  // counted with multiplicity mult.
  void classify_stratum(const std::vector<std::uint32_t>& active, int i,
                        std::uint64_t mult,
                        std::vector<std::uint64_t>& counts) const;

 private:
  void classify_all_dense_m2(std::vector<std::uint64_t>& counts) const;
  void classify_all_dense_range(std::uint32_t top_lo, std::uint32_t top_hi,
                                std::vector<std::uint64_t>& counts) const;

  int m_;
  std::uint32_t n_;
  Bitset singles_;
  std::array<Bitset, 6> levels_;  // levels_[k] valid for k in 2..m
  std::vector<std::vector<std::uint64_t>> brow_;  // brow_[k][v] = C(v,k)
  const StrataLuts* luts_;
};

}  // namespace mpat::detail
