#include "coverage_engine.hpp"

#include <bit>
#include <mutex>

#include "mpat/binom.hpp"
#include "mpat/error.hpp"
#include "mpat/parallel.hpp"

namespace mpat::detail {

namespace {

// Maximal elements of a closure/family bitmap over the 2^i-1 nonempty masks.
std::vector<std::uint32_t> maximal_masks(std::uint32_t bitmap, int i) {
  std::vector<std::uint32_t> fam;
  std::uint32_t full = (1u << i) - 1;
  for (std::uint32_t mu = 1; mu <= full; ++mu)
    if (bitmap >> (mu - 1) & 1) fam.push_back(mu);
  std::vector<std::uint32_t> out;
  for (std::uint32_t a : fam) {
    bool dominated = false;
    for (std::uint32_t b : fam)
      if (a != b && (a & ~b) == 0) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(a);
  }
  return out;
}

std::uint16_t pattern_index_of_family(const PatternBasis& basis,
                                      std::vector<std::uint32_t> masks) {
  MPattern c = canonicalize(basis.m(), masks);
  return static_cast<std::uint16_t>(basis.index_of(c));
}

StrataLuts build_luts(int m) {
  const PatternBasis& basis = PatternBasis::get(m);
  StrataLuts luts;
  luts.m = m;
  for (int i = 0; i <= std::min(m, 4); ++i) {
    std::uint32_t entries = 1u << ((1u << i) - 1);
    luts.dense[i].resize(entries);
    for (std::uint32_t b = 0; b < entries; ++b)
      luts.dense[i][b] = pattern_index_of_family(basis, maximal_masks(b, i));
  }
  if (m == 5) {
    // Every reachable 31-bit closure is the downward closure of one of the
    // labelled antichains on 5 slots; enumerate them directly.
    std::vector<std::uint32_t> sub_closure(1u << 5, 0);
    for (std::uint32_t mask = 1; mask < (1u << 5); ++mask) {
      std::uint32_t c = 0;
      for (std::uint32_t s = mask; s; s = (s - 1) & mask) c |= 1u << (s - 1);
      sub_closure[mask] = c;
    }
    // DFS over masks in increasing order, keeping the antichain property.
    std::vector<std::uint32_t> stack;
    auto rec = [&](auto&& self, std::uint32_t start) -> void {
      std::uint32_t closure = 0;
      for (std::uint32_t e : stack) closure |= sub_closure[e];
      luts.top5.emplace(closure, pattern_index_of_family(basis, stack));
      for (std::uint32_t e = start; e < (1u << 5); ++e) {
        bool ok = true;
        for (std::uint32_t f : stack)
          if ((e & ~f) == 0 || (f & ~e) == 0) {
            ok = false;
            break;
          }
        if (!ok) continue;
        stack.push_back(e);
        self(self, e + 1);
        stack.pop_back();
      }
    };
    rec(rec, 1);
  }
  return luts;
}

}  // namespace

const StrataLuts& StrataLuts::get(int m) {
  static std::array<StrataLuts, 6> cache;
  static std::array<std::once_flag, 6> flags;
  if (m < 1 || m > 5)
    fail(ErrorCategory::Capacity, "coverage tables support 1 <= m <= 5");
  std::call_once(flags[m], [m] { cache[m] = build_luts(m); });
  return cache[m];
}

CoverageEngine::CoverageEngine(int m, std::uint32_t n)
    : m_(m), n_(n), singles_(n), luts_(&StrataLuts::get(m)) {
  brow_.assign(m + 2, {});
  for (int k = 1; k <= m + 1; ++k) {
    brow_[k].resize(n + 1);
    for (std::uint32_t v = 0; v <= n; ++v)
      brow_[k][v] = binom_u64(v, k).value_or(0);
  }
  for (int k = 2; k <= m; ++k) levels_[k] = Bitset(brow_[k][n]);
}

std::uint64_t CoverageEngine::colex(const std::uint32_t* t, int k) const {
  std::uint64_t idx = 0;
  for (int j = 0; j < k; ++j) idx += brow_[j + 1][t[j]];
  return idx;
}

void CoverageEngine::mark_edge(std::span<const std::uint32_t> edge) {
  const int s = static_cast<int>(edge.size());
  for (std::uint32_t v : edge) singles_.set(v);
  std::array<int, 8> pos;
  for (int k = 2; k <= std::min(m_, s); ++k) {
    for (int j = 0; j < k; ++j) pos[j] = j;
    while (true) {
      std::uint64_t idx = 0;
      for (int j = 0; j < k; ++j) idx += brow_[j + 1][edge[pos[j]]];
      levels_[k].set(idx);
      int j = k - 1;
      while (j >= 0 && pos[j] == s - k + j) --j;
      if (j < 0) break;
      ++pos[j];
      for (int l = j + 1; l < k; ++l) pos[l] = pos[l - 1] + 1;
    }
  }
}

void CoverageEngine::mark_from_presence() {
  const Bitset& pres = levels_[m_];
  if (m_ == 1) {
    singles_ = pres;
    return;
  }
  if (m_ == 2) {
    std::uint64_t cursor = 0;
    for (std::uint32_t b = 1; b < n_; ++b) {
      bool any = false;
      for (std::uint32_t blk = 0; blk < b; blk += 64) {
        std::uint32_t take = std::min<std::uint32_t>(64, b - blk);
        std::uint64_t w = pres.load64(cursor + blk);
        if (take < 64) w &= (1ull << take) - 1;
        if (w) {
          any = true;
          singles_.or64(blk, w);
        }
      }
      if (any) singles_.set(b);
      cursor += b;
    }
    return;
  }
  if (m_ == 3) {
    std::uint64_t cursor = 0;
    for (std::uint32_t c = 2; c < n_; ++c) {
      for (std::uint32_t b = 1; b < c; ++b) {
        bool any = false;
        for (std::uint32_t blk = 0; blk < b; blk += 64) {
          std::uint32_t take = std::min<std::uint32_t>(64, b - blk);
          std::uint64_t w = pres.load64(cursor + blk);
          if (take < 64) w &= (1ull << take) - 1;
          if (w) {
            any = true;
            singles_.or64(blk, w);
            levels_[2].or64(brow_[2][b] + blk, w);
            levels_[2].or64(brow_[2][c] + blk, w);
          }
        }
        if (any) {
          singles_.set(b);
          singles_.set(c);
          levels_[2].set(b + brow_[2][c]);
        }
        cursor += b;
      }
    }
    return;
  }
  if (m_ == 4) {
    std::uint64_t cursor = 0;
    for (std::uint32_t d = 3; d < n_; ++d) {
      for (std::uint32_t c = 2; c < d; ++c) {
        for (std::uint32_t b = 1; b < c; ++b) {
          bool any = false;
          for (std::uint32_t blk = 0; blk < b; blk += 64) {
            std::uint32_t take = std::min<std::uint32_t>(64, b - blk);
            std::uint64_t w = pres.load64(cursor + blk);
            if (take < 64) w &= (1ull << take) - 1;
            if (w) {
              any = true;
              singles_.or64(blk, w);
              levels_[2].or64(brow_[2][b] + blk, w);
              levels_[2].or64(brow_[2][c] + blk, w);
              levels_[2].or64(brow_[2][d] + blk, w);
              levels_[3].or64(brow_[2][b] + brow_[3][c] + blk, w);
              levels_[3].or64(brow_[2][b] + brow_[3][d] + blk, w);
              levels_[3].or64(brow_[2][c] + brow_[3][d] + blk, w);
            }
          }
          if (any) {
            singles_.set(b);
            singles_.set(c);
            singles_.set(d);
            levels_[2].set(b + brow_[2][c]);
            levels_[2].set(b + brow_[2][d]);
            levels_[2].set(c + brow_[2][d]);
            levels_[3].set(b + brow_[2][c] + brow_[3][d]);
          }
          cursor += b;
        }
      }
    }
    return;
  }
  // m == 5: scan set bits, mark each edge's subsets the general way.
  std::array<std::uint32_t, 5> nodes;
  std::uint64_t cursor = 0;
  for (std::uint32_t e = 4; e < n_; ++e)
    for (std::uint32_t d = 3; d < e; ++d)
      for (std::uint32_t c = 2; c < d; ++c)
        for (std::uint32_t b = 1; b < c; ++b)
          for (std::uint32_t a = 0; a < b; ++a) {
            if (pres.test(cursor)) {
              nodes = {a, b, c, d, e};
              mark_edge(std::span<const std::uint32_t>(nodes.data(), 5));
            }
            ++cursor;
          }
}

int CoverageEngine::classify_active_subset(const std::uint32_t* t,
                                           int i) const {
  if (i == 0) return luts_->dense[0][0];
  std::uint32_t closure = 0;
  std::uint32_t top = (1u << i) - 1;
  std::array<std::uint32_t, 8> sel;
  for (std::uint32_t mu = 1; mu <= top; ++mu) {
    int pc = std::popcount(mu);
    if (pc == 1) {
      closure |= 1u << (mu - 1);
      continue;
    }
    // If the submask missing mu's lowest slot is uncovered, so is mu.
    std::uint32_t parent = mu & (mu - 1);
    if ((closure >> (parent - 1) & 1) == 0) continue;
    int k = 0;
    for (int bitp = 0; bitp < i; ++bitp)
      if (mu >> bitp & 1) sel[k++] = t[bitp];
    std::uint64_t idx = colex(sel.data(), pc);
    if (levels_[pc].test(idx)) closure |= 1u << (mu - 1);
  }
  return luts_->lookup(closure, i);
}

bool CoverageEngine::top_saturated() const {
  if (m_ < 2) return singles_.count() == n_;
  int k = m_ - 1;
  if (k == 1) return singles_.count() == n_;
  return levels_[k].count() == brow_[k][n_];
}

std::vector<std::uint32_t> CoverageEngine::active_ids() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < n_; ++v)
    if (singles_.test(v)) out.push_back(v);
  return out;
}

void CoverageEngine::classify_stratum(const std::vector<std::uint32_t>& active,
                                      int i, std::uint64_t mult,
                                      std::vector<std::uint64_t>& counts) const {
  if (i == 0) {
    counts[luts_->dense[0][0]] += mult;
    return;
  }
  const int na = static_cast<int>(active.size());
  if (i > na) return;
  std::array<int, 8> pos;
  std::array<std::uint32_t, 8> t;
  for (int j = 0; j < i; ++j) pos[j] = j;
  while (true) {
    for (int j = 0; j < i; ++j) t[j] = active[pos[j]];
    counts[classify_active_subset(t.data(), i)] += mult;
    int j = i - 1;
    while (j >= 0 && pos[j] == na - i + j) --j;
    if (j < 0) break;
    ++pos[j];
    for (int l = j + 1; l < i; ++l) pos[l] = pos[l - 1] + 1;
  }
}

void CoverageEngine::classify_all_dense_m2(
    std::vector<std::uint64_t>& counts) const {
  const auto& lut = luts_->dense[2];
  std::uint64_t cursor = 0;
  for (std::uint32_t b = 1; b < n_; ++b) {
    for (std::uint32_t blk = 0; blk < b; blk += 64) {
      std::uint32_t take = std::min<std::uint32_t>(64, b - blk);
      std::uint64_t w = levels_[2].load64(cursor + blk);
      for (std::uint32_t lane = 0; lane < take; ++lane)
        counts[lut[3u | ((w >> lane & 1) << 2)]]++;
    }
    cursor += b;
  }
}

void CoverageEngine::classify_all_dense_range(
    std::uint32_t top_lo, std::uint32_t top_hi,
    std::vector<std::uint64_t>& counts) const {
  // Classifies subsets whose largest element lies in [top_lo, top_hi).
  if (m_ == 3) {
    const auto& lut = luts_->dense[3];
    for (std::uint32_t c = std::max(2u, top_lo); c < top_hi; ++c) {
      std::uint64_t cursor = brow_[3][c];
      for (std::uint32_t b = 1; b < c; ++b) {
        std::uint32_t cons =
            1u | 2u | 8u |
            (static_cast<std::uint32_t>(levels_[2].test(b + brow_[2][c]))
             << 5);
        std::uint64_t base_ab = brow_[2][b], base_ac = brow_[2][c];
        for (std::uint32_t blk = 0; blk < b; blk += 64) {
          std::uint32_t take = std::min<std::uint32_t>(64, b - blk);
          std::uint64_t w_ab = levels_[2].load64(base_ab + blk);
          std::uint64_t w_ac = levels_[2].load64(base_ac + blk);
          std::uint64_t w_pr = levels_[3].load64(cursor + blk);
          for (std::uint32_t lane = 0; lane < take; ++lane) {
            std::uint32_t idx = cons | ((w_ab >> lane & 1) << 2) |
                                ((w_ac >> lane & 1) << 4) |
                                ((w_pr >> lane & 1) << 6);
            counts[lut[idx]]++;
          }
        }
        cursor += b;
      }
    }
    return;
  }
  // m == 4
  const auto& lut = luts_->dense[4];
  for (std::uint32_t d = std::max(3u, top_lo); d < top_hi; ++d) {
    std::uint64_t cursor = brow_[4][d];
    for (std::uint32_t c = 2; c < d; ++c) {
      std::uint32_t p_cd = levels_[2].test(c + brow_[2][d]);
      for (std::uint32_t b = 1; b < c; ++b) {
        std::uint32_t p_bc = levels_[2].test(b + brow_[2][c]);
        std::uint32_t p_bd = levels_[2].test(b + brow_[2][d]);
        std::uint32_t t_bcd =
            levels_[3].test(b + brow_[2][c] + brow_[3][d]);
        std::uint32_t cons = 1u | 2u | 8u | 128u | (p_bc << 5) | (p_bd << 9) |
                             (p_cd << 11) | (t_bcd << 13);
        std::uint64_t base_ab = brow_[2][b];
        std::uint64_t base_ac = brow_[2][c];
        std::uint64_t base_ad = brow_[2][d];
        std::uint64_t base_abc = brow_[2][b] + brow_[3][c];
        std::uint64_t base_abd = brow_[2][b] + brow_[3][d];
        std::uint64_t base_acd = brow_[2][c] + brow_[3][d];
        for (std::uint32_t blk = 0; blk < b; blk += 64) {
          std::uint32_t take = std::min<std::uint32_t>(64, b - blk);
          std::uint64_t w_ab = levels_[2].load64(base_ab + blk);
          std::uint64_t w_ac = levels_[2].load64(base_ac + blk);
          std::uint64_t w_ad = levels_[2].load64(base_ad + blk);
          std::uint64_t w_abc = levels_[3].load64(base_abc + blk);
          std::uint64_t w_abd = levels_[3].load64(base_abd + blk);
          std::uint64_t w_acd = levels_[3].load64(base_acd + blk);
          std::uint64_t w_pr = levels_[4].load64(cursor + blk);
          for (std::uint32_t lane = 0; lane < take; ++lane) {
            std::uint32_t idx = cons | ((w_ab >> lane & 1) << 2) |
                                ((w_ac >> lane & 1) << 4) |
                                ((w_abc >> lane & 1) << 6) |
                                ((w_ad >> lane & 1) << 8) |
                                ((w_abd >> lane & 1) << 10) |
                                ((w_acd >> lane & 1) << 12) |
                                ((w_pr >> lane & 1) << 14);
            counts[lut[idx]]++;
          }
        }
        cursor += b;
      }
    }
  }
}

void CoverageEngine::classify_all_dense(std::vector<std::uint64_t>& counts,
                                        int workers) const {
  if (n_ < static_cast<std::uint32_t>(m_)) return;
  if (m_ == 1) {
    std::uint64_t ones = singles_.count();
    counts[luts_->dense[1][1]] += ones;
    counts[luts_->dense[1][0]] += n_ - ones;
    return;
  }
  if (top_saturated()) {
    // Every closure is full except possibly the presence bit.
    std::uint32_t all = (1u << ((1u << m_) - 1)) - 1;
    std::uint32_t no_top = all & ~(1u << ((1u << m_) - 2));
    std::uint64_t present = levels_[m_].count();
    std::uint64_t total = brow_[m_][n_];
    if (m_ <= 4) {
      counts[luts_->dense[m_][all]] += present;
      counts[luts_->dense[m_][no_top]] += total - present;
    } else {
      counts[luts_->top5.at(all)] += present;
      counts[luts_->top5.at(no_top)] += total - present;
    }
    return;
  }
  if (m_ == 2) {
    classify_all_dense_m2(counts);
    return;
  }
  if (m_ == 5) {
    std::vector<std::uint32_t> all_ids(n_);
    for (std::uint32_t v = 0; v < n_; ++v) all_ids[v] = v;
    classify_stratum(all_ids, 5, 1, counts);
    return;
  }
  workers = resolve_workers(workers);
  if (workers <= 1 || n_ < 64) {
    classify_all_dense_range(0, n_, counts);
    return;
  }
  // Split by the top coordinate, balancing C(top, m-1) work per value.
  int chunks = workers * 4;
  std::vector<std::uint32_t> bounds{0};
  double total_work = static_cast<double>(brow_[m_][n_]);
  double acc = 0, step = total_work / chunks;
  for (std::uint32_t v = 0; v < n_; ++v) {
    acc += static_cast<double>(brow_[m_ - 1][v]);
    if (acc >= step * bounds.size() && v + 1 < n_) bounds.push_back(v + 1);
  }
  bounds.push_back(n_);
  std::vector<std::vector<std::uint64_t>> partial(
      bounds.size() - 1, std::vector<std::uint64_t>(counts.size(), 0));
  parallel_for(bounds.size() - 1, workers, [&](std::size_t i) {
    classify_all_dense_range(bounds[i], bounds[i + 1], partial[i]);
  });
  for (const auto& part : partial)
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
}

}  // namespace mpat::detail
