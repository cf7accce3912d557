#include "mpat/pattern.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "mpat/binom.hpp"
#include "mpat/error.hpp"

namespace mpat {

namespace {

std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

std::uint32_t permute_mask(std::uint32_t mask, std::span<const int> perm) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (mask >> i & 1) out |= 1u << perm[i];
  return out;
}

void check_antichain(int m, std::span<const std::uint32_t> masks) {
  if (m < 1) fail(ErrorCategory::Contract, "m must be >= 1");
  if (m > 8) fail(ErrorCategory::Capacity, "pattern slots limited to m <= 8");
  std::uint32_t full = (1u << m) - 1;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (masks[i] == 0 || (masks[i] & ~full))
      fail(ErrorCategory::Contract, "edge mask out of slot range");
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (i == j) continue;
      if ((masks[i] & ~masks[j]) == 0)
        fail(ErrorCategory::Contract,
             "edge set is not an antichain (duplicate or contained edge)");
    }
  }
}

}  // namespace

MPattern canonicalize(int m, std::span<const std::uint32_t> masks) {
  check_antichain(m, masks);
  std::vector<std::uint32_t> sorted(masks.begin(), masks.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> best = sorted, cur(sorted.size());
  do {
    for (std::size_t i = 0; i < sorted.size(); ++i)
      cur[i] = permute_mask(sorted[i], perm);
    std::sort(cur.begin(), cur.end());
    if (cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));

  return MPattern{m, std::move(best), true};
}

MPattern canonicalize_subsets(int m,
                              std::span<const std::vector<NodeId>> subsets) {
  std::vector<std::uint32_t> masks;
  masks.reserve(subsets.size());
  for (const auto& s : subsets) {
    std::uint32_t mask = 0;
    for (NodeId v : s) {
      if (static_cast<int>(v) >= m)
        fail(ErrorCategory::Contract, "subset node beyond slot range");
      mask |= 1u << v;
    }
    masks.push_back(mask);
  }
  return canonicalize(m, masks);
}

namespace {

// All labelled antichains of nonempty subsets of an m-set (including the
// empty family), by DFS over masks in increasing order.
void labelled_antichains_rec(const std::vector<std::uint32_t>& cands,
                             std::size_t start, std::vector<std::uint32_t>& cur,
                             std::vector<std::vector<std::uint32_t>>& out) {
  out.push_back(cur);
  for (std::size_t i = start; i < cands.size(); ++i) {
    bool ok = true;
    for (std::uint32_t e : cur) {
      if ((e & ~cands[i]) == 0 || (cands[i] & ~e) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    cur.push_back(cands[i]);
    labelled_antichains_rec(cands, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::uint32_t>> labelled_antichains(int m) {
  std::vector<std::uint32_t> cands;
  for (std::uint32_t e = 1; e < (1u << m); ++e) cands.push_back(e);
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  labelled_antichains_rec(cands, 0, cur, out);
  return out;
}

}  // namespace

const std::vector<MPattern>& enumerate_patterns(int m) {
  if (m < 1 || m > 5)
    fail(ErrorCategory::Capacity, "enumerate_patterns supports 1 <= m <= 5");
  static std::array<std::vector<MPattern>, 6> cache;
  static std::array<std::once_flag, 6> flags;
  std::call_once(flags[m], [m] {
    std::vector<MPattern> found;
    for (const auto& fam : labelled_antichains(m)) {
      MPattern c = canonicalize(m, fam);
      bool seen = false;
      for (const auto& p : found)
        if (p.edges == c.edges) {
          seen = true;
          break;
        }
      if (!seen) found.push_back(std::move(c));
    }
    std::sort(found.begin(), found.end(),
              [](const MPattern& a, const MPattern& b) {
                if (a.edges.size() != b.edges.size())
                  return a.edges.size() < b.edges.size();
                return a.edges < b.edges;
              });
    cache[m] = std::move(found);
  });
  return cache[m];
}

std::uint64_t gamma(const MPattern& x) {
  std::vector<int> perm(x.m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> ref(x.edges);
  std::sort(ref.begin(), ref.end());
  std::uint64_t aut = 0;
  std::vector<std::uint32_t> cur(ref.size());
  do {
    for (std::size_t i = 0; i < ref.size(); ++i)
      cur[i] = permute_mask(ref[i], perm);
    std::sort(cur.begin(), cur.end());
    if (cur == ref) ++aut;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return factorial(x.m) / aut;
}

PatternCounts pattern_counts(const MPattern& x) {
  PatternCounts c;
  c.x.assign(x.m + 1, 0);
  c.y.assign(x.m + 1, 0);
  for (std::uint32_t e : x.edges) c.x[std::popcount(e)]++;
  std::uint32_t full = (1u << x.m) - 1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    bool covered = false;
    for (std::uint32_t e : x.edges)
      if ((s & ~e) == 0) {
        covered = true;
        break;
      }
    if (!covered) c.y[std::popcount(s)]++;
  }
  return c;
}

bool not_extreme_in_limit(const MPattern& x) {
  PatternCounts c = pattern_counts(x);
  for (int h = 1; h <= x.m; ++h) {
    if (c.x[h] == 0) continue;
    for (int l1 = 1; l1 <= x.m; ++l1) {
      if (c.y[l1] == 0) continue;
      int l = l1 - 1;
      if (h - l >= 2) return true;
    }
  }
  return false;
}

PatternId pattern_id(const MPattern& x) {
  std::string s = "m=" + std::to_string(x.m) + ":[";
  for (std::size_t i = 0; i < x.edges.size(); ++i) {
    if (i) s += ',';
    s += "0b";
    for (int b = x.m - 1; b >= 0; --b) s += (x.edges[i] >> b & 1) ? '1' : '0';
  }
  s += ']';
  return s;
}

MPattern pattern_from_id(const std::string& id) {
  auto bad = [&]() -> void {
    fail(ErrorCategory::Format, "malformed pattern id: " + id);
  };
  if (id.rfind("m=", 0) != 0) bad();
  std::size_t colon = id.find(':');
  if (colon == std::string::npos) bad();
  int m = 0;
  try {
    m = std::stoi(id.substr(2, colon - 2));
  } catch (...) {
    bad();
  }
  if (m < 1 || m > 8) bad();
  if (colon + 1 >= id.size() || id[colon + 1] != '[' || id.back() != ']')
    bad();
  std::vector<std::uint32_t> masks;
  std::string body = id.substr(colon + 2, id.size() - colon - 3);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t end = body.find(',', pos);
    if (end == std::string::npos) end = body.size();
    std::string tok = body.substr(pos, end - pos);
    if (tok.size() != static_cast<std::size_t>(m) + 2 || tok.rfind("0b", 0) != 0)
      bad();
    std::uint32_t mask = 0;
    for (int i = 0; i < m; ++i) {
      char ch = tok[2 + i];
      if (ch != '0' && ch != '1') bad();
      if (ch == '1') mask |= 1u << (m - 1 - i);
    }
    masks.push_back(mask);
    pos = end + 1;
  }
  MPattern c = canonicalize(m, masks);
  if (pattern_id(c) != id)
    fail(ErrorCategory::Format, "pattern id is not in canonical form: " + id);
  return c;
}

PatternBasis::PatternBasis(int m) : m_(m) {
  patterns_ = enumerate_patterns(m);
  pure_idx_.assign(m + 1, -1);
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    const MPattern& p = patterns_[i];
    ids_.push_back(pattern_id(p));
    names_.push_back(pattern_name(p));
    gammas_.push_back(gamma(p));
    if (p.edges.empty()) empty_idx_ = static_cast<int>(i);
    if (p.edges.size() == 1 && p.edges[0] == (1u << m) - 1)
      repeat_idx_ = static_cast<int>(i);
    PatternCounts c = pattern_counts(p);
    for (int k = 1; k <= m; ++k) {
      auto full_k = [&] {
        for (int j = 1; j <= m; ++j)
          if (c.x[j] != (j == k ? static_cast<int>(*binom_u64(m, j)) : 0))
            return false;
        return true;
      };
      if (full_k()) pure_idx_[k] = static_cast<int>(i);
    }
  }
}

const PatternBasis& PatternBasis::get(int m) {
  if (m < 1 || m > 5)
    fail(ErrorCategory::Capacity, "pattern basis supports 1 <= m <= 5");
  static std::array<std::unique_ptr<PatternBasis>, 6> cache;
  static std::array<std::once_flag, 6> flags;
  std::call_once(flags[m],
                 [m] { cache[m].reset(new PatternBasis(m)); });
  return *cache[m];
}

int PatternBasis::index_of(const PatternId& id) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == id) return static_cast<int>(i);
  fail(ErrorCategory::Input, "unknown pattern id for m=" + std::to_string(m_) +
                                 ": " + id);
}

int PatternBasis::pure_index(int k) const {
  if (k < 1 || k > m_) fail(ErrorCategory::Input, "pure pattern size out of range");
  return pure_idx_[k];
}

}  // namespace mpat
