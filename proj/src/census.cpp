#include "mpat/census.hpp"

#include <algorithm>
#include <map>

#include "coverage_engine.hpp"
#include "mpat/binom.hpp"
#include "mpat/error.hpp"
#include "mpat/parallel.hpp"
#include "mpat/rng.hpp"

namespace mpat {

std::uint64_t PatternCensus::count_of(const PatternId& id) const {
  for (const auto& [pid, c] : counts)
    if (pid == id) return c;
  return 0;
}

double PatternCensus::frequency_of(const PatternId& id) const {
  if (total == 0) return 0.0;
  return static_cast<double>(count_of(id)) / static_cast<double>(total);
}

MPattern subset_pattern(const Hypergraph& h, std::span<const NodeId> v_sub) {
  if (v_sub.size() > 8)
    fail(ErrorCategory::Capacity, "subset patterns limited to m <= 8");
  auto maximal = maximal_induced_subhypergraph(h, v_sub);
  // Relabel to local slots.
  std::vector<std::vector<NodeId>> local(maximal.size());
  for (std::size_t i = 0; i < maximal.size(); ++i)
    for (NodeId v : maximal[i]) {
      auto it = std::lower_bound(v_sub.begin(), v_sub.end(), v);
      local[i].push_back(static_cast<NodeId>(it - v_sub.begin()));
    }
  return canonicalize_subsets(static_cast<int>(v_sub.size()), local);
}

PatternId subset_pattern_id(const Hypergraph& h,
                            std::span<const NodeId> v_sub) {
  return pattern_id(subset_pattern(h, v_sub));
}

namespace {

struct BuiltEngine {
  detail::CoverageEngine engine;
  std::vector<std::uint32_t> active;       // global ids, ascending
  std::vector<std::int32_t> global_to_local;  // -1 for inactive
};

// Coverage tables over the active (degree >= 1) nodes of h.
BuiltEngine build_engine(const Hypergraph& h, int m, std::uint64_t budget) {
  std::vector<std::uint32_t> active;
  std::vector<std::int32_t> g2l(h.num_nodes(), -1);
  for (std::uint32_t v = 0; v < h.num_nodes(); ++v)
    if (!h.incident_edges(v).empty()) {
      g2l[v] = static_cast<std::int32_t>(active.size());
      active.push_back(v);
    }
  std::uint64_t mark_ops = 0;
  for (const auto& e : h.edges()) {
    std::uint64_t s = e.nodes.size();
    for (int k = 2; k <= std::min<int>(m, static_cast<int>(s)); ++k)
      mark_ops += binom_u64(s, k).value_or(budget);
    if (mark_ops > 4 * std::max<std::uint64_t>(budget, kDefaultBudget))
      fail(ErrorCategory::Capacity,
           "edge subset marking exceeds the work budget");
  }
  BuiltEngine out{
      detail::CoverageEngine(m, static_cast<std::uint32_t>(active.size())),
      std::move(active), std::move(g2l)};
  std::vector<std::uint32_t> local;
  for (const auto& e : h.edges()) {
    local.clear();
    for (NodeId v : e.nodes)
      local.push_back(static_cast<std::uint32_t>(out.global_to_local[v]));
    out.engine.mark_edge(local);
  }
  return out;
}

PatternCensus census_from_counts(int m, PatternCensus::Mode mode,
                                 std::uint64_t total,
                                 const std::vector<std::uint64_t>& counts) {
  const PatternBasis& basis = PatternBasis::get(m);
  PatternCensus c;
  c.m = m;
  c.mode = mode;
  c.total = total;
  for (std::size_t i = 0; i < basis.size(); ++i)
    c.counts.emplace_back(basis.ids()[i], counts[i]);
  return c;
}

// Slow generic path for m in 6..8: per-subset classification with a memo on
// the local edge family.
PatternCensus census_all_large_m(const Hypergraph& h, int m,
                                 std::uint64_t budget) {
  const std::uint32_t n = h.num_nodes();
  auto total_opt = binom_u64(n, m);
  if (!total_opt || *total_opt > budget)
    fail(ErrorCategory::Capacity,
         "census budget exceeded; use census_sampled");
  std::map<std::vector<std::uint32_t>, PatternId> memo;
  std::map<PatternId, std::uint64_t> counts;
  std::vector<NodeId> sub(m);
  std::vector<int> pos(m);
  for (int j = 0; j < m; ++j) pos[j] = j;
  if (n < static_cast<std::uint32_t>(m))
    return PatternCensus{m, PatternCensus::Mode::Exhaustive, 0, {}};
  std::uint64_t total = 0;
  while (true) {
    for (int j = 0; j < m; ++j) sub[j] = static_cast<NodeId>(pos[j]);
    auto maximal = maximal_induced_subhypergraph(h, sub);
    std::vector<std::uint32_t> masks;
    for (const auto& s : maximal) {
      std::uint32_t mask = 0;
      for (NodeId v : s) {
        auto it = std::lower_bound(sub.begin(), sub.end(), v);
        mask |= 1u << (it - sub.begin());
      }
      masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end());
    auto it = memo.find(masks);
    if (it == memo.end())
      it = memo.emplace(masks, pattern_id(canonicalize(m, masks))).first;
    counts[it->second]++;
    ++total;
    int j = m - 1;
    while (j >= 0 && pos[j] == static_cast<int>(n) - m + j) --j;
    if (j < 0) break;
    ++pos[j];
    for (int l = j + 1; l < m; ++l) pos[l] = pos[l - 1] + 1;
  }
  PatternCensus c;
  c.m = m;
  c.mode = PatternCensus::Mode::Exhaustive;
  c.total = total;
  for (const auto& [id, cnt] : counts) c.counts.emplace_back(id, cnt);
  return c;
}

}  // namespace

PatternCensus census_all(const Hypergraph& h, int m, std::uint64_t budget,
                         int workers) {
  if (m < 1 || m > 8)
    fail(ErrorCategory::Capacity, "census supports 1 <= m <= 8");
  if (m > 5) return census_all_large_m(h, m, budget);
  const std::uint32_t n = h.num_nodes();
  auto total_opt = binom_u64(n, m);
  if (!total_opt || *total_opt > budget)
    fail(ErrorCategory::Capacity,
         "census of C(N,m) subsets exceeds the budget; use census_sampled");
  const std::uint64_t total = *total_opt;
  const PatternBasis& basis = PatternBasis::get(m);
  std::vector<std::uint64_t> counts(basis.size(), 0);
  if (total == 0)
    return census_from_counts(m, PatternCensus::Mode::Exhaustive, 0, counts);

  BuiltEngine built = build_engine(h, m, budget);
  const std::uint64_t n_act = built.active.size();
  std::vector<std::uint32_t> local_ids(n_act);
  for (std::uint32_t v = 0; v < n_act; ++v) local_ids[v] = v;
  for (int i = 0; i <= m; ++i) {
    std::uint64_t inactive = n - n_act;
    std::uint64_t mult = binom_u64(inactive, m - i).value_or(0);
    if (mult == 0) continue;
    if (i == m)
      built.engine.classify_all_dense(counts, workers);
    else
      built.engine.classify_stratum(local_ids, i, mult, counts);
  }
  return census_from_counts(m, PatternCensus::Mode::Exhaustive, total, counts);
}

PatternCensus census_sampled(const Hypergraph& h, int m, std::uint64_t samples,
                             std::uint64_t seed, int workers) {
  if (m < 1 || m > 5)
    fail(ErrorCategory::Capacity, "census_sampled supports 1 <= m <= 5");
  if (samples < 1) fail(ErrorCategory::Input, "samples must be >= 1");
  const std::uint32_t n = h.num_nodes();
  if (n < static_cast<std::uint32_t>(m))
    fail(ErrorCategory::Input, "hypergraph has fewer than m nodes");
  const PatternBasis& basis = PatternBasis::get(m);
  BuiltEngine built = build_engine(h, m, kDefaultBudget);

  const std::uint64_t chunk_size = 8192;
  const std::uint64_t n_chunks = (samples + chunk_size - 1) / chunk_size;
  std::vector<std::vector<std::uint64_t>> partial(
      n_chunks, std::vector<std::uint64_t>(basis.size(), 0));
  parallel_for(n_chunks, workers, [&](std::size_t chunk) {
    Rng rng(derive_seed(seed, chunk));
    std::uint64_t lo = chunk * chunk_size;
    std::uint64_t hi = std::min(samples, lo + chunk_size);
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t v = 0; v < n; ++v) pool[v] = v;
    std::array<std::uint32_t, 8> t;
    std::array<std::uint64_t, 8> swapped;
    for (std::uint64_t s = lo; s < hi; ++s) {
      // Partial Fisher-Yates draw of m distinct nodes, undone afterwards.
      for (int j = 0; j < m; ++j) {
        std::uint64_t r = j + rng.below(n - j);
        swapped[j] = r;
        std::swap(pool[j], pool[r]);
      }
      int cnt = 0;
      for (int j = 0; j < m; ++j) {
        std::int32_t loc = built.global_to_local[pool[j]];
        if (loc >= 0) t[cnt++] = static_cast<std::uint32_t>(loc);
      }
      std::sort(t.begin(), t.begin() + cnt);
      partial[chunk][built.engine.classify_active_subset(t.data(), cnt)]++;
      for (int j = m - 1; j >= 0; --j) std::swap(pool[j], pool[swapped[j]]);
    }
  });
  std::vector<std::uint64_t> counts(basis.size(), 0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += part[i];
  return census_from_counts(m, PatternCensus::Mode::Sampled, samples, counts);
}

}  // namespace mpat
