#include "mpat/monte_carlo.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <span>

#include "coverage_engine.hpp"
#include "mpat/binom.hpp"
#include "mpat/error.hpp"
#include "mpat/parallel.hpp"
#include "mpat/rng.hpp"

namespace mpat {

namespace {

// Bernoulli(p) bits over [0,total) in index order, via geometric gaps on the
// rarer symbol.
void sample_presence(double p, std::uint64_t total, Rng& rng, Bitset& out) {
  if (p <= 0.0) {
    out.fill(false);
    return;
  }
  if (p >= 1.0) {
    out.fill(true);
    return;
  }
  bool skip_ones = p <= 0.5;
  double q = skip_ones ? p : 1.0 - p;
  out.fill(!skip_ones);
  std::uint64_t pos = 0;
  while (pos < total) {
    std::uint64_t gap = rng.geometric_skip(q, total - pos);
    pos += gap;
    if (pos >= total) break;
    if (skip_ones)
      out.set(pos);
    else
      out.clear(pos);
    ++pos;
  }
}

std::uint64_t check_budget(const ModelParams& params, std::uint64_t budget) {
  validate(params);
  auto total = binom_u64(static_cast<std::uint64_t>(params.N),
                         static_cast<unsigned>(params.m));
  if (!total || *total > budget)
    fail(ErrorCategory::Capacity,
         "C(N,m) candidate edges exceed the sampling budget");
  return *total;
}

// Decode a colex subset index into ascending node ids.
void colex_decode(std::uint64_t idx, int m, std::vector<NodeId>& out) {
  out.resize(m);
  for (int k = m; k >= 1; --k) {
    // Largest v with C(v,k) <= idx.
    std::uint64_t lo = k - 1, hi = lo;
    for (std::uint64_t step = 1; ; step *= 2) {
      hi = lo + step;
      auto b = binom_u64(hi, k);
      if (!b || *b > idx) break;
      if (step > (1ull << 62)) break;
    }
    std::uint64_t v_lo = lo, v_hi = hi;
    while (v_lo + 1 < v_hi) {
      std::uint64_t mid = v_lo + (v_hi - v_lo) / 2;
      auto b = binom_u64(mid, k);
      if (b && *b <= idx)
        v_lo = mid;
      else
        v_hi = mid;
    }
    out[k - 1] = static_cast<NodeId>(v_lo);
    idx -= *binom_u64(v_lo, k);
  }
}

}  // namespace

Hypergraph sample_gnp(const ModelParams& params, std::uint64_t seed,
                      std::uint64_t budget) {
  std::uint64_t total = check_budget(params, budget);
  double expected = params.p * static_cast<double>(total);
  if (expected > static_cast<double>(budget))
    fail(ErrorCategory::Capacity,
         "expected edge count exceeds the sampling budget");
  Bitset presence(total);
  Rng rng(seed);
  sample_presence(params.p, total, rng, presence);
  std::vector<HyperEdge> edges;
  std::vector<NodeId> nodes;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (!presence.test(idx)) continue;
    colex_decode(idx, params.m, nodes);
    edges.push_back(HyperEdge{nodes, std::nullopt});
  }
  return Hypergraph(static_cast<std::uint32_t>(params.N), std::move(edges));
}

namespace {

// One replicate census of a fresh G^(m)(N,p) draw, counts aligned to the
// pattern basis.
void replicate_census(const ModelParams& params, Rng& rng,
                      std::vector<std::uint64_t>& counts) {
  const int m = params.m;
  const std::uint32_t n = static_cast<std::uint32_t>(params.N);
  detail::CoverageEngine engine(m, n);
  std::uint64_t total = *binom_u64(n, m);
  sample_presence(params.p, total, rng, engine.presence());
  engine.mark_from_presence();

  auto active = engine.active_ids();
  const std::uint32_t n_act = static_cast<std::uint32_t>(active.size());

  // Fully covered node set: the word loop over all C(n,m) subsets (with a
  // popcount shortcut once the (m-1)-level saturates).
  if (n_act == n) {
    engine.classify_all_dense(counts, 1);
    return;
  }

  // Some nodes are isolated, which bounds the edge count to O(n log n):
  // re-mark a compact engine over the covered nodes and pad the remaining
  // strata with isolated slots.
  std::vector<std::int32_t> g2l(n, -1);
  for (std::uint32_t i = 0; i < n_act; ++i) g2l[active[i]] = i;
  detail::CoverageEngine compact(m, n_act);
  {
    const Bitset& pres = engine.presence();
    const std::uint64_t* w = pres.words();
    std::uint64_t words = (total + 63) / 64;
    std::vector<NodeId> nodes;
    std::array<std::uint32_t, 8> local;
    for (std::uint64_t wi = 0; wi < words; ++wi) {
      std::uint64_t word = w[wi];
      while (word) {
        std::uint64_t idx = wi * 64 + std::countr_zero(word);
        word &= word - 1;
        colex_decode(idx, m, nodes);
        for (int j = 0; j < m; ++j)
          local[j] = static_cast<std::uint32_t>(g2l[nodes[j]]);
        compact.mark_edge(std::span<const std::uint32_t>(local.data(), m));
      }
    }
  }
  std::vector<std::uint32_t> compact_ids(n_act);
  for (std::uint32_t i = 0; i < n_act; ++i) compact_ids[i] = i;
  const std::uint64_t inactive = n - n_act;
  for (int i = 0; i <= m; ++i) {
    std::uint64_t mult = binom_u64(inactive, m - i).value_or(0);
    if (mult == 0) continue;
    if (i == m)
      compact.classify_all_dense(counts, 1);
    else
      compact.classify_stratum(compact_ids, i, mult, counts);
  }
}

}  // namespace

PrevalenceTable mc_prevalence(const ModelParams& params, int replicates,
                              std::uint64_t seed, int workers,
                              std::uint64_t budget) {
  if (replicates < 1) fail(ErrorCategory::Input, "replicates must be >= 1");
  std::uint64_t total = check_budget(params, budget);
  const PatternBasis& basis = PatternBasis::get(params.m);
  const std::size_t k = basis.size();

  std::vector<std::vector<double>> freqs(
      replicates, std::vector<double>(k, 0.0));
  parallel_for(replicates, workers, [&](std::size_t rep) {
    Rng rng(derive_seed(seed, rep));
    std::vector<std::uint64_t> counts(k, 0);
    replicate_census(params, rng, counts);
    for (std::size_t i = 0; i < k; ++i)
      freqs[rep][i] =
          static_cast<double>(counts[i]) / static_cast<double>(total);
  });

  PrevalenceTable t;
  t.params = params;
  t.kind = TableKind::MonteCarlo;
  t.labelled = false;
  t.values.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    double mean = 0.0;
    for (int r = 0; r < replicates; ++r) mean += freqs[r][i];
    mean /= replicates;
    double var = 0.0;
    for (int r = 0; r < replicates; ++r) {
      double d = freqs[r][i] - mean;
      var += d * d;
    }
    var = replicates > 1 ? var / (replicates - 1) : 0.0;
    t.values[i].value = mean;
    t.values[i].stderr_ = std::sqrt(var / replicates);
  }
  return t;
}

PrevalenceCurve mc_curve(std::int64_t N, int m, const std::vector<double>& grid,
                         int replicates, std::uint64_t seed, int workers,
                         std::uint64_t budget) {
  PrevalenceCurve curve;
  curve.p_grid = grid;
  curve.tables.resize(grid.size());
  parallel_for(grid.size(), workers, [&](std::size_t g) {
    ModelParams params{N, m, grid[g]};
    curve.tables[g] =
        mc_prevalence(params, replicates, derive_seed(seed, g), 1, budget);
  });
  return curve;
}

}  // namespace mpat
