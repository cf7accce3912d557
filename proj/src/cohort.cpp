#include "mpat/cohort.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>

#include "mpat/error.hpp"
#include "mpat/parallel.hpp"
#include "mpat/rng.hpp"

namespace mpat {

bool covid_flag(std::string_view abstract) {
  static const std::array<std::string_view, 5> kTerms = {
      "covid", "covid19", "covid-19", "sars-cov-2", "sars-cov2"};
  std::size_t i = 0;
  std::string token;
  while (i < abstract.size()) {
    while (i < abstract.size() &&
           std::isspace(static_cast<unsigned char>(abstract[i])))
      ++i;
    std::size_t start = i;
    while (i < abstract.size() &&
           !std::isspace(static_cast<unsigned char>(abstract[i])))
      ++i;
    if (i == start) continue;
    std::size_t lo = start, hi = i;
    while (lo < hi && !std::isalnum(static_cast<unsigned char>(abstract[lo])))
      ++lo;
    while (hi > lo &&
           !std::isalnum(static_cast<unsigned char>(abstract[hi - 1])))
      --hi;
    if (lo == hi) continue;
    token.assign(abstract.substr(lo, hi - lo));
    for (char& ch : token)
      ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    for (std::string_view term : kTerms)
      if (token == term) return true;
  }
  return false;
}

namespace {

struct MonthPool {
  std::vector<int> patterns;  // pattern index per record in the month's pool
  std::uint64_t n_draw = 0;   // flagged records in this month
};

struct Pools {
  std::vector<MonthPool> months;  // only months with n_draw > 0
  std::uint64_t cohort_size = 0;
};

Pools build_pools(const std::vector<CohortRecord>& records, std::size_t k) {
  std::map<std::int64_t, MonthPool> by_month;
  std::map<std::int64_t, std::uint64_t> flagged;
  for (const auto& r : records) {
    if (r.pattern_index < 0 || static_cast<std::size_t>(r.pattern_index) >= k)
      fail(ErrorCategory::Input, "cohort record has an invalid pattern index");
    by_month[r.month].patterns.push_back(r.pattern_index);
    if (r.covid) flagged[r.month]++;
  }
  Pools pools;
  for (auto& [month, pool] : by_month) {
    auto it = flagged.find(month);
    if (it == flagged.end()) continue;
    pool.n_draw = it->second;
    if (pool.n_draw > pool.patterns.size())
      fail(ErrorCategory::Input,
           "month has more flagged records than pool records");
    pools.cohort_size += pool.n_draw;
    pools.months.push_back(std::move(pool));
  }
  if (pools.cohort_size == 0)
    fail(ErrorCategory::Input, "no flagged records in the cohort");
  return pools;
}

void one_replicate(const Pools& pools, Rng& rng,
                   bool with_replacement, std::vector<std::uint64_t>& counts,
                   std::vector<std::uint32_t>& scratch) {
  std::fill(counts.begin(), counts.end(), 0);
  for (const auto& month : pools.months) {
    const std::uint64_t pool_n = month.patterns.size();
    if (with_replacement) {
      for (std::uint64_t j = 0; j < month.n_draw; ++j)
        counts[month.patterns[rng.below(pool_n)]]++;
    } else {
      scratch.resize(pool_n);
      for (std::uint64_t v = 0; v < pool_n; ++v)
        scratch[v] = static_cast<std::uint32_t>(v);
      for (std::uint64_t j = 0; j < month.n_draw; ++j) {
        std::uint64_t r = j + rng.below(pool_n - j);
        std::swap(scratch[j], scratch[r]);
        counts[month.patterns[scratch[j]]]++;
      }
    }
  }
}

}  // namespace

std::vector<double> resample_replicate(const std::vector<CohortRecord>& records,
                                       int m, std::uint64_t seed,
                                       std::uint64_t replicate_index,
                                       bool with_replacement) {
  const PatternBasis& basis = PatternBasis::get(m);
  Pools pools = build_pools(records, basis.size());
  Rng rng(derive_seed(seed, replicate_index));
  std::vector<std::uint64_t> counts(basis.size(), 0);
  std::vector<std::uint32_t> scratch;
  one_replicate(pools, rng, with_replacement, counts, scratch);
  std::vector<double> freq(basis.size());
  for (std::size_t i = 0; i < freq.size(); ++i)
    freq[i] = static_cast<double>(counts[i]) /
              static_cast<double>(pools.cohort_size);
  return freq;
}

ResampleBand resample_band(const std::vector<CohortRecord>& records, int m,
                           std::uint64_t replicates, std::uint64_t seed,
                           bool with_replacement, int workers) {
  if (replicates < 1) fail(ErrorCategory::Input, "replicates must be >= 1");
  const PatternBasis& basis = PatternBasis::get(m);
  const std::size_t k = basis.size();
  Pools pools = build_pools(records, k);

  // B x k replicate frequencies, filled by replicate index.
  std::vector<std::vector<double>> freq(replicates,
                                        std::vector<double>(k, 0.0));
  parallel_for(replicates, workers, [&](std::size_t rep) {
    Rng rng(derive_seed(seed, rep));
    std::vector<std::uint64_t> counts(k, 0);
    std::vector<std::uint32_t> scratch;
    one_replicate(pools, rng, with_replacement, counts, scratch);
    for (std::size_t i = 0; i < k; ++i)
      freq[rep][i] = static_cast<double>(counts[i]) /
                     static_cast<double>(pools.cohort_size);
  });

  // Observed frequencies over the flagged records themselves.
  std::vector<std::uint64_t> observed(k, 0);
  for (const auto& r : records)
    if (r.covid) observed[r.pattern_index]++;

  auto nearest_rank = [&](std::vector<double>& sorted, double pct) {
    std::uint64_t rank = static_cast<std::uint64_t>(
        std::ceil(pct / 100.0 * static_cast<double>(replicates)));
    if (rank < 1) rank = 1;
    if (rank > replicates) rank = replicates;
    return sorted[rank - 1];
  };

  ResampleBand band;
  band.m = m;
  band.replicates = replicates;
  band.cohort_size = pools.cohort_size;
  band.entries.resize(k);
  std::vector<double> column(replicates);
  for (std::size_t i = 0; i < k; ++i) {
    double mean = 0.0;
    for (std::uint64_t r = 0; r < replicates; ++r) {
      column[r] = freq[r][i];
      mean += freq[r][i];
    }
    mean /= static_cast<double>(replicates);
    std::sort(column.begin(), column.end());
    ResampleBandEntry e;
    e.mean = mean;
    e.p2_5 = nearest_rank(column, 2.5);
    e.p97_5 = nearest_rank(column, 97.5);
    e.observed = static_cast<double>(observed[i]) /
                 static_cast<double>(pools.cohort_size);
    e.significant = e.observed < e.p2_5 || e.observed > e.p97_5;
    band.entries[i] = e;
  }
  return band;
}

}  // namespace mpat
