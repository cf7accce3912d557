#include <doctest.h>

#include <map>

#include "mpat/census.hpp"
#include "mpat/error.hpp"
#include "mpat/monte_carlo.hpp"
#include "mpat/pattern.hpp"
#include "mpat/rng.hpp"
#include "oracle.hpp"

using namespace mpat;

namespace {

Hypergraph fixture() {
  return Hypergraph(5, {{{0, 1, 2}, {}}, {{1, 2}, {}}, {{2, 3}, {}}, {{4}, {}}});
}

// Reference census: classify every subset through the core operations,
// bypassing the coverage-table engine entirely.
std::map<PatternId, std::uint64_t> census_by_subset_loop(const Hypergraph& h,
                                                         int m) {
  std::map<PatternId, std::uint64_t> counts;
  std::vector<NodeId> pick(m);
  std::vector<int> pos(m);
  for (int j = 0; j < m; ++j) pos[j] = j;
  if (h.num_nodes() < static_cast<std::uint32_t>(m)) return counts;
  while (true) {
    for (int j = 0; j < m; ++j) pick[j] = static_cast<NodeId>(pos[j]);
    counts[subset_pattern_id(h, pick)]++;
    int j = m - 1;
    while (j >= 0 && pos[j] == static_cast<int>(h.num_nodes()) - m + j) --j;
    if (j < 0) break;
    ++pos[j];
    for (int l = j + 1; l < m; ++l) pos[l] = pos[l - 1] + 1;
  }
  return counts;
}

Hypergraph random_hypergraph(Rng& rng, std::uint32_t n, int max_edges,
                             double density) {
  std::vector<HyperEdge> edges;
  std::uint64_t n_edges = 1 + rng.below(max_edges);
  for (std::uint64_t e = 0; e < n_edges; ++e) {
    std::vector<NodeId> nodes;
    for (std::uint32_t v = 0; v < n; ++v)
      if (rng.bernoulli(density)) nodes.push_back(v);
    if (nodes.empty()) nodes.push_back(static_cast<NodeId>(rng.below(n)));
    edges.push_back({nodes, {}});
  }
  return Hypergraph(n, edges);
}

}  // namespace

TEST_CASE("subset_pattern on the worked fixture") {
  Hypergraph h = fixture();
  std::vector<NodeId> t1 = {0, 1, 2};
  CHECK(pattern_name(subset_pattern(h, t1)) == "3^1-2^0-1^0");
  std::vector<NodeId> t2 = {2, 3, 4};
  CHECK(pattern_name(subset_pattern(h, t2)) == "3^0-2^1-1^1");
  // untouched subset -> empty pattern
  Hypergraph h2(9, {{{0, 1}, {}}});
  std::vector<NodeId> t3 = {5, 6, 7};
  CHECK(pattern_name(subset_pattern(h2, t3)) == "3^0-2^0-1^0");
}

TEST_CASE("census_all on the worked fixture (hand-derived distribution)") {
  Hypergraph h = fixture();
  auto census = census_all(h, 3);
  CHECK(census.total == 10);
  CHECK(census.mode == PatternCensus::Mode::Exhaustive);
  CHECK(census.count_of(pattern_id(parse_name("3^1-2^0-1^0", 3))) == 1);
  CHECK(census.count_of(pattern_id(parse_name("3^0-2^1-1^1", 3))) == 5);
  CHECK(census.count_of(pattern_id(parse_name("3^0-2^2-1^0", 3))) == 2);
  CHECK(census.count_of(pattern_id(parse_name("3^0-2^0-1^3", 3))) == 2);
  CHECK(census.count_of(pattern_id(parse_name("3^0-2^0-1^0", 3))) == 0);
  std::uint64_t sum = 0;
  for (auto& [id, c] : census.counts) sum += c;
  CHECK(sum == census.total);
}

TEST_CASE("census_all edge cases") {
  // edgeless graph: all mass on the empty pattern
  Hypergraph empty(6, {});
  auto c = census_all(empty, 3);
  CHECK(c.total == 20);
  CHECK(c.count_of(pattern_id(parse_name("3^0-2^0-1^0", 3))) == 20);

  // one m-edge on N = m nodes
  Hypergraph one(3, {{{0, 1, 2}, {}}});
  auto c2 = census_all(one, 3);
  CHECK(c2.total == 1);
  CHECK(c2.count_of(pattern_id(parse_name("3^1-2^0-1^0", 3))) == 1);

  // budget exceeded
  Hypergraph big(100, {});
  CHECK_THROWS_AS(census_all(big, 4, 1000), Error);
}

TEST_CASE("census engine agrees with the direct subset loop") {
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    std::uint32_t n = 6 + static_cast<std::uint32_t>(rng.below(7));
    Hypergraph h = random_hypergraph(rng, n, 10, 0.25);
    for (int m = 2; m <= 5; ++m) {
      if (n < static_cast<std::uint32_t>(m)) continue;
      auto fast = census_all(h, m);
      auto slow = census_by_subset_loop(h, m);
      std::uint64_t slow_total = 0;
      for (auto& [id, c] : slow) slow_total += c;
      CHECK(fast.total == slow_total);
      for (auto& [id, c] : fast.counts) {
        auto it = slow.find(id);
        CHECK(c == (it == slow.end() ? 0 : it->second));
      }
    }
  }
}

TEST_CASE("census_all for m = 6 matches the subset loop") {
  Rng rng(61);
  Hypergraph h = random_hypergraph(rng, 9, 8, 0.3);
  auto fast = census_all(h, 6);
  auto slow = census_by_subset_loop(h, 6);
  CHECK(fast.total == 84);  // C(9,6)
  for (auto& [id, c] : fast.counts) CHECK(c == slow[id]);
}

TEST_CASE("census worker count does not change results") {
  Rng rng(4242);
  Hypergraph h = random_hypergraph(rng, 40, 60, 0.08);
  auto c1 = census_all(h, 3, kDefaultBudget, 1);
  auto c4 = census_all(h, 3, kDefaultBudget, 4);
  CHECK(c1.counts == c4.counts);
}

TEST_CASE("census_sampled") {
  // p = 1 sample: every subset classifies as the repeat pattern
  auto h = sample_gnp(ModelParams{12, 3, 1.0}, 1);
  auto s = census_sampled(h, 3, 500, 7);
  CHECK(s.total == 500);
  CHECK(s.count_of(pattern_id(parse_name("3^1-2^0-1^0", 3))) == 500);

  // determinism: same seed, same counts; workers do not matter
  Hypergraph fix = fixture();
  auto a = census_sampled(fix, 3, 2000, 99, 1);
  auto b = census_sampled(fix, 3, 2000, 99, 4);
  CHECK(a.counts == b.counts);

  // frequencies within 4 binomial standard errors of the exhaustive census
  auto exact = census_all(fix, 3);
  for (auto& [id, cnt] : exact.counts) {
    double p = static_cast<double>(cnt) / static_cast<double>(exact.total);
    double se = std::sqrt(p * (1 - p) / 2000.0);
    double f = a.frequency_of(id);
    CHECK(std::abs(f - p) <= 4 * se + 1e-12);
  }
}

TEST_CASE("sampled census classifies subsets touching isolated nodes") {
  // nodes 5..9 are isolated; sampled subsets often include them
  Hypergraph h(10, {{{0, 1, 2}, {}}, {{1, 2}, {}}});
  auto s = census_sampled(h, 3, 4000, 5);
  auto exact = census_all(h, 3);
  for (auto& [id, cnt] : exact.counts) {
    double p = static_cast<double>(cnt) / static_cast<double>(exact.total);
    double se = std::sqrt(p * (1 - p) / 4000.0);
    CHECK(std::abs(s.frequency_of(id) - p) <= 4 * se + 1e-12);
  }
}
