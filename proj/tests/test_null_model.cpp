#include <doctest.h>

#include <cmath>

#include "mpat/error.hpp"
#include "mpat/null_model.hpp"
#include "mpat/rng.hpp"
#include "oracle.hpp"

using namespace mpat;

namespace {

oracle::Family to_family(const MPattern& p) {
  oracle::Family fam;
  for (std::uint32_t e : p.edges) {
    std::set<int> s;
    for (int b = 0; b < p.m; ++b)
      if (e >> b & 1) s.insert(b);
    fam.insert(std::move(s));
  }
  return fam;
}

}  // namespace

TEST_CASE("subset connection probability") {
  // i = m: c_m = 1, p_m = p
  for (double p : {0.0, 1e-8, 0.3, 1.0})
    CHECK(subset_connection_prob(ModelParams{50, 3, p}, 3) ==
          doctest::Approx(p).epsilon(1e-14));
  // N = m: c_i = 0 for i < m
  CHECK(subset_connection_prob(ModelParams{3, 3, 0.7}, 2) == 0.0);
  CHECK(subset_connection_prob(ModelParams{3, 3, 0.7}, 1) == 0.0);
  // calibrated point: N=50, m=3, i=2, p with p_2 = 1/2 (c_2 = 47)
  double p_half = 1.0 - std::pow(2.0, -1.0 / 47.0);
  CHECK(p_half == doctest::Approx(0.01464).epsilon(1e-3));
  CHECK(subset_connection_prob(ModelParams{50, 3, p_half}, 2) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("p_for_target inverts the connection probability") {
  double p = p_for_target(50, 3, 2, 0.5);
  CHECK(p == doctest::Approx(1.0 - std::pow(2.0, -1.0 / 47.0)).epsilon(1e-12));
  // round-trip at several targets
  for (double a : {0.25, 0.5, 0.9}) {
    for (auto [n, m, l] : {std::tuple<int, int, int>{100, 4, 2},
                           {500, 3, 1},
                           {40, 5, 4}}) {
      double pp = p_for_target(n, m, l, a);
      CHECK(subset_connection_prob(ModelParams{n, m, pp}, l) ==
            doctest::Approx(a).epsilon(1e-12));
    }
  }
  // the four p where p_k = 1/2 for N=100, m=4 (vertical-line values)
  for (int k = 1; k <= 4; ++k) {
    double ck = connection_exponent(100, 4, k);
    double expected = 1.0 - std::pow(2.0, -1.0 / ck);
    CHECK(p_for_target(100, 4, k, 0.5) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(p_for_target(50, 3, 2, 0.0), Error);
  CHECK_THROWS_AS(p_for_target(50, 3, 2, 1.0), Error);
  CHECK_THROWS_AS(p_for_target(3, 3, 2, 0.5), Error);  // c_l = 0
}

TEST_CASE("analytic prevalence basics") {
  const auto& basis = PatternBasis::get(3);
  // single m-edge has prevalence exactly p
  for (double p : {0.0, 1e-9, 0.2, 0.999, 1.0})
    for (std::int64_t n : {3, 10, 1000}) {
      double v = prevalence(basis.patterns()[basis.repeat_index()],
                            ModelParams{n, 3, p});
      CHECK(v == doctest::Approx(p).epsilon(1e-13));
    }
  // p = 0: all mass on the empty pattern
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double v = prevalence(basis.patterns()[i], ModelParams{50, 3, 0.0});
    if (static_cast<int>(i) == basis.empty_index())
      CHECK(v == 1.0);
    else
      CHECK(v == 0.0);
  }
  // labelled factorization is exact
  for (std::size_t i = 0; i < basis.size(); ++i) {
    ModelParams params{40, 3, 0.037};
    double unl = prevalence(basis.patterns()[i], params, false);
    double lab = prevalence(basis.patterns()[i], params, true);
    CHECK(unl == static_cast<double>(basis.gammas()[i]) * lab);
  }
}

TEST_CASE("analytic prevalence matches the exhaustive oracle at N=4") {
  auto oracle_map = oracle::exhaustive_prevalence(4, 3, 0.3);
  const auto& basis = PatternBasis::get(3);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    oracle::Family key =
        oracle::canonical_family(to_family(basis.patterns()[i]), 3);
    double expect = oracle_map.count(key) ? oracle_map.at(key) : 0.0;
    double got = prevalence(basis.patterns()[i], ModelParams{4, 3, 0.3});
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("normalization across random parameters") {
  Rng rng(99);
  for (int m = 2; m <= 4; ++m) {
    const auto& basis = PatternBasis::get(m);
    for (int trial = 0; trial < 5; ++trial) {
      std::int64_t n = m + static_cast<std::int64_t>(rng.below(200 - m));
      double p = rng.unit();
      double sum = 0.0;
      for (const auto& pat : basis.patterns())
        sum += prevalence(pat, ModelParams{n, m, p});
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("empty-pattern prevalence decreases in p; repeat increases") {
  const auto& basis = PatternBasis::get(3);
  auto grid = log_grid(1e-6, 1.0, 10);
  // log scale resolves the decrease long after the natural scale underflows
  double prev_empty = 1.0, prev_repeat = -1.0;
  for (double p : grid) {
    ModelParams params{50, 3, p};
    double e = log_prevalence(basis.patterns()[basis.empty_index()], params);
    double r = prevalence(basis.patterns()[basis.repeat_index()], params);
    CHECK(e < prev_empty);
    CHECK(r > prev_repeat);
    if (p == 1.0) CHECK(e == -std::numeric_limits<double>::infinity());
    prev_empty = e;
    prev_repeat = r;
  }
}

TEST_CASE("fixing p_l drives neighbors to 0 and 1 as N grows") {
  // l = 2, m = 3: p with p_2 = 1/2; p_3 -> 0 and p_1 -> 1 monotonically.
  // p_1 saturates to 1.0 in doubles quickly, so its approach is checked on
  // log(1 - p_1) = c_1 log(1-p), which must fall strictly.
  double last_p3 = 1.0, last_log_q1 = 0.0;
  for (std::int64_t n = 1000; n <= 100000; n *= 2) {
    double p = p_for_target(n, 3, 2, 0.5);
    double p3 = subset_connection_prob(ModelParams{n, 3, p}, 3);
    double log_q1 = connection_exponent(n, 3, 1) * std::log1p(-p);
    CHECK(p3 < last_p3);
    CHECK(log_q1 < last_log_q1);
    last_p3 = p3;
    last_log_q1 = log_q1;
  }
  CHECK(last_p3 < 1e-4);
  CHECK(last_log_q1 < std::log(1e-4));  // p_1 > 1 - 1e-4
}

TEST_CASE("equal-shape patterns: prevalence ratio approaches gamma ratio") {
  // m=8: linked pair (gamma 3*C(8,3)=168) vs parallel pair (3*C(8,4)=210),
  // each with all remaining 1-edges. Ratio P_linked/P_parallel =
  // (168/210) * p_1 <= 168/210, approaching it as N grows.
  MPattern linked = canonicalize(
      8, std::vector<std::uint32_t>{0b00000011, 0b00000110, 0b00001000,
                                    0b00010000, 0b00100000, 0b01000000,
                                    0b10000000});
  MPattern parallel = canonicalize(
      8, std::vector<std::uint32_t>{0b00000011, 0b00001100, 0b00010000,
                                    0b00100000, 0b01000000, 0b10000000});
  CHECK(gamma(linked) == 168);
  CHECK(gamma(parallel) == 210);
  double target = std::log(168.0 / 210.0);
  // The log ratio equals target + log(p_1): evaluate where p_1 = a. The
  // supremum over p is the gamma ratio, attained as p_1 -> 1.
  for (std::int64_t n : {1000, 10000, 100000}) {
    for (double a : {0.5, 0.9, 0.999}) {
      double p = p_for_target(n, 8, 1, a);
      ModelParams params{n, 8, p};
      double lr = log_prevalence(linked, params) -
                  log_prevalence(parallel, params);
      CHECK(lr <= target + 1e-9);
      CHECK(lr == doctest::Approx(target + std::log(a)).epsilon(1e-9));
    }
    double p = p_for_target(n, 8, 1, 1.0 - 1e-12);
    ModelParams params{n, 8, p};
    double lr = log_prevalence(linked, params) -
                log_prevalence(parallel, params);
    CHECK(lr == doctest::Approx(target).epsilon(1e-9));
  }
}

TEST_CASE("extreme_set finds the expected maximizers") {
  auto grid = log_grid(1e-12, 1.0, 25);
  // m=3, N large: empty pattern and all three pure patterns appear
  {
    const auto& basis = PatternBasis::get(3);
    auto ext = extreme_set(3, 10000, grid);
    std::set<int> found;
    for (const auto& e : ext) found.insert(e.pattern_index);
    CHECK(found.count(basis.empty_index()));
    for (int k = 1; k <= 3; ++k) CHECK(found.count(basis.pure_index(k)));
  }
  // m=4: the flagged 3-edge+solitary-1-edge class is absent at N=100, 1000
  {
    const auto& basis = PatternBasis::get(4);
    MPattern flagged =
        canonicalize(4, std::vector<std::uint32_t>{0b0111, 0b1000});
    int flagged_idx = basis.index_of(flagged);
    for (std::int64_t n : {100, 1000}) {
      auto ext = extreme_set(4, n, grid);
      for (const auto& e : ext) CHECK(e.pattern_index != flagged_idx);
    }
  }
  // labelled, m=4, N=10^4: only pure patterns and the empty pattern
  {
    const auto& basis = PatternBasis::get(4);
    auto ext = extreme_set(4, 10000, grid, true);
    std::set<int> allowed = {basis.empty_index()};
    for (int k = 1; k <= 4; ++k) allowed.insert(basis.pure_index(k));
    for (const auto& e : ext) CHECK(allowed.count(e.pattern_index));
    CHECK(ext.size() == allowed.size());
  }
}

TEST_CASE("crossing_point") {
  const auto& basis = PatternBasis::get(3);
  const MPattern& empty = basis.patterns()[basis.empty_index()];
  const MPattern& pure1 = basis.patterns()[basis.pure_index(1)];

  // identical patterns: no sign change anywhere
  CHECK_THROWS_AS(crossing_point(empty, empty, 50, 1e-6, 0.5), Error);

  // empty vs pure-1 at m=3, N=50: the crossing lies inside the grid
  // interval where the argmax switches between them
  double cross = crossing_point(empty, pure1, 50, 1e-6, 0.9);
  auto grid = log_grid(1e-6, 0.9, 50);
  double lo = 0, hi = 1;
  for (std::size_t gidx = 0; gidx + 1 < grid.size(); ++gidx) {
    ModelParams a{50, 3, grid[gidx]}, b{50, 3, grid[gidx + 1]};
    bool empty_wins_a =
        log_prevalence(empty, a) > log_prevalence(pure1, a);
    bool empty_wins_b =
        log_prevalence(empty, b) > log_prevalence(pure1, b);
    if (empty_wins_a && !empty_wins_b) {
      lo = grid[gidx];
      hi = grid[gidx + 1];
    }
  }
  CHECK(cross >= lo);
  CHECK(cross <= hi);

  // labelled pure-k vs one-(k+1)-edge family at moderate N: crossing at
  // p_{k+1} = 1/2 (here k=2, m=3: pure-2 vs the repeat pattern)
  const MPattern& pure2 = basis.patterns()[basis.pure_index(2)];
  const MPattern& repeat = basis.patterns()[basis.repeat_index()];
  double c = crossing_point(pure2, repeat, 2000, 1e-4, 0.95, true);
  double p3_at_c = subset_connection_prob(ModelParams{2000, 3, c}, 3);
  CHECK(p3_at_c == doctest::Approx(0.5).epsilon(1e-6));
}
