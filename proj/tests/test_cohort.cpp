#include <doctest.h>

#include <cmath>

#include "mpat/cohort.hpp"
#include "mpat/error.hpp"
#include "mpat/rng.hpp"

using namespace mpat;

TEST_CASE("covid_flag keyword matching") {
  CHECK(covid_flag("We study SARS-CoV-2 transmission dynamics in cities."));
  CHECK(covid_flag("the COVID19 pandemic"));
  CHECK(covid_flag("impacts of (COVID-19) on travel"));
  CHECK(covid_flag("covid."));
  CHECK(covid_flag("sars-cov2,"));
  CHECK_FALSE(covid_flag("the novel coronavirus outbreak"));
  CHECK_FALSE(covid_flag(""));
  CHECK_FALSE(covid_flag("covidious prose"));      // not a listed token
  CHECK_FALSE(covid_flag("precovid era"));          // token differs
}

namespace {

// Synthetic cohort: `months` months, `pool_per_month` records each, pattern
// indices drawn from a fixed categorical law; flags assigned by `flagger`.
template <typename Flagger>
std::vector<CohortRecord> synth_records(int months, int pool_per_month,
                                        std::uint64_t seed, Flagger flagger) {
  const auto& basis = PatternBasis::get(2);
  std::vector<double> law = {0.35, 0.3, 0.25, 0.1};
  REQUIRE(law.size() == basis.size());
  Rng rng(seed);
  std::vector<CohortRecord> out;
  for (int mo = 0; mo < months; ++mo) {
    for (int i = 0; i < pool_per_month; ++i) {
      CohortRecord r;
      r.paper_id = std::to_string(mo) + ":" + std::to_string(i);
      r.month = 2020 * 12 + mo;
      double u = rng.unit(), acc = 0;
      r.pattern_index = 0;
      for (std::size_t k = 0; k < law.size(); ++k) {
        acc += law[k];
        if (u < acc) {
          r.pattern_index = static_cast<int>(k);
          break;
        }
      }
      r.covid = flagger(rng, r);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("degenerate band: cohort equals the whole pool") {
  auto records = synth_records(3, 40, 1,
                               [](Rng&, const CohortRecord&) { return true; });
  auto band = resample_band(records, 2, 200, 9);
  for (const auto& e : band.entries) {
    CHECK(e.mean == doctest::Approx(e.observed));
    CHECK(e.p2_5 == e.observed);
    CHECK(e.p97_5 == e.observed);
    CHECK_FALSE(e.significant);
  }
}

TEST_CASE("replicate frequencies sum to one") {
  auto records = synth_records(4, 60, 2, [](Rng& rng, const CohortRecord&) {
    return rng.bernoulli(0.2);
  });
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    auto freq = resample_replicate(records, 2, 505, rep);
    double sum = 0;
    for (double f : freq) sum += f;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("band is deterministic and worker-independent") {
  auto records = synth_records(4, 60, 3, [](Rng& rng, const CohortRecord&) {
    return rng.bernoulli(0.25);
  });
  auto a = resample_band(records, 2, 500, 31, false, 1);
  auto b = resample_band(records, 2, 500, 31, false, 4);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].mean == b.entries[i].mean);
    CHECK(a.entries[i].p2_5 == b.entries[i].p2_5);
    CHECK(a.entries[i].p97_5 == b.entries[i].p97_5);
  }
}

TEST_CASE("band endpoints are ordered around the mean") {
  auto records = synth_records(5, 80, 4, [](Rng& rng, const CohortRecord&) {
    return rng.bernoulli(0.15);
  });
  auto band = resample_band(records, 2, 2000, 77);
  for (const auto& e : band.entries) {
    CHECK(e.p2_5 <= e.mean + 1e-12);
    CHECK(e.mean <= e.p97_5 + 1e-12);
  }
}

TEST_CASE("unbiased cohorts are covered about 95% of the time") {
  int hits = 0;
  const int trials = 120;
  for (int t = 0; t < trials; ++t) {
    auto records =
        synth_records(4, 120, 1000 + t, [](Rng& rng, const CohortRecord&) {
          return rng.bernoulli(0.25);
        });
    auto band = resample_band(records, 2, 600, derive_seed(42, t));
    if (!band.entries[0].significant) ++hits;  // focal pattern
  }
  // binomial(trials, 0.95): 4 sigma below the mean
  double mean = trials * 0.95;
  double sd = std::sqrt(trials * 0.95 * 0.05);
  CHECK(static_cast<double>(hits) >= mean - 4 * sd);
}

TEST_CASE("an injected 3x bias is flagged significant") {
  // covid cohort oversamples pattern 0 by 3x
  auto records = synth_records(4, 2000, 5, [](Rng& rng, const CohortRecord& r) {
    double base = 0.25;
    return rng.bernoulli(r.pattern_index == 0 ? 3 * base : base / 2);
  });
  auto band = resample_band(records, 2, 2000, 123);
  CHECK(band.entries[0].significant);
  CHECK(band.entries[0].observed > band.entries[0].p97_5);
}

TEST_CASE("input validation") {
  std::vector<CohortRecord> none;
  CHECK_THROWS_AS(resample_band(none, 2, 100, 1), Error);
  std::vector<CohortRecord> no_flag(3);
  for (auto& r : no_flag) r.pattern_index = 0;
  CHECK_THROWS_AS(resample_band(no_flag, 2, 100, 1), Error);
  std::vector<CohortRecord> bad(1);
  bad[0].pattern_index = 99;
  bad[0].covid = true;
  CHECK_THROWS_AS(resample_band(bad, 2, 100, 1), Error);
}
