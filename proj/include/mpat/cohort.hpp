#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mpat/pattern.hpp"

namespace mpat {

// Case-insensitive token match against exactly {covid, covid19, covid-19,
// sars-cov-2, sars-cov2}: whitespace-split tokens with surrounding
// punctuation stripped (internal hyphens kept).
bool covid_flag(std::string_view abstract);

struct CohortRecord {
  std::string paper_id;
  std::int64_t month = 0;
  int pattern_index = -1;  // into PatternBasis::get(m)
  bool covid = false;
};

struct ResampleBandEntry {
  double mean = 0.0;
  double p2_5 = 0.0;
  double p97_5 = 0.0;
  double observed = 0.0;
  bool significant = false;  // observed outside [p2.5, p97.5]
};

struct ResampleBand {
  int m = 0;
  std::uint64_t replicates = 0;
  std::uint64_t cohort_size = 0;
  std::vector<ResampleBandEntry> entries;  // aligned with PatternBasis::get(m)
};

// Month-stratified resampling null: each replicate draws n_i records from
// month i's full pool (without replacement by default), where n_i is the
// month's flagged-record count; per-pattern frequencies are computed on the
// pooled resample. Band = empirical mean and nearest-rank 2.5/97.5
// percentiles over B replicates. Deterministic per seed, independent of
// worker count.
ResampleBand resample_band(const std::vector<CohortRecord>& records, int m,
                           std::uint64_t replicates, std::uint64_t seed,
                           bool with_replacement = false, int workers = 1);

// Frequencies of one replicate (exposed for coverage/property tests).
std::vector<double> resample_replicate(const std::vector<CohortRecord>& records,
                                       int m, std::uint64_t seed,
                                       std::uint64_t replicate_index,
                                       bool with_replacement = false);

}  // namespace mpat
