#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mpat/census.hpp"
#include "mpat/hypergraph.hpp"
#include "mpat/pattern.hpp"

namespace mpat {

// A new m-node hyperedge together with the pattern its members formed
// strictly before the edge's timestamp.
struct FormationEvent {
  std::int64_t time = 0;
  std::uint32_t edge_index = 0;  // index into the source hypergraph
  std::vector<NodeId> nodes;
  PatternId pattern;
  int pattern_index = -1;  // into PatternBasis::get(m)
  std::map<std::string, bool> flags;
};

// For every edge of size exactly m (post-dedup) in a fully timestamped
// hypergraph, the maximal induced pattern of its node set computed against
// edges with strictly earlier time only. Events are emitted in (time,
// ingestion order); equal-timestamp edges do not see each other.
std::vector<FormationEvent> formation_patterns(const Hypergraph& h, int m);

enum class TimeUnit { MonthIndex, EpochSeconds };

// Absolute month index (year*12 + month-1) of a timestamp.
std::int64_t month_of(std::int64_t timestamp, TimeUnit unit);
std::string month_string(std::int64_t month_index);

// Per-month pattern frequencies among that month's events. Months with no
// events are omitted.
struct MonthlyRow {
  std::int64_t month = 0;
  std::uint64_t total = 0;
  std::vector<std::uint64_t> counts;  // aligned with the pattern universe
};

struct MonthlyTable {
  std::vector<PatternId> universe;
  std::vector<MonthlyRow> rows;  // ascending month
};

MonthlyTable monthly_frequencies(const std::vector<FormationEvent>& events,
                                 const std::vector<PatternId>& universe,
                                 TimeUnit unit);

}  // namespace mpat
