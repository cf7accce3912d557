#include "mpat/formation.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <ctime>

#include "mpat/error.hpp"

namespace mpat {

namespace {

// Coverage of the event's node set against the running history, via
// intersections of per-node incident-history lists (ascending edge ids).
class HistoryIndex {
 public:
  explicit HistoryIndex(std::uint32_t n) : lists_(n) {}

  void add_edge(std::uint32_t edge_id, const std::vector<NodeId>& nodes) {
    for (NodeId v : nodes) lists_[v].push_back(edge_id);
  }

  // True iff some history edge contains all of `nodes`.
  bool covers(const std::vector<const std::vector<std::uint32_t>*>& lists)
      const {
    // Galloping intersection, smallest list drives.
    const std::vector<std::uint32_t>* smallest = lists[0];
    for (auto* l : lists)
      if (l->size() < smallest->size()) smallest = l;
    for (std::uint32_t e : *smallest) {
      bool in_all = true;
      for (auto* l : lists) {
        if (l == smallest) continue;
        if (!std::binary_search(l->begin(), l->end(), e)) {
          in_all = false;
          break;
        }
      }
      if (in_all) return true;
    }
    return false;
  }

  const std::vector<std::uint32_t>& list_of(NodeId v) const {
    return lists_[v];
  }

 private:
  std::vector<std::vector<std::uint32_t>> lists_;
};

}  // namespace

std::vector<FormationEvent> formation_patterns(const Hypergraph& h, int m) {
  if (m < 1 || m > 8)
    fail(ErrorCategory::Capacity, "formation patterns support 1 <= m <= 8");
  if (!h.has_timestamps())
    fail(ErrorCategory::Input,
         "formation patterns require timestamps on every edge");
  const PatternBasis* basis = m <= 5 ? &PatternBasis::get(m) : nullptr;

  std::vector<std::uint32_t> order(h.edges().size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     return *h.edges()[a].time < *h.edges()[b].time;
                   });

  HistoryIndex history(h.num_nodes());
  std::vector<FormationEvent> events;
  std::size_t i = 0;
  std::vector<const std::vector<std::uint32_t>*> lists;
  std::array<std::uint32_t, 8> sel;
  while (i < order.size()) {
    std::int64_t t = *h.edges()[order[i]].time;
    std::size_t group_end = i;
    while (group_end < order.size() && *h.edges()[order[group_end]].time == t)
      ++group_end;
    // Classify this timestamp's events against strictly earlier history.
    for (std::size_t j = i; j < group_end; ++j) {
      const HyperEdge& e = h.edges()[order[j]];
      if (static_cast<int>(e.nodes.size()) != m) continue;
      std::uint32_t closure = 0;
      std::uint32_t top = (1u << m) - 1;
      for (std::uint32_t mu = 1; mu <= top; ++mu) {
        int pc = std::popcount(mu);
        if (pc >= 2) {
          std::uint32_t parent = mu & (mu - 1);
          if ((closure >> (parent - 1) & 1) == 0) continue;
        }
        int k = 0;
        for (int b = 0; b < m; ++b)
          if (mu >> b & 1) sel[k++] = e.nodes[b];
        lists.clear();
        bool empty_list = false;
        for (int s = 0; s < pc; ++s) {
          const auto& l = history.list_of(sel[s]);
          if (l.empty()) {
            empty_list = true;
            break;
          }
          lists.push_back(&l);
        }
        if (empty_list) continue;
        if (pc == 1 || history.covers(lists)) closure |= 1u << (mu - 1);
      }
      // Maximal covered masks form the pattern.
      std::vector<std::uint32_t> maximal;
      for (std::uint32_t mu = 1; mu <= top; ++mu) {
        if (!(closure >> (mu - 1) & 1)) continue;
        bool dominated = false;
        for (std::uint32_t nu = 1; nu <= top && !dominated; ++nu)
          if (nu != mu && (closure >> (nu - 1) & 1) && (mu & ~nu) == 0)
            dominated = true;
        if (!dominated) maximal.push_back(mu);
      }
      FormationEvent ev;
      ev.time = t;
      ev.edge_index = order[j];
      ev.nodes = e.nodes;
      MPattern pat = canonicalize(m, maximal);
      ev.pattern = pattern_id(pat);
      ev.pattern_index = basis ? basis->index_of(ev.pattern) : -1;
      events.push_back(std::move(ev));
    }
    // Then admit the whole group to history.
    for (std::size_t j = i; j < group_end; ++j)
      history.add_edge(order[j], h.edges()[order[j]].nodes);
    i = group_end;
  }
  return events;
}

std::int64_t month_of(std::int64_t timestamp, TimeUnit unit) {
  if (unit == TimeUnit::MonthIndex) return timestamp;
  // Civil calendar from days since the epoch (Howard Hinnant's algorithm).
  std::int64_t days = timestamp / 86400;
  if (timestamp % 86400 < 0) --days;
  std::int64_t z = days + 719468;
  std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  std::int64_t doe = z - era * 146097;
  std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  std::int64_t y = yoe + era * 400;
  std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  std::int64_t mp = (5 * doy + 2) / 153;
  std::int64_t month = mp < 10 ? mp + 3 : mp - 9;
  if (month <= 2) ++y;
  return y * 12 + (month - 1);
}

std::string month_string(std::int64_t month_index) {
  std::int64_t y = month_index / 12;
  std::int64_t m = month_index % 12;
  if (m < 0) {
    m += 12;
    --y;
  }
  std::string mm = std::to_string(m + 1);
  if (mm.size() < 2) mm = "0" + mm;
  return std::to_string(y) + "-" + mm;
}

MonthlyTable monthly_frequencies(const std::vector<FormationEvent>& events,
                                 const std::vector<PatternId>& universe,
                                 TimeUnit unit) {
  MonthlyTable table;
  table.universe = universe;
  std::map<PatternId, std::size_t> col;
  for (std::size_t i = 0; i < universe.size(); ++i) col[universe[i]] = i;
  std::map<std::int64_t, MonthlyRow> rows;
  for (const auto& ev : events) {
    std::int64_t month = month_of(ev.time, unit);
    auto [it, fresh] = rows.try_emplace(month);
    if (fresh) {
      it->second.month = month;
      it->second.counts.assign(universe.size(), 0);
    }
    auto cit = col.find(ev.pattern);
    if (cit == col.end())
      fail(ErrorCategory::Input,
           "event pattern not in the supplied universe: " + ev.pattern);
    it->second.counts[cit->second]++;
    it->second.total++;
  }
  for (auto& [month, row] : rows) table.rows.push_back(std::move(row));
  return table;
}

}  // namespace mpat
