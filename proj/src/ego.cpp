#include "mpat/ego.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mpat/binom.hpp"
#include "mpat/error.hpp"
#include "mpat/parallel.hpp"

namespace mpat {

Hypergraph ego_hypergraph(const Hypergraph& h, NodeId v,
                          bool include_ego_edges) {
  std::vector<NodeId> v_e = neighbors(h, v);
  std::vector<std::int64_t> index(h.num_nodes(), -1);
  for (std::size_t i = 0; i < v_e.size(); ++i) index[v_e[i]] = i;

  std::vector<HyperEdge> edges;
  std::vector<NodeId> local;
  for (const auto& e : h.edges()) {
    bool has_ego = std::binary_search(e.nodes.begin(), e.nodes.end(), v);
    if (has_ego && !include_ego_edges) continue;
    local.clear();
    for (NodeId u : e.nodes)
      if (u != v && index[u] >= 0)
        local.push_back(static_cast<NodeId>(index[u]));
    if (local.empty()) continue;
    edges.push_back(HyperEdge{local, e.time});
  }
  std::vector<std::string> labels;
  labels.reserve(v_e.size());
  for (NodeId u : v_e) labels.push_back(h.label_of(u));
  const std::uint32_t n_e = static_cast<std::uint32_t>(v_e.size());
  return Hypergraph(n_e, std::move(edges), std::move(labels));
}

std::vector<EgoSummary> sweep_egos(const Hypergraph& h, int m,
                                   std::uint32_t size_min,
                                   std::uint32_t size_max,
                                   bool include_ego_edges, int workers) {
  std::vector<NodeId> selected;
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    std::size_t deg = neighbors(h, v).size();
    // egos below m carry no m-subsets and cannot be summarized
    if (deg >= size_min && deg <= size_max &&
        deg >= static_cast<std::size_t>(m))
      selected.push_back(v);
  }
  std::vector<EgoSummary> out(selected.size());
  parallel_for(selected.size(), workers, [&](std::size_t i) {
    NodeId v = selected[i];
    Hypergraph ego = ego_hypergraph(h, v, include_ego_edges);
    EgoSummary s;
    s.ego = v;
    s.n_e = ego.num_nodes();
    std::uint64_t denom = binom_checked(s.n_e, m);
    std::set<std::vector<NodeId>> distinct;
    for (const auto& e : ego.edges())
      if (static_cast<int>(e.nodes.size()) == m) distinct.insert(e.nodes);
    s.p_e = static_cast<double>(distinct.size()) / static_cast<double>(denom);
    s.census = census_all(ego, m);
    out[i] = std::move(s);
  });
  return out;
}

BinnedCurve rolling_average(
    const std::vector<std::pair<double, double>>& points,
    int bins_per_decade) {
  if (bins_per_decade < 1)
    fail(ErrorCategory::Input, "bins_per_decade must be >= 1");
  for (const auto& [p, v] : points)
    if (!(p > 0.0))
      fail(ErrorCategory::Input, "rolling average requires positive p values");
  BinnedCurve curve;
  if (points.empty()) return curve;

  auto segment_of = [&](double p) {
    return static_cast<std::int64_t>(
        std::floor(std::log10(p) * bins_per_decade));
  };
  std::vector<std::pair<std::int64_t, double>> tagged;
  tagged.reserve(points.size());
  std::set<std::int64_t> occupied;
  for (const auto& [p, v] : points) {
    std::int64_t s = segment_of(p);
    tagged.emplace_back(s, v);
    occupied.insert(s);
  }
  // Segments whose own bin holds a point; the mean covers the +-1 window.
  for (std::int64_t j : occupied) {
    double sum = 0.0;
    std::uint64_t n = 0;
    for (const auto& [s, v] : tagged)
      if (s >= j - 1 && s <= j + 1) {
        sum += v;
        ++n;
      }
    curve.segment.push_back(j);
    curve.center.push_back(
        std::pow(10.0, (static_cast<double>(j) + 0.5) / bins_per_decade));
    curve.mean.push_back(sum / static_cast<double>(n));
    curve.count.push_back(n);
  }
  return curve;
}

std::vector<PrevalenceTable> model_counterpart(
    const std::vector<EgoSummary>& egos, int m) {
  std::vector<PrevalenceTable> out;
  out.reserve(egos.size());
  for (const auto& ego : egos)
    out.push_back(analytic_table(
        ModelParams{static_cast<std::int64_t>(ego.n_e), m, ego.p_e}));
  return out;
}

DeltaF delta_f(double p_data, double p_model) {
  if (p_data < 0 || p_model < 0)
    fail(ErrorCategory::Input, "delta_f requires nonnegative frequencies");
  if (p_data == 0.0 && p_model == 0.0) return DeltaF{0.0, true};
  double lo = std::min(p_data, p_model);
  if (lo == 0.0) {
    double inf = std::numeric_limits<double>::infinity();
    return DeltaF{p_data > p_model ? inf : -inf, false};
  }
  return DeltaF{(p_data - p_model) / lo, true};
}

DatasetDelta dataset_delta(const std::vector<EgoSummary>& egos, int m) {
  const PatternBasis& basis = PatternBasis::get(m);
  DatasetDelta d;
  d.p_data.assign(basis.size(), 0.0);
  d.p_model.assign(basis.size(), 0.0);
  if (egos.empty()) {
    d.delta.assign(basis.size(), DeltaF{0.0, true});
    return d;
  }
  auto model = model_counterpart(egos, m);
  for (std::size_t e = 0; e < egos.size(); ++e) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      d.p_data[i] += egos[e].census.frequency_of(basis.ids()[i]);
      d.p_model[i] += model[e].values[i].value;
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    d.p_data[i] /= static_cast<double>(egos.size());
    d.p_model[i] /= static_cast<double>(egos.size());
    d.delta.push_back(delta_f(d.p_data[i], d.p_model[i]));
  }
  return d;
}

}  // namespace mpat
