#include "mpat/hypergraph.hpp"

#include <algorithm>

#include "mpat/error.hpp"

namespace mpat {

Hypergraph::Hypergraph(std::uint32_t num_nodes, std::vector<HyperEdge> edges,
                       std::vector<std::string> node_labels)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      labels_(std::move(node_labels)) {
  if (!labels_.empty() && labels_.size() != num_nodes_)
    fail(ErrorCategory::Input, "node label count does not match num_nodes");

  std::size_t timestamped = 0;
  std::vector<HyperEdge> kept;
  kept.reserve(edges_.size());
  for (auto& e : edges_) {
    for (NodeId v : e.nodes) {
      if (v >= num_nodes_)
        fail(ErrorCategory::Input, "edge node id " + std::to_string(v) +
                                       " out of range (num_nodes=" +
                                       std::to_string(num_nodes_) + ")");
    }
    std::sort(e.nodes.begin(), e.nodes.end());
    auto last = std::unique(e.nodes.begin(), e.nodes.end());
    stats_.duplicate_nodes_removed +=
        static_cast<std::uint64_t>(e.nodes.end() - last);
    e.nodes.erase(last, e.nodes.end());
    if (e.nodes.empty()) {
      ++stats_.empty_edges_dropped;
      continue;
    }
    if (e.time.has_value()) ++timestamped;
    kept.push_back(std::move(e));
  }
  edges_ = std::move(kept);
  if (timestamped != 0 && timestamped != edges_.size())
    fail(ErrorCategory::Input,
         "timestamps must be present on all edges or none");
  has_timestamps_ = !edges_.empty() && timestamped == edges_.size();

  incidence_.assign(num_nodes_, {});
  for (std::uint32_t i = 0; i < edges_.size(); ++i)
    for (NodeId v : edges_[i].nodes) incidence_[v].push_back(i);
}

std::string Hypergraph::label_of(NodeId v) const {
  if (v < labels_.size()) return labels_[v];
  return std::to_string(v);
}

const std::vector<std::uint32_t>& Hypergraph::incident_edges(NodeId v) const {
  if (v >= num_nodes_)
    fail(ErrorCategory::Input, "node id out of range");
  return incidence_[v];
}

namespace {

void check_subset(const Hypergraph& h, std::span<const NodeId> v_sub) {
  if (v_sub.empty()) fail(ErrorCategory::Input, "node subset is empty");
  for (std::size_t i = 0; i < v_sub.size(); ++i) {
    if (v_sub[i] >= h.num_nodes())
      fail(ErrorCategory::Input, "subset node id out of range");
    if (i > 0 && v_sub[i] <= v_sub[i - 1])
      fail(ErrorCategory::Input, "node subset must be strictly increasing");
  }
}

bool size_lex_less(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::vector<std::vector<NodeId>> induced_subhypergraph(
    const Hypergraph& h, std::span<const NodeId> v_sub) {
  check_subset(h, v_sub);
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> tmp;
  for (const auto& e : h.edges()) {
    tmp.clear();
    std::set_intersection(e.nodes.begin(), e.nodes.end(), v_sub.begin(),
                          v_sub.end(), std::back_inserter(tmp));
    if (!tmp.empty()) out.push_back(tmp);
  }
  return out;
}

std::vector<std::vector<NodeId>> maximal_induced_subhypergraph(
    const Hypergraph& h, std::span<const NodeId> v_sub) {
  check_subset(h, v_sub);
  std::vector<std::vector<NodeId>> out;
  if (v_sub.size() <= 64) {
    // Bitmask path keyed to local indices of v_sub.
    std::vector<std::uint64_t> masks;
    for (const auto& e : h.edges()) {
      std::uint64_t m = 0;
      std::size_t j = 0;
      for (NodeId v : e.nodes) {
        while (j < v_sub.size() && v_sub[j] < v) ++j;
        if (j == v_sub.size()) break;
        if (v_sub[j] == v) m |= 1ull << j;
      }
      if (m) masks.push_back(m);
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    for (std::size_t i = 0; i < masks.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < masks.size() && !dominated; ++j)
        if (i != j && (masks[i] & ~masks[j]) == 0) dominated = true;
      if (dominated) continue;
      std::vector<NodeId> s;
      for (std::size_t b = 0; b < v_sub.size(); ++b)
        if (masks[i] >> b & 1) s.push_back(v_sub[b]);
      out.push_back(std::move(s));
    }
  } else {
    auto partial = induced_subhypergraph(h, v_sub);
    std::sort(partial.begin(), partial.end());
    partial.erase(std::unique(partial.begin(), partial.end()), partial.end());
    for (std::size_t i = 0; i < partial.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < partial.size() && !dominated; ++j)
        if (i != j && partial[i].size() <= partial[j].size() &&
            std::includes(partial[j].begin(), partial[j].end(),
                          partial[i].begin(), partial[i].end()))
          dominated = true;
      if (!dominated) out.push_back(partial[i]);
    }
  }
  std::sort(out.begin(), out.end(), size_lex_less);
  return out;
}

bool is_simple(std::span<const std::vector<NodeId>> edge_set) {
  for (std::size_t i = 0; i < edge_set.size(); ++i)
    for (std::size_t j = 0; j < edge_set.size(); ++j) {
      if (i == j) continue;
      if (edge_set[i].size() <= edge_set[j].size() &&
          std::includes(edge_set[j].begin(), edge_set[j].end(),
                        edge_set[i].begin(), edge_set[i].end()))
        return false;
    }
  return true;
}

std::vector<NodeId> neighbors(const Hypergraph& h, NodeId v) {
  if (v >= h.num_nodes()) fail(ErrorCategory::Input, "node id out of range");
  std::vector<NodeId> out;
  for (std::uint32_t ei : h.incident_edges(v))
    for (NodeId u : h.edges()[ei].nodes)
      if (u != v) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace mpat
