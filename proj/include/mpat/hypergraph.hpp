#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpat {

using NodeId = std::uint32_t;

struct HyperEdge {
  std::vector<NodeId> nodes;          // strictly increasing after construction
  std::optional<std::int64_t> time;   // epoch seconds or month index
};

struct HypergraphStats {
  std::uint64_t duplicate_nodes_removed = 0;
  std::uint64_t empty_edges_dropped = 0;
};

// Node set plus an ordered multiset of hyperedges. Parallel edges are kept
// (empirical hypergraphs are not simple; repeats carry distinct timestamps).
// Immutable after construction; all read operations are safe to call from
// concurrent workers.
class Hypergraph {
 public:
  Hypergraph(std::uint32_t num_nodes, std::vector<HyperEdge> edges,
             std::vector<std::string> node_labels = {});

  std::uint32_t num_nodes() const { return num_nodes_; }
  const std::vector<HyperEdge>& edges() const { return edges_; }
  bool has_timestamps() const { return has_timestamps_; }

  // Original external ids; empty when the graph was built from dense ids.
  const std::vector<std::string>& node_labels() const { return labels_; }
  std::string label_of(NodeId v) const;

  // Indices into edges() of every edge containing v, ascending.
  const std::vector<std::uint32_t>& incident_edges(NodeId v) const;

  const HypergraphStats& stats() const { return stats_; }

 private:
  std::uint32_t num_nodes_;
  std::vector<HyperEdge> edges_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::uint32_t>> incidence_;
  HypergraphStats stats_;
  bool has_timestamps_ = false;
};

// Def-style operations on node subsets. `v_sub` must be strictly increasing
// and within range.

// One partial edge e∩V_I per edge with nonempty intersection, duplicates
// preserved, in edge order.
std::vector<std::vector<NodeId>> induced_subhypergraph(
    const Hypergraph& h, std::span<const NodeId> v_sub);

// The induced result with duplicates and dominated subsets removed: an
// antichain, sorted by (size, lexicographic).
std::vector<std::vector<NodeId>> maximal_induced_subhypergraph(
    const Hypergraph& h, std::span<const NodeId> v_sub);

// True iff no edge is contained in (or equal to) another distinct edge.
bool is_simple(std::span<const std::vector<NodeId>> edge_set);

// All nodes sharing at least one edge with v, excluding v itself. Sorted.
std::vector<NodeId> neighbors(const Hypergraph& h, NodeId v);

}  // namespace mpat
