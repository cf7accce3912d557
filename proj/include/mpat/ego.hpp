#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpat/census.hpp"
#include "mpat/hypergraph.hpp"
#include "mpat/null_model.hpp"

namespace mpat {

// Hypergraph on the neighbors of v (v itself excluded). Every edge not
// containing v contributes its restriction to the neighbor set; edges
// containing v contribute nothing unless include_ego_edges is set, in which
// case their restriction minus v is kept. Nodes are reindexed to 0..N_e-1
// with the original labels retained.
Hypergraph ego_hypergraph(const Hypergraph& h, NodeId v,
                          bool include_ego_edges = false);

struct EgoSummary {
  NodeId ego = 0;
  std::uint32_t n_e = 0;   // ego size
  double p_e = 0.0;        // distinct m-node edges / C(N_e, m)
  PatternCensus census;    // exhaustive census at the analysis m
};

// One summary per node whose ego size lies in [size_min, size_max].
// Deterministic output order by ego node id.
std::vector<EgoSummary> sweep_egos(const Hypergraph& h, int m,
                                   std::uint32_t size_min = 10,
                                   std::uint32_t size_max = 50,
                                   bool include_ego_edges = false,
                                   int workers = 1);

// Log-binned rolling average. Segment j spans [10^(j/bpd), 10^((j+1)/bpd));
// its mean covers the points of segments j-1, j, j+1. Only segments whose
// own bin holds at least one point are emitted, so gaps in the data stay
// gaps in the curve.
struct BinnedCurve {
  std::vector<std::int64_t> segment;  // segment index j
  std::vector<double> center;         // 10^((j+0.5)/bpd)
  std::vector<double> mean;
  std::vector<std::uint64_t> count;   // points in the window
};

BinnedCurve rolling_average(const std::vector<std::pair<double, double>>& points,
                            int bins_per_decade = 10);

// Analytic table at each ego's (N_e, p_e).
std::vector<PrevalenceTable> model_counterpart(
    const std::vector<EgoSummary>& egos, int m);

// (P_data - P_model) / min(P_model, P_data); 0 when both are zero, signed
// infinity (finite = false) when exactly one is.
struct DeltaF {
  double value = 0.0;
  bool finite = true;
};

DeltaF delta_f(double p_data, double p_model);

// Dataset-level comparison: unweighted mean of per-ego frequencies vs
// unweighted mean of per-ego analytic prevalences, per pattern.
struct DatasetDelta {
  std::vector<double> p_data;   // aligned with PatternBasis::get(m)
  std::vector<double> p_model;
  std::vector<DeltaF> delta;
};

DatasetDelta dataset_delta(const std::vector<EgoSummary>& egos, int m);

}  // namespace mpat
