#pragma once

#include <cstdint>
#include <vector>

#include "mpat/census.hpp"
#include "mpat/hypergraph.hpp"
#include "mpat/null_model.hpp"

namespace mpat {

// One G^(m)(N,p) draw: each of the C(N,m) candidate m-edges is present
// independently with probability p. Candidates are visited in colex order
// via geometric gap skipping (over absences when p <= 1/2, over presences
// otherwise), which is distribution-equivalent to a per-edge Bernoulli sweep
// at any density. Deterministic for a fixed seed. Throws Capacity when the
// expected edge count exceeds the budget.
Hypergraph sample_gnp(const ModelParams& params, std::uint64_t seed,
                      std::uint64_t budget = kDefaultBudget);

// Mean frequency and standard error of every m-pattern over `replicates`
// independent draws, each classified over all C(N,m) subsets. Replicate r
// uses the generator derived from (seed, r); results do not depend on
// worker count.
PrevalenceTable mc_prevalence(const ModelParams& params, int replicates,
                              std::uint64_t seed, int workers = 1,
                              std::uint64_t budget = kDefaultBudget);

// mc_prevalence across a p grid; grid point g derives its seed from
// (seed, g). Grid points run in parallel.
PrevalenceCurve mc_curve(std::int64_t N, int m, const std::vector<double>& grid,
                         int replicates, std::uint64_t seed, int workers = 1,
                         std::uint64_t budget = kDefaultBudget);

}  // namespace mpat
