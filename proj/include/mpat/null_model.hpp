#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mpat/pattern.hpp"

namespace mpat {

// Uniform random hypergraph on N nodes where each of the C(N,m) possible
// m-node hyperedges is present independently with probability p.
struct ModelParams {
  std::int64_t N = 0;
  int m = 0;
  double p = 0.0;
};

void validate(const ModelParams& params);

// c_i = C(N-m, m-i): number of candidate edges whose intersection with a
// fixed m-set is exactly a given i-subset.
double connection_exponent(std::int64_t N, int m, int i);

// p_i = 1 - (1-p)^{c_i}: probability that a fixed i-subset of the m focal
// nodes is covered by some hyperedge. Computed via expm1/log1p so tiny p
// keeps full precision.
double subset_connection_prob(const ModelParams& params, int i);

// log(p_i), stable for p_i near 0 and near 1.
double log_subset_connection_prob(const ModelParams& params, int i);

// The unique p with p_l = a, i.e. p = 1-(1-a)^{1/c_l}. Throws Domain when
// a is outside (0,1), Singular when c_l = 0.
double p_for_target(std::int64_t N, int m, int l, double a);

// log prevalence of pattern X under the model:
//   log gamma_X + sum_i [ x_i log p_i + y_i c_i log(1-p) ]
// (gamma term dropped when labelled). Returns -inf where the prevalence is 0.
double log_prevalence(const MPattern& x, const ModelParams& params,
                      bool labelled = false);

// Prevalence on the natural scale. The unlabelled value is computed as
// gamma(X) * exp(labelled log prevalence), so the factorization identity is
// exact in floating point.
double prevalence(const MPattern& x, const ModelParams& params,
                  bool labelled = false);

enum class TableKind { Analytic, MonteCarlo };

struct PrevalenceEntry {
  double value = 0.0;
  double stderr_ = 0.0;  // 0 for analytic entries
};

// Per-pattern probabilities (analytic) or frequencies (Monte Carlo) at one p,
// aligned with PatternBasis::get(params.m).
struct PrevalenceTable {
  ModelParams params;
  TableKind kind = TableKind::Analytic;
  bool labelled = false;
  std::vector<PrevalenceEntry> values;

  const PatternBasis& basis() const { return PatternBasis::get(params.m); }
};

PrevalenceTable analytic_table(const ModelParams& params,
                               bool labelled = false);

struct PrevalenceCurve {
  std::vector<double> p_grid;
  std::vector<PrevalenceTable> tables;
};

// Log-spaced grid from lo to hi inclusive, points_per_decade per decade.
std::vector<double> log_grid(double lo, double hi, int points_per_decade);

PrevalenceCurve analytic_curve(std::int64_t N, int m,
                               const std::vector<double>& grid,
                               bool labelled = false);

// Patterns achieving the maximum prevalence at >= 1 grid point; ties within
// relative 1e-12 all count. Intervals are maximal runs of consecutive grid
// points where the pattern is a maximizer.
struct ExtremeEntry {
  int pattern_index = -1;
  std::vector<std::pair<double, double>> intervals;
};

std::vector<ExtremeEntry> extreme_set(int m, std::int64_t N,
                                      const std::vector<double>& grid,
                                      bool labelled = false);

// Bisection root of P_a(p) - P_b(p) on [p_lo, p_hi] to relative tolerance
// 1e-10. Throws Bracket if the difference does not change sign.
double crossing_point(const MPattern& a, const MPattern& b, std::int64_t N,
                      double p_lo, double p_hi, bool labelled = false);

}  // namespace mpat
