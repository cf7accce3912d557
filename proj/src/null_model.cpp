#include "mpat/null_model.hpp"

#include <cmath>
#include <limits>

#include "mpat/binom.hpp"
#include "mpat/error.hpp"

namespace mpat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 - e^t) for t <= 0.
double log1mexp(double t) {
  if (t == 0.0) return -kInf;
  if (t < -0.6931471805599453)  // ln 2
    return std::log1p(-std::exp(t));
  return std::log(-std::expm1(t));
}

}  // namespace

void validate(const ModelParams& params) {
  if (params.m < 1) fail(ErrorCategory::Input, "model requires m >= 1");
  if (params.N < params.m)
    fail(ErrorCategory::Input, "model requires N >= m");
  if (!(params.p >= 0.0 && params.p <= 1.0))
    fail(ErrorCategory::Input, "model requires p in [0,1]");
}

double connection_exponent(std::int64_t N, int m, int i) {
  if (i < 1 || i > m) fail(ErrorCategory::Input, "subset size out of range");
  auto exact = binom_u64(static_cast<std::uint64_t>(N - m),
                         static_cast<unsigned>(m - i));
  if (exact) return static_cast<double>(*exact);
  return binom_d(static_cast<double>(N - m), static_cast<unsigned>(m - i));
}

double subset_connection_prob(const ModelParams& params, int i) {
  validate(params);
  double c = connection_exponent(params.N, params.m, i);
  if (c == 0.0) return 0.0;
  return -std::expm1(c * std::log1p(-params.p));
}

double log_subset_connection_prob(const ModelParams& params, int i) {
  validate(params);
  double c = connection_exponent(params.N, params.m, i);
  if (c == 0.0) return -kInf;
  return log1mexp(c * std::log1p(-params.p));
}

double p_for_target(std::int64_t N, int m, int l, double a) {
  if (!(a > 0.0 && a < 1.0))
    fail(ErrorCategory::Domain, "target probability must lie in (0,1)");
  double c = connection_exponent(N, m, l);
  if (c == 0.0)
    fail(ErrorCategory::Singular, "c_l = 0: no p yields the target");
  return -std::expm1(std::log1p(-a) / c);
}

double log_prevalence(const MPattern& x, const ModelParams& params,
                      bool labelled) {
  validate(params);
  if (x.m != params.m)
    fail(ErrorCategory::Input, "pattern slots do not match model m");
  PatternCounts c = pattern_counts(x);
  double log1p_neg_p = std::log1p(-params.p);  // -inf at p = 1
  double sum = labelled ? 0.0 : std::log(static_cast<double>(gamma(x)));
  for (int i = 1; i <= params.m; ++i) {
    double ci = connection_exponent(params.N, params.m, i);
    double t = ci * log1p_neg_p;  // log(1 - p_i); 0*inf guarded below
    if (ci == 0.0) t = 0.0;
    if (c.x[i] > 0) {
      double lp = log1mexp(t);  // log p_i
      if (lp == -kInf) return -kInf;
      sum += c.x[i] * lp;
    }
    if (c.y[i] > 0) {
      if (t == -kInf) return -kInf;
      sum += c.y[i] * t;
    }
  }
  return sum;
}

double prevalence(const MPattern& x, const ModelParams& params,
                  bool labelled) {
  double l = log_prevalence(x, params, true);
  double base = l == -kInf ? 0.0 : std::exp(l);
  if (labelled) return base;
  return static_cast<double>(gamma(x)) * base;
}

PrevalenceTable analytic_table(const ModelParams& params, bool labelled) {
  validate(params);
  const PatternBasis& basis = PatternBasis::get(params.m);
  PrevalenceTable t;
  t.params = params;
  t.kind = TableKind::Analytic;
  t.labelled = labelled;
  t.values.resize(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    t.values[i].value = prevalence(basis.patterns()[i], params, labelled);
  return t;
}

std::vector<double> log_grid(double lo, double hi, int points_per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || points_per_decade < 1)
    fail(ErrorCategory::Input, "log grid requires 0 < lo < hi and ppd >= 1");
  double span = std::log10(hi) - std::log10(lo);
  int n = static_cast<int>(std::ceil(span * points_per_decade - 1e-9));
  std::vector<double> grid;
  grid.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    double p = lo * std::pow(10.0, static_cast<double>(j) / points_per_decade);
    if (p > hi) p = hi;
    grid.push_back(p);
  }
  if (grid.back() != hi) grid.push_back(hi);
  return grid;
}

PrevalenceCurve analytic_curve(std::int64_t N, int m,
                               const std::vector<double>& grid,
                               bool labelled) {
  PrevalenceCurve c;
  c.p_grid = grid;
  for (double p : grid)
    c.tables.push_back(analytic_table(ModelParams{N, m, p}, labelled));
  return c;
}

std::vector<ExtremeEntry> extreme_set(int m, std::int64_t N,
                                      const std::vector<double>& grid,
                                      bool labelled) {
  const PatternBasis& basis = PatternBasis::get(m);
  const std::size_t k = basis.size();
  std::vector<std::vector<bool>> argmax(k,
                                        std::vector<bool>(grid.size(), false));
  std::vector<double> logp(k);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    ModelParams params{N, m, grid[g]};
    double best = -kInf;
    for (std::size_t i = 0; i < k; ++i) {
      logp[i] = log_prevalence(basis.patterns()[i], params, labelled);
      if (logp[i] > best) best = logp[i];
    }
    // Ties within relative 1e-12 on the natural scale.
    double cut = best + std::log1p(-1e-12);
    for (std::size_t i = 0; i < k; ++i)
      if (logp[i] >= cut) argmax[i][g] = true;
  }
  std::vector<ExtremeEntry> out;
  for (std::size_t i = 0; i < k; ++i) {
    ExtremeEntry e;
    e.pattern_index = static_cast<int>(i);
    std::size_t g = 0;
    while (g < grid.size()) {
      if (!argmax[i][g]) {
        ++g;
        continue;
      }
      std::size_t start = g;
      while (g < grid.size() && argmax[i][g]) ++g;
      e.intervals.emplace_back(grid[start], grid[g - 1]);
    }
    if (!e.intervals.empty()) out.push_back(std::move(e));
  }
  return out;
}

double crossing_point(const MPattern& a, const MPattern& b, std::int64_t N,
                      double p_lo, double p_hi, bool labelled) {
  if (!(p_lo > 0.0 && p_hi > p_lo && p_hi <= 1.0))
    fail(ErrorCategory::Bracket, "bracket must satisfy 0 < p_lo < p_hi <= 1");
  auto diff_sign = [&](double p) {
    ModelParams params{N, a.m, p};
    double la = log_prevalence(a, params, labelled);
    double lb = log_prevalence(b, params, labelled);
    if (la == lb) return 0;
    return la > lb ? 1 : -1;
  };
  int slo = diff_sign(p_lo);
  int shi = diff_sign(p_hi);
  if (slo == 0 || shi == 0 || slo == shi)
    fail(ErrorCategory::Bracket,
         "prevalence difference does not change sign over the bracket");
  double lo = p_lo, hi = p_hi;
  for (int it = 0; it < 400 && (hi - lo) > 1e-10 * hi; ++it) {
    double mid = std::sqrt(lo * hi);  // geometric: brackets often span decades
    if (mid <= lo || mid >= hi) mid = 0.5 * (lo + hi);
    int s = diff_sign(mid);
    if (s == 0) return mid;
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace mpat
