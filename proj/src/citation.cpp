#include "mpat/citation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>

#include "mpat/binom.hpp"
#include "mpat/error.hpp"
#include "mpat/rng.hpp"

namespace mpat {

std::pair<std::vector<CitePaper>, std::vector<CitePaper>> balanced_sample(
    const std::vector<CitePaper>& a, const std::vector<CitePaper>& b,
    std::uint64_t seed) {
  std::map<int, std::vector<std::size_t>> a_years, b_years;
  for (std::size_t i = 0; i < a.size(); ++i) a_years[a[i].year].push_back(i);
  for (std::size_t i = 0; i < b.size(); ++i) b_years[b[i].year].push_back(i);

  std::vector<CitePaper> out_a, out_b;
  Rng rng(derive_seed(seed, 0x62616c));
  for (auto& [year, ia] : a_years) {
    auto it = b_years.find(year);
    if (it == b_years.end()) continue;
    auto& ib = it->second;
    std::size_t k = std::min(ia.size(), ib.size());
    auto draw = [&](std::vector<std::size_t>& pool,
                    const std::vector<CitePaper>& src,
                    std::vector<CitePaper>& dst) {
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t r = j + rng.below(pool.size() - j);
        std::swap(pool[j], pool[r]);
        dst.push_back(src[pool[j]]);
      }
    };
    draw(ia, a, out_a);
    draw(ib, b, out_b);
  }
  return {std::move(out_a), std::move(out_b)};
}

RegressionModel fit_ols(const std::vector<CitePaper>& papers,
                        bool allow_pinv_fallback) {
  const std::size_t n = papers.size();
  if (n < 6)
    fail(ErrorCategory::Input, "OLS fit requires at least 6 papers");
  Eigen::MatrixXd x(n, 5);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PaperFeatures& f = papers[i].features;
    x(i, 0) = 1.0;
    x(i, 1) = f.age;
    x(i, 2) = f.mean_author_citations;
    x(i, 3) = f.mean_author_publications;
    x(i, 4) = f.mean_career_length;
    y(i) = papers[i].citations;
  }
  Eigen::MatrixXd xtx = x.transpose() * x;
  Eigen::VectorXd xty = x.transpose() * y;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
  Eigen::VectorXd w;
  if (lu.isInvertible()) {
    w = lu.solve(xty);
  } else if (allow_pinv_fallback) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    w = svd.solve(y);
  } else {
    fail(ErrorCategory::Numeric,
         "design matrix is rank deficient and the pseudo-inverse fallback "
         "is disabled");
  }
  RegressionModel model;
  model.intercept = w(0);
  for (int j = 0; j < 4; ++j) model.weights[j] = w(j + 1);
  return model;
}

FractionalErrors fractional_errors(const RegressionModel& model,
                                   const std::vector<CitePaper>& test) {
  if (test.empty()) fail(ErrorCategory::Input, "empty test set");
  FractionalErrors fe;
  std::vector<double> errs;
  errs.reserve(test.size());
  for (const auto& paper : test) {
    if (paper.citations == 0.0) {
      ++fe.n_excluded;
      continue;
    }
    double predicted = model.predict(paper.features);
    errs.push_back((paper.citations - predicted) / paper.citations);
  }
  if (errs.empty())
    fail(ErrorCategory::Statistic,
         "all test papers have zero citations; no fractional errors");
  fe.n_used = errs.size();
  for (double e : errs) fe.mu += e;
  fe.mu /= static_cast<double>(errs.size());
  double var = 0.0;
  for (double e : errs) var += (e - fe.mu) * (e - fe.mu);
  var = errs.size() > 1 ? var / static_cast<double>(errs.size() - 1) : 0.0;
  fe.sigma_mu = std::sqrt(var / static_cast<double>(errs.size()));
  return fe;
}

double z_score(double mu1, double sigma1, double mu2, double sigma2) {
  double denom2 = sigma1 * sigma1 + sigma2 * sigma2;
  if (denom2 == 0.0)
    fail(ErrorCategory::Statistic, "z-score undefined: both sigmas are zero");
  return std::abs(mu1 - mu2) / std::sqrt(denom2);
}

GroupComparison compare_structures(const std::vector<CitePaper>& papers,
                                   const std::vector<int>& class1_patterns,
                                   const std::vector<int>& class2_patterns,
                                   std::uint64_t seed,
                                   std::uint64_t min_test) {
  auto in_class = [](const CitePaper& p, const std::vector<int>& cls) {
    return std::find(cls.begin(), cls.end(), p.pattern_index) != cls.end();
  };
  std::vector<CitePaper> a, b;
  for (const auto& p : papers) {
    if (in_class(p, class1_patterns)) a.push_back(p);
    if (in_class(p, class2_patterns)) b.push_back(p);
  }
  GroupComparison cmp;
  cmp.seed = seed;
  cmp.n_selected1 = a.size();
  cmp.n_selected2 = b.size();

  auto [ba, bb] = balanced_sample(a, b, seed);
  cmp.n_balanced = ba.size();

  // Pool the balanced sides, shuffle, 80/20 split. Test papers fall into a
  // group by pattern membership, so identical class definitions give
  // identical groups (and z = 0) by construction.
  std::vector<CitePaper> pool;
  pool.reserve(ba.size() + bb.size());
  for (auto& p : ba) pool.push_back(std::move(p));
  for (auto& p : bb) pool.push_back(std::move(p));
  Rng rng(derive_seed(seed, 0x73706c69));
  for (std::size_t i = pool.size(); i > 1; --i)
    std::swap(pool[i - 1], pool[rng.below(i)]);

  std::size_t n_train = pool.size() * 8 / 10;
  std::vector<CitePaper> train;
  std::vector<CitePaper> test1, test2;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (i < n_train) {
      train.push_back(std::move(pool[i]));
      continue;
    }
    if (in_class(pool[i], class1_patterns)) test1.push_back(pool[i]);
    if (in_class(pool[i], class2_patterns)) test2.push_back(pool[i]);
  }
  cmp.n_train = train.size();
  cmp.n_test1 = test1.size();
  cmp.n_test2 = test2.size();
  if (test1.size() < min_test || test2.size() < min_test)
    fail(ErrorCategory::InsufficientData,
         "test split smaller than " + std::to_string(min_test) +
             " papers per class after balancing");

  RegressionModel model = fit_ols(train);
  cmp.group1 = fractional_errors(model, test1);
  cmp.group2 = fractional_errors(model, test2);
  cmp.z = z_score(cmp.group1.mu, cmp.group1.sigma_mu, cmp.group2.mu,
                  cmp.group2.sigma_mu);
  return cmp;
}

std::vector<int> default_first_time_classes(int m) {
  const PatternBasis& basis = PatternBasis::get(m);
  std::vector<int> out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    PatternCounts c = pattern_counts(basis.patterns()[i]);
    // Every author has history (y_1 = 0) but the full team never met
    // (x_m = 0).
    if (c.y[1] == 0 && c.x[m] == 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> default_repeat_classes(int m) {
  const PatternBasis& basis = PatternBasis::get(m);
  return {basis.repeat_index()};
}

}  // namespace mpat
