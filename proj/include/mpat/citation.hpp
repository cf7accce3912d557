#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mpat/pattern.hpp"

namespace mpat {

// Controls regressed against citation count.
struct PaperFeatures {
  double age = 0.0;                      // years since publication
  double mean_author_citations = 0.0;
  double mean_author_publications = 0.0;
  double mean_career_length = 0.0;       // years since authors' first papers
};

struct CitePaper {
  std::string id;
  int year = 0;
  PaperFeatures features;
  double citations = 0.0;
  int pattern_index = -1;  // into PatternBasis::get(m)
};

struct RegressionModel {
  double intercept = 0.0;
  std::array<double, 4> weights{};

  double predict(const PaperFeatures& f) const {
    return intercept + weights[0] * f.age + weights[1] * f.mean_author_citations +
           weights[2] * f.mean_author_publications +
           weights[3] * f.mean_career_length;
  }
};

// Year-balanced subsampling: per year y, min(A(y), B(y)) papers drawn
// uniformly without replacement from each side, so the two outputs have
// identical year histograms.
std::pair<std::vector<CitePaper>, std::vector<CitePaper>> balanced_sample(
    const std::vector<CitePaper>& a, const std::vector<CitePaper>& b,
    std::uint64_t seed);

// Least squares on the (intercept + 4 feature) design via normal equations;
// falls back to an SVD pseudo-inverse when the normal matrix is rank
// deficient. With the fallback disabled rank deficiency raises Numeric.
RegressionModel fit_ols(const std::vector<CitePaper>& papers,
                        bool allow_pinv_fallback = true);

struct FractionalErrors {
  double mu = 0.0;
  double sigma_mu = 0.0;  // standard error of the mean
  std::uint64_t n_used = 0;
  std::uint64_t n_excluded = 0;  // papers with zero actual citations
};

// Mean fractional error (actual - predicted)/actual over papers with
// nonzero actual citations. Throws Statistic if everything is excluded.
FractionalErrors fractional_errors(const RegressionModel& model,
                                   const std::vector<CitePaper>& test);

// |mu1 - mu2| / sqrt(sigma1^2 + sigma2^2). Throws Statistic when both
// sigmas are zero.
double z_score(double mu1, double sigma1, double mu2, double sigma2);

struct GroupComparison {
  FractionalErrors group1;  // first-time collaborations
  FractionalErrors group2;  // repeat collaborations
  double z = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t n_selected1 = 0, n_selected2 = 0;  // before balancing
  std::uint64_t n_balanced = 0;                    // per side
  std::uint64_t n_train = 0, n_test1 = 0, n_test2 = 0;
};

// Full pipeline: select papers by pattern class, balance by year, shuffle,
// 80/20 split, fit on train, fractional errors per class on test, z-score.
// Throws InsufficientData when a class has < min_test test papers.
GroupComparison compare_structures(const std::vector<CitePaper>& papers,
                                   const std::vector<int>& class1_patterns,
                                   const std::vector<int>& class2_patterns,
                                   std::uint64_t seed,
                                   std::uint64_t min_test = 30);

// Default Table-1 classes: first-time collaborations with no first-time
// authors (every slot covered, no full edge) vs the repeat collaboration.
std::vector<int> default_first_time_classes(int m);
std::vector<int> default_repeat_classes(int m);

}  // namespace mpat
