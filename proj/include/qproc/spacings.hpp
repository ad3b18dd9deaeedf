#pragma once

#include <cstdint>
#include <vector>

#include "qproc/distributions.hpp"
#include "qproc/sample.hpp"

namespace qproc {

// Spacings of order statistics augmented with 0 and 1:
// U_(k+i) - U_(i) for i = 0..n+1-k. Sample values must lie in [0,1].
std::vector<double> uniform_spacings(const Sample& sample, std::size_t k);

// Index window that trims 25 log_2(n)/n of probability mass off each end:
// i1 = min{i : i/n >= e_n}, i2 = max{i : (i+k)/n <= 1 - e_n}.
struct SpacingIndexBounds {
  std::size_t n = 0;
  std::size_t k = 0;
  double e_n1 = 0.0;
  std::int64_t i1 = 0;
  std::int64_t i2 = 0;
};

// Throws when the window is empty (i1 > i2).
SpacingIndexBounds spacing_index_bounds(std::size_t n, std::size_t k);

// Raw-sample spacings X_(k+i) - X_(i) on the trimmed index window.
std::vector<double> restricted_spacings(const Sample& sample, std::size_t k);

// Per-k maxima, for the CLI and for batched evaluation across a bandwidth
// grid. argmax_i is the spacing start index (0-based over the augmented
// sequence for the uniform statistic, the 1-based order-statistic index for
// the restricted one).
struct SpacingMax {
  std::size_t k = 0;
  std::size_t argmax_i = 0;
  double value = 0.0;
};

std::vector<SpacingMax> uniform_spacing_maxima(const Sample& sample, std::size_t d_max);
std::vector<SpacingMax> restricted_spacing_maxima(const Sample& sample,
                                                  const DistributionModel& model,
                                                  std::size_t d_max);

// max over k <= d and all admissible i of |Delta_{i,n}(k) - k/n|.
double max_uniform_spacing_deviation(const Sample& sample, std::size_t d);

// max over k <= d and the trimmed window of
// f(X_(i)) |D_{i,n}(k) - k/(n f(X_(i)))|.
double max_spacing_deviation(const Sample& sample, const DistributionModel& model, std::size_t d);

enum class SpacingStatKind {
  uniform_deviation,     // augmented-spacing statistic
  restricted_deviation,  // density-weighted statistic on the trimmed window
};

// sqrt(n) * deviation(ceil(n h)) / sqrt(2 h log(1/h)). model may be null for
// the uniform kind.
double normalized_spacing_statistic(const Sample& sample, const DistributionModel* model, double h,
                                    SpacingStatKind kind);

}  // namespace qproc
