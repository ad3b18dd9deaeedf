#include "qproc/spacings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qproc/numeric.hpp"

namespace qproc {

namespace {

std::vector<double> augmented_order_stats(const Sample& sample) {
  const auto& os = sample.order_stats;
  if (os.front() < 0.0 || os.back() > 1.0)
    throw std::invalid_argument("uniform spacings: sample values must lie in [0,1]");
  std::vector<double> aug;
  aug.reserve(os.size() + 2);
  aug.push_back(0.0);
  aug.insert(aug.end(), os.begin(), os.end());
  aug.push_back(1.0);
  return aug;
}

}  // namespace

std::vector<double> uniform_spacings(const Sample& sample, std::size_t k) {
  const std::size_t n = sample.n();
  if (k < 1 || k > n) throw std::out_of_range("uniform_spacings: k outside [1, n]");
  const auto aug = augmented_order_stats(sample);
  std::vector<double> out(n + 2 - k);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = aug[i + k] - aug[i];
  return out;
}

SpacingIndexBounds spacing_index_bounds(std::size_t n, std::size_t k) {
  if (n < 1) throw std::invalid_argument("spacing_index_bounds: n must be positive");
  if (k < 1 || k > n) throw std::out_of_range("spacing_index_bounds: k outside [1, n]");
  SpacingIndexBounds b;
  b.n = n;
  b.k = k;
  const double nd = static_cast<double>(n);
  b.e_n1 = 25.0 * iterated_log(nd) / nd;
  b.i1 = detail::ceil_scaled(nd, b.e_n1);
  b.i2 = detail::floor_scaled(nd, 1.0 - b.e_n1) - static_cast<std::int64_t>(k);
  if (b.i1 > b.i2) throw std::runtime_error("spacing_index_bounds: empty index range");
  return b;
}

std::vector<double> restricted_spacings(const Sample& sample, std::size_t k) {
  const auto b = spacing_index_bounds(sample.n(), k);
  const auto& os = sample.order_stats;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(b.i2 - b.i1 + 1));
  for (std::int64_t i = b.i1; i <= b.i2; ++i) {
    out.push_back(os[static_cast<std::size_t>(i + static_cast<std::int64_t>(k)) - 1] -
                  os[static_cast<std::size_t>(i) - 1]);
  }
  return out;
}

std::vector<SpacingMax> uniform_spacing_maxima(const Sample& sample, std::size_t d_max) {
  const std::size_t n = sample.n();
  if (d_max < 1 || d_max > n) throw std::out_of_range("uniform_spacing_maxima: d outside [1, n]");
  const auto aug = augmented_order_stats(sample);
  const double nd = static_cast<double>(n);
  std::vector<SpacingMax> out;
  out.reserve(d_max);
  for (std::size_t k = 1; k <= d_max; ++k) {
    const double target = static_cast<double>(k) / nd;
    double best = -1.0;
    std::size_t arg = 0;
    const std::size_t count = n + 2 - k;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = std::abs(aug[i + k] - aug[i] - target);
      if (v > best) { best = v; arg = i; }
    }
    out.push_back({k, arg, best});
  }
  return out;
}

std::vector<SpacingMax> restricted_spacing_maxima(const Sample& sample,
                                                  const DistributionModel& model,
                                                  std::size_t d_max) {
  const std::size_t n = sample.n();
  if (d_max < 1 || d_max > n) throw std::out_of_range("restricted_spacing_maxima: d outside [1, n]");
  const auto& os = sample.order_stats;
  const double nd = static_cast<double>(n);
  const double e1 = 25.0 * iterated_log(nd) / nd;
  const std::int64_t i1 = detail::ceil_scaled(nd, e1);
  const std::int64_t base = detail::floor_scaled(nd, 1.0 - e1);

  // f(X_(i)) (D - k/(n f(X_(i)))) = f(X_(i)) D - k/n, so one density
  // evaluation per index suffices.
  std::vector<double> weighted(os.size());
  const std::int64_t i_hi_any = base - 1;
  for (std::int64_t i = i1; i <= std::min<std::int64_t>(i_hi_any, static_cast<std::int64_t>(n)); ++i) {
    weighted[static_cast<std::size_t>(i) - 1] = model.density(os[static_cast<std::size_t>(i) - 1]);
  }

  std::vector<SpacingMax> out;
  for (std::size_t k = 1; k <= d_max; ++k) {
    const std::int64_t i2 = base - static_cast<std::int64_t>(k);
    if (i1 > i2) continue;
    const double target = static_cast<double>(k) / nd;
    double best = -1.0;
    std::size_t arg = 0;
    for (std::int64_t i = i1; i <= i2; ++i) {
      const std::size_t idx = static_cast<std::size_t>(i) - 1;
      const double v = std::abs(weighted[idx] * (os[idx + k] - os[idx]) - target);
      if (v > best) { best = v; arg = static_cast<std::size_t>(i); }
    }
    out.push_back({k, arg, best});
  }
  if (out.empty()) throw std::runtime_error("restricted_spacing_maxima: empty index range");
  return out;
}

double max_uniform_spacing_deviation(const Sample& sample, std::size_t d) {
  const auto maxima = uniform_spacing_maxima(sample, d);
  double best = 0.0;
  for (const auto& m : maxima) best = std::max(best, m.value);
  return best;
}

double max_spacing_deviation(const Sample& sample, const DistributionModel& model, std::size_t d) {
  const auto maxima = restricted_spacing_maxima(sample, model, d);
  double best = 0.0;
  for (const auto& m : maxima) best = std::max(best, m.value);
  return best;
}

double normalized_spacing_statistic(const Sample& sample, const DistributionModel* model, double h,
                                    SpacingStatKind kind) {
  if (!(h > 0.0 && h < 1.0))
    throw std::domain_error("normalized_spacing_statistic: need 0 < h < 1");
  const std::size_t n = sample.n();
  const double nd = static_cast<double>(n);
  const std::int64_t d = detail::ceil_scaled(nd, h);
  if (d < 1 || d > static_cast<std::int64_t>(n))
    throw std::out_of_range("normalized_spacing_statistic: ceil(n h) outside [1, n]");
  double deviation = 0.0;
  if (kind == SpacingStatKind::uniform_deviation) {
    deviation = max_uniform_spacing_deviation(sample, static_cast<std::size_t>(d));
  } else {
    if (model == nullptr)
      throw std::invalid_argument("normalized_spacing_statistic: restricted kind needs a model");
    deviation = max_spacing_deviation(sample, *model, static_cast<std::size_t>(d));
  }
  return std::sqrt(nd) * deviation / std::sqrt(2.0 * h * std::log(1.0 / h));
}

}  // namespace qproc
