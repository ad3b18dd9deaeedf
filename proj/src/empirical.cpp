#include "qproc/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qproc/numeric.hpp"

namespace qproc {

double empirical_cdf(const Sample& sample, double x) {
  const auto& os = sample.order_stats;
  const auto it = std::upper_bound(os.begin(), os.end(), x);
  return static_cast<double>(it - os.begin()) / static_cast<double>(os.size());
}

double empirical_quantile(const Sample& sample, double t) {
  const auto& os = sample.order_stats;
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return os.back();
  return os[detail::quantile_index(os.size(), t) - 1];
}

double empirical_process(const Sample& sample, double t) {
  const double n = static_cast<double>(sample.n());
  return std::sqrt(n) * (empirical_cdf(sample, t) - t);
}

double quantile_process(const Sample& sample, double t) {
  const double n = static_cast<double>(sample.n());
  return std::sqrt(n) * (empirical_quantile(sample, t) - t);
}

double normed_quantile_process(const Sample& sample, const DistributionModel& model, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("normed_quantile_process: t outside (0,1)");
  const double n = static_cast<double>(sample.n());
  return std::sqrt(n) * (empirical_quantile(sample, t) - model.quantile(t)) /
         model.quantile_density(t);
}

std::vector<double> symmetric_grid(std::size_t count) {
  if (count < 3 || count % 2 == 0)
    throw std::invalid_argument("symmetric_grid: count must be odd and >= 3");
  std::vector<double> grid(count);
  const std::size_t half = count / 2;
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = (static_cast<double>(i) - static_cast<double>(half)) / static_cast<double>(half);
  }
  grid[half] = 0.0;
  return grid;
}

namespace {

void validate_s_grid(const std::vector<double>& s) {
  if (s.size() < 2) throw std::invalid_argument("increment_field: s grid too small");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!(s[i] > s[i - 1])) throw std::invalid_argument("increment_field: s grid not increasing");
  }
  const bool two_sided = s.front() == -1.0 && s.back() == 1.0;
  const bool one_sided = s.front() == 0.0 && s.back() == 1.0;
  if (!two_sided && !one_sided)
    throw std::invalid_argument("increment_field: s grid must span [-1,1] or [0,1]");
  if (std::find(s.begin(), s.end(), 0.0) == s.end())
    throw std::invalid_argument("increment_field: s grid must contain 0");
}

}  // namespace

IncrementField increment_field(const Sample& sample, const DistributionModel* model, double h,
                               double t, std::vector<double> s_grid, ProcessKind kind) {
  validate_s_grid(s_grid);
  if (!(h > 0.0 && h < 1.0))
    throw std::domain_error("increment_field: need 0 < h < 1 for a positive normalizer");
  if (kind == ProcessKind::normed_quantile) {
    if (model == nullptr)
      throw std::invalid_argument("increment_field: normed_quantile needs a model");
    const double lo = t + h * s_grid.front();
    const double hi = t + h * s_grid.back();
    if (!(lo > 0.0 && hi < 1.0))
      throw std::domain_error("increment_field: t + h s outside (0,1)");
  }

  const double norm = std::sqrt(2.0 * h * std::log(1.0 / h));
  auto process = [&](double u) {
    switch (kind) {
      case ProcessKind::empirical: return empirical_process(sample, u);
      case ProcessKind::quantile: return quantile_process(sample, u);
      default: return normed_quantile_process(sample, *model, u);
    }
  };

  IncrementField field;
  field.h = h;
  field.t = t;
  field.kind = kind;
  field.values.resize(s_grid.size());
  const double base = process(t);
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    field.values[i] = s_grid[i] == 0.0 ? 0.0 : (process(t + h * s_grid[i]) - base) / norm;
  }
  field.s_grid = std::move(s_grid);
  return field;
}

double bahadur_kiefer_gap(const Sample& sample) {
  const auto& os = sample.order_stats;
  const std::size_t n = os.size();
  if (os.front() < 0.0 || os.back() > 1.0)
    throw std::invalid_argument("bahadur_kiefer_gap: sample values must lie in [0,1]");
  const double sqrtn = std::sqrt(static_cast<double>(n));

  std::vector<double> breaks;
  breaks.reserve(2 * n + 2);
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  breaks.insert(breaks.end(), os.begin(), os.end());
  for (std::size_t i = 1; i < n; ++i) breaks.push_back(static_cast<double>(i) / n);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double best = 0.0;
  // Attained values at the breakpoints themselves.
  for (double t : breaks) {
    const double g = sqrtn * (empirical_cdf(sample, t) + empirical_quantile(sample, t) - 2.0 * t);
    best = std::max(best, std::abs(g));
  }
  // Between breakpoints both step functions are constant and the drift is
  // linear, so the sup over each closed piece sits at its ends; evaluating
  // with midpoint constants captures the one-sided limits.
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double m = a + 0.5 * (b - a);
    const double c = empirical_cdf(sample, m) + empirical_quantile(sample, m);
    best = std::max(best, std::abs(sqrtn * (c - 2.0 * a)));
    best = std::max(best, std::abs(sqrtn * (c - 2.0 * b)));
  }
  return best;
}

double normed_quantile_gap(const Sample& sample, const DistributionModel& model) {
  const std::size_t n = sample.n();
  const double nd = static_cast<double>(n);
  const double e1 = 25.0 * iterated_log(nd) / nd;
  if (!(e1 < 0.5)) throw std::domain_error("normed_quantile_gap: trimmed range is empty");
  const double lo = e1;
  const double hi = 1.0 - e1;
  const double sqrtn = std::sqrt(nd);
  const auto uniforms = recovered_uniform_order_stats(sample, model);
  const auto& os = sample.order_stats;

  // Gap on the i-th quantile interval ((i-1)/n, i/n], 1-indexed i.
  auto gap_at = [&](std::size_t i, double t) {
    const double b = sqrtn * (os[i - 1] - model.quantile(t)) / model.quantile_density(t);
    const double beta = sqrtn * (uniforms[i - 1] - t);
    return std::abs(b - beta);
  };

  double best = 0.0;
  const std::size_t i_from = detail::quantile_index(n, lo);
  const std::size_t i_to = detail::quantile_index(n, hi);
  for (std::size_t i = i_from; i <= i_to; ++i) {
    const double t_lo = std::max((static_cast<double>(i) - 1.0) / nd, lo);
    const double t_hi = std::min(static_cast<double>(i) / nd, hi);
    if (!(t_lo <= t_hi)) continue;
    best = std::max(best, gap_at(i, t_lo));
    best = std::max(best, gap_at(i, t_hi));
    // Interior stationary points: where the quantile residual vanishes and
    // where the quantile density turns.
    const double t_star = model.cdf(os[i - 1]);
    if (t_star > t_lo && t_star < t_hi) best = std::max(best, gap_at(i, t_star));
    if (0.5 > t_lo && 0.5 < t_hi) best = std::max(best, gap_at(i, 0.5));
  }
  const int fill = 1000;
  for (int j = 0; j <= fill; ++j) {
    const double t = lo + (hi - lo) * static_cast<double>(j) / fill;
    best = std::max(best, gap_at(detail::quantile_index(n, t), t));
  }
  return best;
}

}  // namespace qproc
