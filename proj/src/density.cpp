#include "qproc/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qproc/empirical.hpp"

namespace qproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Kernel> make_builtin_kernels() {
  std::vector<Kernel> kernels;
  {
    Kernel k;
    k.name = "uniform";
    k.eval = [](double u) { return (u >= -0.5 && u <= 0.5) ? 1.0 : 0.0; };
    k.support_lo = -0.5;
    k.support_hi = 0.5;
    k.l2 = 1.0;
    k.monotone_breakpoints = {-0.5, 0.5};
    kernels.push_back(std::move(k));
  }
  {
    Kernel k;
    k.name = "epanechnikov";
    k.eval = [](double u) { return (u >= -1.0 && u <= 1.0) ? 0.75 * (1.0 - u * u) : 0.0; };
    k.support_lo = -1.0;
    k.support_hi = 1.0;
    k.l2 = 0.6;
    k.monotone_breakpoints = {-1.0, 0.0, 1.0};
    kernels.push_back(std::move(k));
  }
  {
    Kernel k;
    k.name = "triangular";
    k.eval = [](double u) { return (u >= -1.0 && u <= 1.0) ? 1.0 - std::abs(u) : 0.0; };
    k.support_lo = -1.0;
    k.support_hi = 1.0;
    k.l2 = 2.0 / 3.0;
    k.monotone_breakpoints = {-1.0, 0.0, 1.0};
    kernels.push_back(std::move(k));
  }
  return kernels;
}

double kernel_sum(const Sample& sample, const Kernel& kernel, double scale, double x) {
  // K((x - X)/scale) is nonzero only for X in [x - hi*scale, x - lo*scale].
  const auto& os = sample.order_stats;
  const double x_lo = x - kernel.support_hi * scale;
  const double x_hi = x - kernel.support_lo * scale;
  const auto first = std::lower_bound(os.begin(), os.end(), x_lo);
  const auto last = std::upper_bound(first, os.end(), x_hi);
  double sum = 0.0;
  for (auto it = first; it != last; ++it) sum += kernel.eval((x - *it) / scale);
  return sum;
}

}  // namespace

const std::vector<Kernel>& builtin_kernels() {
  static const std::vector<Kernel> kernels = make_builtin_kernels();
  return kernels;
}

const Kernel& kernel_by_name(std::string_view name) {
  for (const auto& k : builtin_kernels()) {
    if (k.name == name) return k;
  }
  throw std::invalid_argument("unknown kernel: " + std::string(name));
}

double nn_radius(const Sample& sample, double k, double x) {
  if (!(k > 0.0)) throw std::domain_error("nn_radius: k must be positive");
  const auto& os = sample.order_stats;
  const std::size_t n = os.size();
  const std::size_t kk = static_cast<std::size_t>(std::ceil(k));
  if (kk > n) throw std::out_of_range("nn_radius: ceil(k) exceeds n");

  // Walk outward from the insertion point, absorbing the nearer neighbor.
  std::size_t l = static_cast<std::size_t>(std::lower_bound(os.begin(), os.end(), x) - os.begin());
  std::size_t r = l;
  double dist = 0.0;
  for (std::size_t taken = 0; taken < kk; ++taken) {
    const double dl = l > 0 ? x - os[l - 1] : kInf;
    const double dr = r < n ? os[r] - x : kInf;
    if (dl <= dr) { dist = dl; --l; } else { dist = dr; ++r; }
  }
  return 2.0 * dist;
}

double nn_density(const Sample& sample, const Kernel& kernel, double k, double x) {
  const double radius = nn_radius(sample, k, x);
  if (radius == 0.0) throw std::runtime_error("nn_density: degenerate radius (ties at x)");
  return kernel_sum(sample, kernel, radius, x) /
         (static_cast<double>(sample.n()) * radius);
}

double kernel_density(const Sample& sample, const Kernel& kernel, double h, double x) {
  if (!(h > 0.0)) throw std::domain_error("kernel_density: h must be positive");
  return kernel_sum(sample, kernel, h, x) / (static_cast<double>(sample.n()) * h);
}

std::pair<double, double> empirical_interval(const Sample& sample, double t1, double t2) {
  if (!(0.0 < t1 && t1 < t2 && t2 < 1.0))
    throw std::domain_error("empirical_interval: need 0 < t1 < t2 < 1");
  return {empirical_quantile(sample, t1), empirical_quantile(sample, t2)};
}

namespace {

CenteredStatResult centered_statistic(std::span<const Sample> replicates,
                                      std::span<const double> x_grid,
                                      const std::function<double(const Sample&, double)>& estimate,
                                      const std::function<double(double)>& normalizer,
                                      double scale) {
  const std::size_t reps = replicates.size();
  if (reps < 2) throw std::invalid_argument("centered statistic: need at least 2 replicates");
  const std::size_t n0 = replicates[0].n();
  for (const auto& s : replicates) {
    if (s.n() != n0) throw std::invalid_argument("centered statistic: replicate sizes differ");
  }

  CenteredStatResult result;
  result.per_replicate.assign(reps, 0.0);
  std::vector<double> est(reps);
  for (double x : x_grid) {
    double mean = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      est[r] = estimate(replicates[r], x);
      mean += est[r];
    }
    mean /= static_cast<double>(reps);
    const double denom = normalizer(x);
    for (std::size_t r = 0; r < reps; ++r) {
      const double v = scale * std::abs(est[r] - mean) / denom;
      result.per_replicate[r] = std::max(result.per_replicate[r], v);
    }
  }
  result.sup = *std::max_element(result.per_replicate.begin(), result.per_replicate.end());
  return result;
}

}  // namespace

CenteredStatResult nn_statistic(std::span<const Sample> replicates, const DistributionModel& model,
                                const Kernel& kernel, double k, std::span<const double> x_grid) {
  if (replicates.empty()) throw std::invalid_argument("nn_statistic: no replicates");
  const double n = static_cast<double>(replicates[0].n());
  const double log_ratio = std::log(n / k);
  if (!(log_ratio > 0.0)) throw std::domain_error("nn_statistic: need k < n");
  return centered_statistic(
      replicates, x_grid,
      [&](const Sample& s, double x) { return nn_density(s, kernel, k, x); },
      [&](double x) {
        const double f = model.density(x);
        if (!(f > 0.0)) throw std::domain_error("nn_statistic: density vanishes on the x grid");
        return std::sqrt(2.0 * f * f * log_ratio);
      },
      std::sqrt(k));
}

CenteredStatResult pr_statistic(std::span<const Sample> replicates, const DistributionModel& model,
                                const Kernel& kernel, double h, std::span<const double> x_grid) {
  if (replicates.empty()) throw std::invalid_argument("pr_statistic: no replicates");
  if (!(h > 0.0 && h < 1.0)) throw std::domain_error("pr_statistic: need 0 < h < 1");
  const double n = static_cast<double>(replicates[0].n());
  const double log_inv_h = std::log(1.0 / h);
  return centered_statistic(
      replicates, x_grid,
      [&](const Sample& s, double x) { return kernel_density(s, kernel, h, x); },
      [&](double x) {
        const double f = model.density(x);
        if (!(f > 0.0)) throw std::domain_error("pr_statistic: density vanishes on the x grid");
        return std::sqrt(2.0 * f * log_inv_h);
      },
      std::sqrt(n * h));
}

double radius_gap(const Sample& sample, const DistributionModel& model,
                  std::span<const double> k_grid, std::span<const double> x_grid) {
  const double n = static_cast<double>(sample.n());
  double sup = 0.0;
  for (double k : k_grid) {
    for (double x : x_grid) {
      const double f = model.density(x);
      if (!(f > 0.0)) throw std::domain_error("radius_gap: density vanishes on the x grid");
      sup = std::max(sup, std::abs(nn_radius(sample, k, x) - k / (n * f)));
    }
  }
  return sup;
}

}  // namespace qproc
