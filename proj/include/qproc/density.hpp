#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qproc/distributions.hpp"
#include "qproc/sample.hpp"

namespace qproc {

// Compactly supported kernel integrating to one, with a bounded-variation
// certificate: eval is monotone between consecutive breakpoints.
struct Kernel {
  std::string name;
  std::function<double(double)> eval;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double l2 = 0.0;              // integral of K^2, closed form
  double total_integral = 1.0;  // integral of K, closed form
  std::vector<double> monotone_breakpoints;
};

// uniform (indicator on [-1/2,1/2]), epanechnikov, triangular.
const std::vector<Kernel>& builtin_kernels();
const Kernel& kernel_by_name(std::string_view name);

// Adaptive bandwidth of order k: the ceil(k)-th smallest value of
// 2|x - X_i|, i.e. the width of the smallest window [x - r/2, x + r/2]
// containing ceil(k) sample points.
double nn_radius(const Sample& sample, double k, double x);

// Nearest-neighbor estimate (1/(n R_k(x))) sum K((x - X_i)/R_k(x)).
// Throws when the radius degenerates to zero (ties at x).
double nn_density(const Sample& sample, const Kernel& kernel, double k, double x);

// Fixed-bandwidth estimate (1/(n h)) sum K((x - X_i)/h).
double kernel_density(const Sample& sample, const Kernel& kernel, double h, double x);

// (Q_n(t1), Q_n(t2)) on the raw sample; requires 0 < t1 < t2 < 1.
std::pair<double, double> empirical_interval(const Sample& sample, double t1, double t2);

// Centered sup statistics over an x grid, one value per replicate plus the
// overall sup. Centering is the across-replicate mean at each grid point,
// accumulated in replicate order.
struct CenteredStatResult {
  std::vector<double> per_replicate;
  double sup = 0.0;
};

// sup_x sqrt(k) |fhat_r(x) - mean_r fhat(x)| / sqrt(2 f(x)^2 log(n/k)).
CenteredStatResult nn_statistic(std::span<const Sample> replicates, const DistributionModel& model,
                                const Kernel& kernel, double k, std::span<const double> x_grid);

// sup_x sqrt(n h) |ftilde_r(x) - mean_r ftilde(x)| / sqrt(2 f(x) log(1/h)).
CenteredStatResult pr_statistic(std::span<const Sample> replicates, const DistributionModel& model,
                                const Kernel& kernel, double h, std::span<const double> x_grid);

// sup over the grids of |R_k(x) - k/(n f(x))|.
double radius_gap(const Sample& sample, const DistributionModel& model,
                  std::span<const double> k_grid, std::span<const double> x_grid);

}  // namespace qproc
