#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace qproc {

// Analytic sampling law with exact closed forms for the distribution
// function, quantile, density, density derivative and quantile density.
// gamma bounds sup_t t(1-t)|f'(Q(t))|/f(Q(t))^2; extended_tails records
// whether the density has finite, strictly positive limits at both
// support endpoints.
struct DistributionModel {
  std::string name;
  std::function<double(double)> cdf;                 // F
  std::function<double(double)> density;             // f
  std::function<double(double)> density_derivative;  // f'
  std::function<double(double)> quantile;            // Q, on (0,1)
  std::function<double(double)> quantile_density;    // q = 1/f(Q), on (0,1)
  double gamma = 0.0;
  double support_lo = 0.0;  // u1
  double support_hi = 0.0;  // u2
  bool extended_tails = false;
};

// uniform, exp1, logistic, plus normal as an extra (kept out of the
// statistic acceptance runs; see README).
const std::vector<DistributionModel>& builtin_models();
const DistributionModel& model_by_name(std::string_view name);

// q(t) = 1/f(Q(t)); domain error outside (0,1).
double quantile_density(const DistributionModel& model, double t);

// Supremum of t(1-t)|f'(Q(t))|/f(Q(t))^2 over the open grid
// {i/(grid_size+1), i = 1..grid_size}. Throws if the density underflows
// to zero anywhere on the grid.
double quantile_density_variation_sup(const DistributionModel& model, int grid_size);

// Ratio bound for the quantile density:
//   q(y2)/q(y1) <= { (y1 v y2)/(y1 ^ y2) * (1 - y1 ^ y2)/(1 - y1 v y2) }^gamma
// checked with relative slack 1e-9.
bool quantile_density_ratio_bound_holds(const DistributionModel& model, double y1, double y2);

}  // namespace qproc
