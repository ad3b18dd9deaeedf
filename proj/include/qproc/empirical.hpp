#pragma once

#include <vector>

#include "qproc/distributions.hpp"
#include "qproc/sample.hpp"

namespace qproc {

// Right-continuous empirical distribution function: #{values <= x}/n.
double empirical_cdf(const Sample& sample, double x);

// Left-continuous empirical quantile function. 0 for t <= 0, the largest
// order statistic for t >= 1, otherwise the ceil(n t)-th order statistic.
double empirical_quantile(const Sample& sample, double t);

// sqrt(n) (F_n(t) - t): the empirical process of a uniform sample.
double empirical_process(const Sample& sample, double t);

// sqrt(n) (Q_n(t) - t): the uniform quantile process.
double quantile_process(const Sample& sample, double t);

// sqrt(n) (Q_n(t) - Q(t))/q(t) on the raw sample; domain (0,1).
double normed_quantile_process(const Sample& sample, const DistributionModel& model, double t);

enum class ProcessKind {
  empirical,        // increments of the empirical process
  quantile,         // increments of the uniform quantile process
  normed_quantile,  // increments of the normed quantile process
};

// Normalized local increments: (P(t + h s) - P(t)) / sqrt(2 h log(1/h))
// evaluated on a node grid in s. The value at s = 0 is exactly zero.
struct IncrementField {
  double h = 0.0;
  double t = 0.0;
  std::vector<double> s_grid;
  std::vector<double> values;
  ProcessKind kind = ProcessKind::quantile;
};

// Grid of equally spaced nodes on [-1,1] (count odd so 0 is a node).
std::vector<double> symmetric_grid(std::size_t count);

// model may be null except for ProcessKind::normed_quantile. The s grid
// must be strictly increasing, contain 0, and span [-1,1] or [0,1].
IncrementField increment_field(const Sample& sample, const DistributionModel* model, double h,
                               double t, std::vector<double> s_grid, ProcessKind kind);

// Exact sup over [0,1] of |empirical process + quantile process| for a
// uniform sample, by enumerating every jump of both step functions and the
// closures of the linear pieces between them.
double bahadur_kiefer_gap(const Sample& sample);

// Sup over [e_n, 1 - e_n], e_n = 25 log_2(n)/n, of the gap between the
// normed quantile process of the sample and the uniform quantile process of
// its underlying uniforms. Evaluated at every quantile jump (both interval
// ends), interior stationary points, and a 1000-point fill grid.
double normed_quantile_gap(const Sample& sample, const DistributionModel& model);

}  // namespace qproc
