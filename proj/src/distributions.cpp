#include "qproc/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Quantile of the standard normal: bracketed Newton on the erfc-based cdf.
// The seed -sqrt(-2 log t) bounds the root from the left for t < 1/2, so the
// bracket [seed, 0] is valid and the iteration converges to full precision.
double normal_quantile(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("normal quantile: t outside (0,1)");
  if (t == 0.5) return 0.0;
  const bool upper = t > 0.5;
  const double p = upper ? 1.0 - t : t;
  double lo = -std::sqrt(-2.0 * std::log(p));
  double hi = 0.0;
  double x = lo;
  for (int iter = 0; iter < 64; ++iter) {
    const double err = normal_cdf(x) - p;
    if (err > 0.0) hi = x; else lo = x;
    const double step = err / normal_pdf(x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }
  return upper ? -x : x;
}

std::vector<DistributionModel> make_builtin_models() {
  std::vector<DistributionModel> models;

  {
    DistributionModel m;
    m.name = "uniform";
    m.cdf = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
    m.density = [](double x) { return (x > 0.0 && x < 1.0) ? 1.0 : 0.0; };
    m.density_derivative = [](double) { return 0.0; };
    m.quantile = [](double t) { return t; };
    m.quantile_density = [](double) { return 1.0; };
    m.gamma = 0.0;
    m.support_lo = 0.0;
    m.support_hi = 1.0;
    m.extended_tails = true;
    models.push_back(std::move(m));
  }

  {
    DistributionModel m;
    m.name = "exp1";
    m.cdf = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
    m.density = [](double x) { return x <= 0.0 ? 0.0 : std::exp(-x); };
    m.density_derivative = [](double x) { return x <= 0.0 ? 0.0 : -std::exp(-x); };
    m.quantile = [](double t) { return -std::log1p(-t); };
    m.quantile_density = [](double t) { return 1.0 / (1.0 - t); };
    m.gamma = 1.0;
    m.support_lo = 0.0;
    m.support_hi = kInf;
    m.extended_tails = false;
    models.push_back(std::move(m));
  }

  {
    DistributionModel m;
    m.name = "logistic";
    m.cdf = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
    m.density = [](double x) {
      const double e = std::exp(-std::abs(x));
      return e / ((1.0 + e) * (1.0 + e));
    };
    m.density_derivative = [](double x) {
      const double e = std::exp(-std::abs(x));
      const double f = e / ((1.0 + e) * (1.0 + e));
      const double cdf = 1.0 / (1.0 + std::exp(-x));
      return f * (1.0 - 2.0 * cdf);
    };
    m.quantile = [](double t) { return std::log(t / (1.0 - t)); };
    m.quantile_density = [](double t) { return 1.0 / (t * (1.0 - t)); };
    m.gamma = 1.0;
    m.support_lo = -kInf;
    m.support_hi = kInf;
    m.extended_tails = false;
    models.push_back(std::move(m));
  }

  {
    DistributionModel m;
    m.name = "normal";
    m.cdf = normal_cdf;
    m.density = normal_pdf;
    m.density_derivative = [](double x) { return -x * normal_pdf(x); };
    m.quantile = normal_quantile;
    m.quantile_density = [](double t) { return 1.0 / normal_pdf(normal_quantile(t)); };
    m.gamma = 1.0;
    m.support_lo = -kInf;
    m.support_hi = kInf;
    m.extended_tails = false;
    models.push_back(std::move(m));
  }

  return models;
}

}  // namespace

const std::vector<DistributionModel>& builtin_models() {
  static const std::vector<DistributionModel> models = make_builtin_models();
  return models;
}

const DistributionModel& model_by_name(std::string_view name) {
  for (const auto& m : builtin_models()) {
    if (m.name == name) return m;
  }
  throw std::invalid_argument("unknown model: " + std::string(name));
}

double quantile_density(const DistributionModel& model, double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::domain_error("quantile_density: t outside (0,1)");
  return model.quantile_density(t);
}

double quantile_density_variation_sup(const DistributionModel& model, int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("quantile_density_variation_sup: grid_size < 2");
  double sup = 0.0;
  const double step = 1.0 / (grid_size + 1.0);
  for (int i = 1; i <= grid_size; ++i) {
    const double t = i * step;
    const double x = model.quantile(t);
    const double f = model.density(x);
    if (f <= 0.0) throw std::runtime_error("quantile_density_variation_sup: density underflow at t grid");
    const double v = t * (1.0 - t) * std::abs(model.density_derivative(x)) / (f * f);
    sup = std::max(sup, v);
  }
  return sup;
}

bool quantile_density_ratio_bound_holds(const DistributionModel& model, double y1, double y2) {
  if (!(y1 > 0.0 && y1 < 1.0 && y2 > 0.0 && y2 < 1.0))
    throw std::domain_error("quantile_density_ratio_bound_holds: arguments outside (0,1)");
  const double lo = std::min(y1, y2);
  const double hi = std::max(y1, y2);
  const double lhs = model.quantile_density(y2) / model.quantile_density(y1);
  const double rhs = std::pow((hi / lo) * ((1.0 - lo) / (1.0 - hi)), model.gamma);
  return lhs <= rhs * (1.0 + 1e-9);
}

}  // namespace qproc
