#include "qproc/bandwidth.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qproc/numeric.hpp"

namespace qproc {

BandwidthPlan make_plan(const PlanSpec& spec) {
  if (!(spec.grid_ratio > 1.0)) throw std::invalid_argument("make_plan: grid_ratio must exceed 1");
  BandwidthPlan plan;
  plan.h_lo = [spec](double n) { return spec.lo_coeff * std::pow(n, -spec.lo_exp); };
  plan.h_hi = [spec](double n) { return spec.hi_coeff * std::pow(n, -spec.hi_exp); };
  plan.grid_ratio = spec.grid_ratio;
  std::ostringstream desc;
  desc << spec.lo_coeff << "*n^-" << spec.lo_exp << " .. " << spec.hi_coeff << "*n^-" << spec.hi_exp;
  plan.description = desc.str();
  return plan;
}

std::vector<double> bandwidth_grid(const BandwidthPlan& plan, double n) {
  const double lo = plan.h_lo(n);
  const double hi = plan.h_hi(n);
  if (!(lo > 0.0 && lo <= hi && hi < 1.0))
    throw std::invalid_argument("bandwidth_grid: need 0 < h' <= h'' < 1");
  std::vector<double> grid;
  double h = lo;
  while (h < hi) {
    grid.push_back(h);
    h *= plan.grid_ratio;
  }
  // Keep the top endpoint exact; drop a near-duplicate just below it.
  if (!grid.empty() && hi / grid.back() < 1.0 + 1e-12) grid.pop_back();
  grid.push_back(hi);
  return grid;
}

namespace {

std::string classify(const std::vector<double>& v) {
  bool inc = true, dec = true, constant = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double rel = std::abs(v[i] - v[i - 1]) /
                       std::max({std::abs(v[i]), std::abs(v[i - 1]), 1e-300});
    if (rel > 1e-12) constant = false;
    if (v[i] < v[i - 1]) inc = false;
    if (v[i] > v[i - 1]) dec = false;
  }
  if (constant) return "constant";
  if (inc) return "increasing";
  if (dec) return "decreasing";
  return "mixed";
}

HypothesisCheck make_check(std::string name, std::vector<double> values,
                           const std::string& wanted, std::string note = {}) {
  HypothesisCheck c;
  c.name = std::move(name);
  c.direction = classify(values);
  c.values = std::move(values);
  c.ok = c.direction == wanted;
  c.note = std::move(note);
  return c;
}

// Fits h = c n^-r across consecutive n pairs; reports the exponent when the
// fits agree to within 1e-6 relative.
bool fit_exponent(const std::function<double(double)>& h, const std::vector<double>& n_list,
                  double* exponent) {
  double first = 0.0;
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    const double est = -std::log(h(n_list[i]) / h(n_list[i - 1])) /
                       std::log(n_list[i] / n_list[i - 1]);
    if (i == 1) first = est;
    else if (std::abs(est - first) > 1e-6 * std::max(1.0, std::abs(first))) return false;
  }
  *exponent = first;
  return true;
}

}  // namespace

HypothesisReport check_hypotheses(const BandwidthPlan& plan, const std::vector<double>& n_list) {
  if (n_list.size() < 3) throw std::invalid_argument("check_hypotheses: need at least 3 n values");
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (!(n_list[i] > n_list[i - 1]))
      throw std::invalid_argument("check_hypotheses: n list must be increasing");
  }

  HypothesisReport rep;
  rep.n_list = n_list;

  auto map = [&](const std::function<double(double)>& f) {
    std::vector<double> v;
    v.reserve(n_list.size());
    for (double n : n_list) v.push_back(f(n));
    return v;
  };

  rep.plan_valid = true;
  for (double n : n_list) {
    const double lo = plan.h_lo(n), hi = plan.h_hi(n);
    if (!(lo > 0.0 && lo <= hi && hi < 1.0)) rep.plan_valid = false;
  }

  for (const auto& [tag, h] : {std::pair{std::string("h'"), plan.h_lo},
                               std::pair{std::string("h''"), plan.h_hi}}) {
    rep.checks.push_back(make_check("H.1 " + tag + " decreasing to 0", map(h), "decreasing"));
    rep.checks.push_back(make_check(
        "H.1 n*" + tag + " increasing", map([&](double n) { return n * h(n); }), "increasing"));
    rep.checks.push_back(make_check(
        "H.2 log(1/" + tag + ")/log2(n) increasing",
        map([&](double n) { return std::log(1.0 / h(n)) / iterated_log(n); }), "increasing"));
    rep.checks.push_back(make_check(
        "H.3 n*" + tag + "/log(n) increasing",
        map([&](double n) { return n * h(n) / std::log(n); }), "increasing"));
  }

  {
    auto expr = map([&](double n) {
      const double h = plan.h_lo(n);
      return std::sqrt(n) * h * std::log(1.0 / h) / (std::log(n) * std::sqrt(iterated_log(n)));
    });
    auto check = make_check("H.4(i) sqrt(n) h' log(1/h')/(log n sqrt(log2 n)) increasing",
                            std::move(expr), "increasing");
    rep.h4_by_i = check.ok;
    rep.checks.push_back(std::move(check));
  }
  {
    auto expr = map([&](double n) {
      const double lo = plan.h_lo(n), hi = plan.h_hi(n);
      const double ratio = std::sqrt(hi * std::log(1.0 / hi)) / (lo * std::log(1.0 / lo));
      return ratio / (std::sqrt(n) / std::log(n));
    });
    auto check = make_check("H.4(ii) [sqrt(h'' log(1/h''))/(h' log(1/h'))]/(sqrt(n)/log n) -> 0",
                            std::move(expr), "decreasing");
    rep.h4_by_ii = check.ok;
    rep.checks.push_back(std::move(check));
  }
  {
    auto expr = map([&](double n) { return std::sqrt(n) * plan.h_lo(n) / std::log(n); });
    rep.checks.push_back(
        make_check("H.3' sqrt(n) h'/log(n) increasing", std::move(expr), "increasing"));
  }
  {
    // Power-law criterion: for h' = n^-r, h'' = n^-s the pair condition is
    // s <= r < (1+s)/2.
    double r = 0.0, s = 0.0;
    HypothesisCheck c;
    c.name = "power-law pair s <= r < (1+s)/2";
    if (fit_exponent(plan.h_lo, n_list, &r) && fit_exponent(plan.h_hi, n_list, &s)) {
      c.ok = s <= r && r < 0.5 * (1.0 + s);
      char buf[96];
      std::snprintf(buf, sizeof(buf), "r=%.6g s=%.6g", r, s);
      c.note = buf;
      c.direction = "constant";
    } else {
      c.ok = false;
      c.direction = "mixed";
      c.note = "not a power law";
    }
    rep.checks.push_back(std::move(c));
  }

  rep.h4 = rep.h4_by_i || rep.h4_by_ii;
  return rep;
}

std::string format_report(const HypothesisReport& report) {
  std::ostringstream os;
  os << "n:";
  for (double n : report.n_list) os << " " << n;
  os << "\nplan range valid: " << (report.plan_valid ? "yes" : "no") << "\n";
  for (const auto& c : report.checks) {
    os << (c.ok ? "[ok]   " : "[flag] ") << c.name << "  (" << c.direction;
    if (!c.note.empty()) os << "; " << c.note;
    os << ")  values:";
    char buf[40];
    for (double v : c.values) {
      std::snprintf(buf, sizeof(buf), " %.6g", v);
      os << buf;
    }
    os << "\n";
  }
  os << "H.4 satisfied: "
     << (report.h4_by_i ? "by (i)" : (report.h4_by_ii ? "by (ii)" : "neither")) << "\n";
  return os.str();
}

std::pair<double, double> t_range(double n, double h) {
  const double e = h + 25.0 * iterated_log(n) / n;
  if (!(e < 0.5)) throw std::domain_error("t_range: trimmed range is empty");
  return {e, 1.0 - e};
}

}  // namespace qproc
