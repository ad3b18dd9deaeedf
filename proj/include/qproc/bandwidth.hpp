#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qproc {

// Serializable description of a bandwidth pair: h = coeff * n^(-exponent)
// for each end, plus the geometric step of the evaluation grid. Constant
// plans use exponent 0.
struct PlanSpec {
  double lo_coeff = 1.0;
  double lo_exp = 0.6;
  double hi_coeff = 1.0;
  double hi_exp = 0.4;
  double grid_ratio = 1.189207115002721;  // 2^(1/4)
};

struct BandwidthPlan {
  std::function<double(double)> h_lo;  // n -> h'_n
  std::function<double(double)> h_hi;  // n -> h''_n
  double grid_ratio = 1.189207115002721;
  std::string description;
};

BandwidthPlan make_plan(const PlanSpec& spec);

// Geometric grid from h_lo(n) to h_hi(n), both endpoints included.
std::vector<double> bandwidth_grid(const BandwidthPlan& plan, double n);

// Finite-n trend of one hypothesis expression across the n list.
struct HypothesisCheck {
  std::string name;
  std::vector<double> values;
  std::string direction;  // "increasing", "decreasing", "constant", "mixed"
  bool ok = false;
  std::string note;
};

struct HypothesisReport {
  std::vector<double> n_list;
  std::vector<HypothesisCheck> checks;
  bool plan_valid = false;   // 0 < h' <= h'' < 1 on every n
  bool h4_by_i = false;
  bool h4_by_ii = false;
  bool h4 = false;
};

// Evaluates every hypothesis expression at each n and reports the trend;
// nothing is rejected here, callers decide what a failed trend means.
HypothesisReport check_hypotheses(const BandwidthPlan& plan, const std::vector<double>& n_list);

std::string format_report(const HypothesisReport& report);

// (e, 1-e) with e = h + 25 log_2(n)/n; throws when e >= 1/2.
std::pair<double, double> t_range(double n, double h);

}  // namespace qproc
