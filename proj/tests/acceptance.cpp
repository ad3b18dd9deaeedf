// Acceptance suite: one pass/fail line per criterion. Deterministic oracle
// checks first, then banded trend checks on fixed-seed Monte Carlo runs with
// the n^-0.6 .. n^-0.4 bandwidth plan. Exit code 0 only when every criterion
// passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qproc/density.hpp"
#include "qproc/empirical.hpp"
#include "qproc/harness.hpp"
#include "qproc/spacings.hpp"
#include "qproc/strassen.hpp"

using namespace qproc;

namespace {

constexpr std::uint64_t kMasterSeed = 20250808;

int g_failures = 0;

void report(int id, bool pass, const std::string& summary, const std::string& detail,
            double seconds) {
  std::printf("[%s] C%02d %-34s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id, summary.c_str(),
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

ExperimentConfig banded_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.plan.lo_exp = 0.6;
  cfg.plan.hi_exp = 0.4;
  cfg.master_seed = kMasterSeed;
  cfg.threads = 0;
  return cfg;
}

// Per-replicate statistic: sup over the bandwidth grid (and any labels
// filtered by `label`), then the across-replicate median, per n.
std::map<double, double> median_sup_over_h(const ExperimentReport& rep,
                                           const std::string& label, bool* all_valid) {
  std::map<double, std::map<int, double>> sup;  // n -> replicate -> max over h
  for (const auto& row : rep.rows) {
    if (!label.empty() && row.label != label) continue;
    if (!row.valid) { *all_valid = false; continue; }
    auto& slot = sup[row.n];
    auto [it, inserted] = slot.try_emplace(row.replicate, row.statistic);
    if (!inserted) it->second = std::max(it->second, row.statistic);
  }
  std::map<double, double> medians;
  for (auto& [n, by_rep] : sup) {
    std::vector<double> vals;
    vals.reserve(by_rep.size());
    for (auto& [r, v] : by_rep) vals.push_back(v);
    medians[n] = median_of(std::move(vals));
  }
  return medians;
}

std::string medians_text(const std::map<double, double>& medians) {
  std::ostringstream os;
  for (const auto& [n, m] : medians) os << "n=" << n << ":" << fmt(m) << " ";
  return os.str();
}

bool nondecreasing(const std::map<double, double>& m) {
  double prev = -std::numeric_limits<double>::infinity();
  for (const auto& [n, v] : m) {
    if (v < prev) return false;
    prev = v;
  }
  return true;
}

bool strictly_decreasing(const std::map<double, double>& m) {
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& [n, v] : m) {
    if (v >= prev) return false;
    prev = v;
  }
  return true;
}

GridFunction line(double slope, std::size_t count = 65) {
  auto nodes = symmetric_grid(count);
  std::vector<double> vals(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = slope * nodes[i];
  return make_grid_function(std::move(nodes), std::move(vals));
}

// --- deterministic criteria -------------------------------------------------

void criterion_1() {
  Timer timer;
  std::mt19937_64 rng(kMasterSeed);
  bool pass = true;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto phi = oracles::random_field(rng, 9, 0.6);
    const double fast = strassen_distance(phi).distance;
    const double slow = oracles::ball_distance_fista(phi);
    worst = std::max(worst, std::abs(fast - slow));
    pass = pass && std::abs(fast - slow) < 1e-3;
  }
  const double secs = timer.seconds();
  pass = pass && secs < 60.0;
  report(1, pass, "ball distance vs gradient oracle",
         "max |fast-slow| = " + fmt(worst) + " on 20 9-node fields", secs);
}

void criterion_2() {
  Timer timer;
  const double d_line = strassen_distance(line(1.0)).distance;
  const double d_member = strassen_distance(line(1.0 / std::numbers::sqrt2)).distance;
  const double energy = dirichlet_energy(line(1.0 / std::numbers::sqrt2));
  const bool pass = std::abs(d_line - (1.0 - 1.0 / std::numbers::sqrt2)) <= 1e-3 &&
                    d_member < 1e-6 && std::abs(energy - 1.0) <= 1e-12;
  report(2, pass, "analytic ball distances",
         "d(line)=" + fmt(d_line) + " d(member)=" + fmt(d_member) + " energy=" + fmt(energy),
         timer.seconds());
}

void criterion_3() {
  Timer timer;
  bool pass = true;
  double worst_diff = 0.0;
  const auto& uniform = model_by_name("uniform");
  int count = 0;
  for (std::size_t n : {10, 100}) {
    for (int rep = 0; rep < 25; ++rep) {
      const Sample s = generate_sample(uniform, n, derive_seed(kMasterSeed, n, rep));
      const double exact = bahadur_kiefer_gap(s);
      const double grid = oracles::bk_gap_grid(s, 1000000);
      pass = pass && exact >= grid - 1e-12 && exact - grid < 1e-9;
      worst_diff = std::max(worst_diff, std::abs(exact - grid));
      ++count;
    }
  }
  report(3, pass, "cancellation gap exactness",
         "max |enum-grid| = " + fmt(worst_diff) + " over " + std::to_string(count) + " samples",
         timer.seconds());
}

void criterion_4() {
  Timer timer;
  bool pass = true;
  std::string note;

  // quantile density identity on a 1000-point grid, every model
  for (const auto& model : builtin_models()) {
    for (int i = 1; i <= 1000; ++i) {
      const double t = i / 1001.0;
      if (std::abs(model.quantile_density(t) * model.density(model.quantile(t)) - 1.0) >= 1e-12) {
        pass = false;
        note = "q*f(Q) identity failed for " + model.name;
      }
    }
  }
  // |U_n(V_n(t)) - t| <= 1/n on 1000 random levels
  {
    const Sample s = generate_sample(model_by_name("uniform"), 997, kMasterSeed);
    std::mt19937_64 rng(kMasterSeed + 1);
    std::uniform_real_distribution<double> unit(1e-9, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const double t = unit(rng);
      if (std::abs(empirical_cdf(s, empirical_quantile(s, t)) - t) > 1.0 / 997 + 1e-12) {
        pass = false;
        note = "U(V(t)) drifted";
      }
    }
  }
  // uniform-model reduction of the weighted spacing statistic
  {
    const auto& uniform = model_by_name("uniform");
    const Sample s = generate_sample(uniform, 2000, kMasterSeed + 2);
    for (std::size_t d : {1, 3, 7}) {
      double direct = 0.0;
      for (std::size_t k = 1; k <= d; ++k) {
        const auto b = spacing_index_bounds(2000, k);
        for (std::int64_t i = b.i1; i <= b.i2; ++i) {
          direct = std::max(direct, std::abs(s.order_stats[i + k - 1] - s.order_stats[i - 1] -
                                             static_cast<double>(k) / 2000.0));
        }
      }
      if (max_spacing_deviation(s, uniform, d) != direct) {
        pass = false;
        note = "uniform spacing reduction differs";
      }
    }
  }
  // uniform-kernel window identity
  {
    const Sample s = generate_sample(model_by_name("uniform"), 500, kMasterSeed + 3);
    const auto& kern = kernel_by_name("uniform");
    std::mt19937_64 rng(kMasterSeed + 4);
    std::uniform_real_distribution<double> xs(0.05, 0.95);
    for (int trial = 0; trial < 1000; ++trial) {
      const double x = xs(rng);
      const double k = static_cast<double>(1 + rng() % 60);
      const double r = nn_radius(s, k, x);
      const auto lo = std::lower_bound(s.order_stats.begin(), s.order_stats.end(), x - r / 2.0);
      const auto hi = std::upper_bound(s.order_stats.begin(), s.order_stats.end(), x + r / 2.0);
      const double count = static_cast<double>(hi - lo);
      if (count != k || nn_density(s, kern, k, x) != count / (500.0 * r)) {
        pass = false;
        note = "window identity failed";
      }
    }
  }
  report(4, pass, "exact process identities", pass ? "all four identity families exact" : note,
         timer.seconds());
}

void criterion_5() {
  Timer timer;
  std::mt19937_64 rng(kMasterSeed + 5);
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  int violations = 0;
  for (const auto& model : builtin_models()) {
    for (int i = 0; i < 10000; ++i) {
      if (!quantile_density_ratio_bound_holds(model, unit(rng), unit(rng))) ++violations;
    }
  }
  report(5, violations == 0, "quantile density ratio bound",
         std::to_string(violations) + " violations over 4x10000 pairs", timer.seconds());
}

void criterion_6() {
  Timer timer;
  bool pass = true;
  {
    ExperimentConfig cfg = banded_config(Experiment::cor21);
    cfg.n_list = {10000.0};
    cfg.replicates = 5;
    pass = pass && report_csv_string(run_experiment(cfg)) == report_csv_string(run_experiment(cfg));
  }
  {
    ExperimentConfig cfg = banded_config(Experiment::thm33);
    cfg.model = "exp1";
    cfg.kernel = "uniform";
    cfg.n_list = {2000.0};
    cfg.replicates = 4;
    const std::string a = report_csv_string(run_experiment(cfg));
    cfg.threads = 3;
    pass = pass && a == report_csv_string(run_experiment(cfg));
  }
  report(6, pass, "rerun determinism", "csv bytes identical across reruns and worker counts",
         timer.seconds());
}

// --- banded trend criteria ---------------------------------------------------

void criterion_7() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::cor21);
  cfg.n_list = {1e4, 1e5, 1e6};
  cfg.replicates = 20;
  const auto rep = run_experiment(cfg);
  bool valid = true;
  const auto medians = median_sup_over_h(rep, "", &valid);
  const double at6 = medians.at(1e6);
  const bool pass = valid && at6 >= 0.70 && at6 <= 1.15 && nondecreasing(medians);
  report(7, pass, "oscillation maximum near 1", medians_text(medians), timer.seconds());
}

void criterion_8() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::thm21_dist);
  cfg.n_list = {1e3, 1e4, 1e5};
  cfg.replicates = 10;
  const auto rep = run_experiment(cfg);
  bool valid = true;
  const auto medians = median_sup_over_h(rep, "", &valid);
  const bool pass = valid && medians.at(1e5) <= 0.50 && strictly_decreasing(medians);
  report(8, pass, "increment fields approach the ball", medians_text(medians), timer.seconds());
}

void criterion_9() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::thm21_cover);
  cfg.n_list = {1e3, 1e4, 1e5};
  cfg.replicates = 10;
  const auto rep = run_experiment(cfg);
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [label, g] : strassen_test_elements(5, cfg.s_grid_size)) {
    bool valid = true;
    const auto medians = median_sup_over_h(rep, label, &valid);
    const bool ok = valid && medians.at(1e5) <= 0.50 && strictly_decreasing(medians);
    pass = pass && ok;
    detail << label << ":" << fmt(medians.at(1e5)) << (ok ? " " : "! ");
  }
  report(9, pass, "fields cover the test elements", detail.str() + "(at n=1e5)", timer.seconds());
}

void criterion_10() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::thm31);
  cfg.n_list = {1e4, 1e5, 1e6};
  cfg.replicates = 10;
  const auto rep = run_experiment(cfg);
  bool valid = true;
  const auto medians = median_sup_over_h(rep, "", &valid);
  const double at6 = medians.at(1e6);
  const bool pass = valid && at6 >= 0.70 && at6 <= 1.15 && nondecreasing(medians);
  report(10, pass, "uniform spacing statistic near 1", medians_text(medians), timer.seconds());
}

void criterion_11() {
  Timer timer;
  bool pass = true;
  std::ostringstream detail;
  for (const char* model : {"exp1", "logistic"}) {
    ExperimentConfig cfg = banded_config(Experiment::thm32);
    cfg.model = model;
    cfg.n_list = {1e4, 1e5, 1e6};
    cfg.replicates = 10;
    const auto rep = run_experiment(cfg);
    bool valid = true;
    const auto medians = median_sup_over_h(rep, "", &valid);
    const double at6 = medians.at(1e6);
    const bool ok = valid && at6 >= 0.60 && at6 <= 1.20 && nondecreasing(medians);
    pass = pass && ok;
    detail << model << " " << medians_text(medians) << (ok ? "" : "! ");
  }
  report(11, pass, "weighted spacing statistic near 1", detail.str(), timer.seconds());
}

void density_criterion(int id, Experiment experiment, const std::string& summary) {
  Timer timer;
  bool pass = true;
  std::ostringstream detail;
  for (const char* kernel : {"uniform", "epanechnikov"}) {
    ExperimentConfig cfg = banded_config(experiment);
    cfg.model = "exp1";
    cfg.kernel = kernel;
    cfg.n_list = {1e5};
    cfg.replicates = 50;
    const auto rep = run_experiment(cfg);
    bool valid = true;
    const auto medians = median_sup_over_h(rep, kernel, &valid);
    const double target = std::sqrt(kernel_by_name(kernel).l2);
    const double med = medians.at(1e5);
    const bool ok = valid && med >= 0.60 * target && med <= 1.30 * target;
    pass = pass && ok;
    detail << kernel << ":" << fmt(med) << "/target " << fmt(target) << (ok ? " " : "! ");
  }
  report(id, pass, summary, detail.str(), timer.seconds());
}

void criterion_14() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::bk_rate);
  cfg.n_list = {1e3, 1e4, 1e5, 1e6};
  cfg.replicates = 20;
  const auto rep = run_experiment(cfg);
  bool valid = true;
  const auto medians = median_sup_over_h(rep, "", &valid);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& [n, m] : medians) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const bool pass = valid && hi <= 2.0 && hi / lo <= 3.0;
  report(14, pass, "cancellation rate bounded",
         medians_text(medians) + "spread " + fmt(hi / lo), timer.seconds());
}

void criterion_15() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::cr_rate);
  cfg.model = "exp1";
  cfg.n_list = {1e4, 1e5, 1e6};
  cfg.replicates = 20;
  const auto rep = run_experiment(cfg);
  bool valid = true;
  const auto medians = median_sup_over_h(rep, "", &valid);
  bool pass = valid;
  for (const auto& [n, m] : medians) pass = pass && m <= 2.0;
  report(15, pass, "quantile approximation rate bounded", medians_text(medians), timer.seconds());
}

void criterion_16() {
  Timer timer;
  ExperimentConfig cfg = banded_config(Experiment::radius_gap);
  cfg.model = "uniform";
  cfg.plan.lo_exp = cfg.plan.hi_exp = 0.5;  // k = sqrt(n)
  cfg.n_list = {1e3, 1e4, 1e5};
  cfg.replicates = 20;
  const auto rep = run_experiment(cfg);
  bool valid = true;
  const auto medians = median_sup_over_h(rep, "", &valid);
  const bool pass = valid && strictly_decreasing(medians);
  report(16, pass, "adaptive radius gap shrinks", medians_text(medians), timer.seconds());
}

}  // namespace

int main() {
  Timer total;
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  density_criterion(12, Experiment::thm33, "adaptive density statistic");
  density_criterion(13, Experiment::prop42, "fixed-bandwidth density statistic");
  criterion_14();
  criterion_15();
  criterion_16();
  std::printf("%d/16 criteria passed (%.1fs total)\n", 16 - g_failures, total.seconds());
  return g_failures == 0 ? 0 : 1;
}
