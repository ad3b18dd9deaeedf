#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qproc/bandwidth.hpp"

namespace qproc {

inline constexpr std::string_view kLibraryVersion = "0.1.0";

enum class Experiment {
  thm21_dist,   // sup distance of uniform quantile increment fields to the ball
  thm21_cover,  // inner coverage of fixed ball elements by the fields
  cor21,        // normalized oscillation maximum, target 1
  thm11,        // sup ball distance for normed quantile increments of a model
  thm31,        // normalized uniform spacing statistic, target 1
  thm32,        // normalized restricted spacing statistic, target 1
  thm33,        // nearest-neighbor density fluctuation statistic
  prop42,       // fixed-bandwidth density fluctuation statistic
  bk_rate,      // empirical-vs-quantile cancellation rate
  cr_rate,      // normed-vs-uniform quantile gap rate
  radius_gap,   // adaptive bandwidth against k/(n f)
  conj412,      // one-sided oscillation with drift over t in [0, 1-h]
};

std::string_view experiment_name(Experiment e);
Experiment experiment_from_name(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::cor21;
  std::string model = "uniform";
  std::string kernel;  // density experiments only
  std::vector<double> n_list = {1000.0};
  PlanSpec plan;
  int replicates = 1;
  std::uint64_t master_seed = 1;
  int s_grid_size = 65;
  int t_stride = 8;
  int x_grid_size = 101;
  double c1 = 0.25, c2 = 0.75;  // anchor window for the coverage experiment
  double t1 = 0.25, t2 = 0.75;  // quantile levels bounding the x interval
  int threads = 0;              // 0 = hardware concurrency
};

struct ReportRow {
  double n = 0.0;
  double h = 0.0;  // 0 for bandwidth-free experiments
  std::string label;  // test-set element or kernel; may be empty
  int replicate = 0;
  std::uint64_t seed = 0;
  double statistic = 0.0;
  bool valid = true;
  std::string error;
};

struct Aggregate {
  double n = 0.0;
  double h = 0.0;
  std::string label;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  int valid_count = 0;
  int invalid_count = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;  // sorted by (n, h, label, replicate)
  std::vector<Aggregate> aggregates;
  double wall_seconds = 0.0;
  std::string version;
};

// Stable mixing of (master, n, replicate) through three splitmix64 rounds;
// every replicate owns an independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replicate);

ExperimentReport run_experiment(const ExperimentConfig& config);

// CSV: fixed column set, 17 significant digits, bit-identical on rerun.
void write_report_csv(const ExperimentReport& report, std::ostream& os);
// JSON: adds the config echo, aggregates and wall time.
void write_report_json(const ExperimentReport& report, std::ostream& os);
void write_report(const ExperimentReport& report, const std::string& format,
                  const std::string& path);
std::string report_csv_string(const ExperimentReport& report);

// Flat key-value config file ("key = value", '#' comments).
ExperimentConfig load_config(std::istream& is);
ExperimentConfig load_config_file(const std::string& path);

double median_of(std::vector<double> values);

}  // namespace qproc
