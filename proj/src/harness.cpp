#include "qproc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "qproc/density.hpp"
#include "qproc/empirical.hpp"
#include "qproc/numeric.hpp"
#include "qproc/spacings.hpp"
#include "qproc/strassen.hpp"

namespace qproc {

namespace {

struct NamedExperiment {
  Experiment e;
  std::string_view name;
};

constexpr NamedExperiment kExperiments[] = {
    {Experiment::thm21_dist, "thm21_dist"}, {Experiment::thm21_cover, "thm21_cover"},
    {Experiment::cor21, "cor21"},           {Experiment::thm11, "thm11"},
    {Experiment::thm31, "thm31"},           {Experiment::thm32, "thm32"},
    {Experiment::thm33, "thm33"},           {Experiment::prop42, "prop42"},
    {Experiment::bk_rate, "bk_rate"},       {Experiment::cr_rate, "cr_rate"},
    {Experiment::radius_gap, "radius_gap"}, {Experiment::conj412, "conj412"},
};

// Replicate tasks are independent and write into their own slot, so the
// outcome does not depend on the worker count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct RowValue {
  double h = 0.0;
  std::string label;
  double statistic = 0.0;
  bool valid = true;
  std::string error;
};

using RowsPerReplicate = std::vector<RowValue>;

RowValue invalid_row(double h, std::string label, const std::exception& e) {
  RowValue r;
  r.h = h;
  r.label = std::move(label);
  r.statistic = std::numeric_limits<double>::quiet_NaN();
  r.valid = false;
  r.error = e.what();
  return r;
}

// Anchor grid with stride h/t_stride, both endpoints included. Finer strides
// refine this grid in place, so sup statistics can only grow with t_stride.
std::vector<double> anchor_grid(double lo, double hi, double step) {
  if (!(lo <= hi) || !(step > 0.0)) throw std::domain_error("anchor grid: empty t range");
  std::vector<double> t;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step));
  t.reserve(count + 2);
  for (std::size_t j = 0; j <= count; ++j) t.push_back(lo + step * static_cast<double>(j));
  if (t.back() < hi) t.push_back(hi);
  return t;
}

double sqrt_norm(double h) { return std::sqrt(2.0 * h * std::log(1.0 / h)); }

// --- per-experiment replicate workers -------------------------------------

RowsPerReplicate rows_ball_distance(const Sample& sample, const DistributionModel* model,
                                    const ExperimentConfig& cfg, double n,
                                    const std::vector<double>& h_grid, ProcessKind kind) {
  RowsPerReplicate rows;
  const auto grid = symmetric_grid(cfg.s_grid_size);
  for (double h : h_grid) {
    try {
      double lo_t = h, hi_t = 1.0 - h;
      if (kind == ProcessKind::normed_quantile) std::tie(lo_t, hi_t) = t_range(n, h);
      double sup = 0.0;
      for (double t : anchor_grid(lo_t, hi_t, h / cfg.t_stride)) {
        IncrementField field = increment_field(sample, model, h, t, grid, kind);
        GridFunction phi{field.s_grid, std::move(field.values)};
        if (sup_norm(phi) <= sup) continue;
        if (!strassen_distance_exceeds(phi, sup)) continue;
        sup = std::max(sup, strassen_distance(phi).distance);
      }
      rows.push_back({h, "", sup, true, ""});
    } catch (const std::exception& e) {
      rows.push_back(invalid_row(h, "", e));
    }
  }
  return rows;
}

RowsPerReplicate rows_coverage(const Sample& sample, const ExperimentConfig& cfg,
                               const std::vector<double>& h_grid) {
  RowsPerReplicate rows;
  const auto grid = symmetric_grid(cfg.s_grid_size);
  const auto elements = strassen_test_elements(5, cfg.s_grid_size);
  for (double h : h_grid) {
    try {
      std::vector<double> infs(elements.size(), std::numeric_limits<double>::infinity());
      for (double t : anchor_grid(cfg.c1, cfg.c2, h / cfg.t_stride)) {
        IncrementField field = increment_field(sample, nullptr, h, t, grid, ProcessKind::quantile);
        for (std::size_t g = 0; g < elements.size(); ++g) {
          double dist = 0.0;
          const auto& gv = elements[g].second.values;
          for (std::size_t i = 0; i < gv.size(); ++i) {
            dist = std::max(dist, std::abs(field.values[i] - gv[i]));
          }
          infs[g] = std::min(infs[g], dist);
        }
      }
      for (std::size_t g = 0; g < elements.size(); ++g) {
        rows.push_back({h, elements[g].first, infs[g], true, ""});
      }
    } catch (const std::exception& e) {
      for (const auto& el : elements) rows.push_back(invalid_row(h, el.first, e));
    }
  }
  return rows;
}

// Oscillation maxima evaluated directly on the order statistics; anchors are
// the stride grid plus every quantile jump in range, nodes are the s grid.
RowsPerReplicate rows_oscillation(const Sample& sample, const ExperimentConfig& cfg,
                                  const std::vector<double>& h_grid, bool one_sided_drifted) {
  RowsPerReplicate rows;
  const std::size_t n = sample.n();
  const double nd = static_cast<double>(n);
  const double sqrtn = std::sqrt(nd);
  const auto& os = sample.order_stats;
  auto quantile_at = [&](double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return os.back();
    return os[detail::quantile_index(n, u) - 1];
  };

  std::vector<double> s_nodes = symmetric_grid(cfg.s_grid_size);
  if (one_sided_drifted) {
    s_nodes.erase(s_nodes.begin(),
                  std::find_if(s_nodes.begin(), s_nodes.end(), [](double s) { return s >= 0.0; }));
  }

  for (double h : h_grid) {
    try {
      const double lo_t = one_sided_drifted ? 0.0 : h;
      const double hi_t = 1.0 - h;
      if (!(lo_t <= hi_t)) throw std::domain_error("oscillation: empty t range");
      const double norm = sqrt_norm(h);
      double sup = 0.0;
      auto scan_anchor = [&](double t) {
        const double base = quantile_at(t) - t;
        for (double s : s_nodes) {
          if (s == 0.0) continue;
          const double u = t + h * s;
          const double inc = (quantile_at(u) - u) - base;
          const double v = std::abs(inc);
          if (v > sup) sup = v;
        }
      };
      for (double t : anchor_grid(lo_t, hi_t, h / cfg.t_stride)) scan_anchor(t);
      const std::int64_t j_lo = std::max<std::int64_t>(1, detail::ceil_scaled(nd, lo_t));
      const std::int64_t j_hi = std::min<std::int64_t>(static_cast<std::int64_t>(n),
                                                       detail::floor_scaled(nd, hi_t));
      for (std::int64_t j = j_lo; j <= j_hi; ++j) scan_anchor(static_cast<double>(j) / nd);
      rows.push_back({h, "", sqrtn * sup / norm, true, ""});
    } catch (const std::exception& e) {
      rows.push_back(invalid_row(h, "", e));
    }
  }
  return rows;
}

RowsPerReplicate rows_spacings(const Sample& sample, const DistributionModel* model,
                               const std::vector<double>& h_grid, double n,
                               SpacingStatKind kind) {
  RowsPerReplicate rows;
  std::vector<double> envelope;  // running max of the per-k maxima
  std::size_t d_max = 0;
  try {
    for (double h : h_grid) {
      d_max = std::max(d_max, static_cast<std::size_t>(detail::ceil_scaled(n, h)));
    }
    const auto maxima = kind == SpacingStatKind::uniform_deviation
                            ? uniform_spacing_maxima(sample, d_max)
                            : restricted_spacing_maxima(sample, *model, d_max);
    envelope.assign(d_max, 0.0);
    double running = 0.0;
    std::size_t at = 0;
    for (std::size_t d = 1; d <= d_max; ++d) {
      while (at < maxima.size() && maxima[at].k <= d) running = std::max(running, maxima[at++].value);
      envelope[d - 1] = running;
    }
  } catch (const std::exception& e) {
    for (double h : h_grid) rows.push_back(invalid_row(h, "", e));
    return rows;
  }
  for (double h : h_grid) {
    const auto d = static_cast<std::size_t>(detail::ceil_scaled(n, h));
    rows.push_back({h, "", std::sqrt(n) * envelope[d - 1] / sqrt_norm(h), true, ""});
  }
  return rows;
}

RowsPerReplicate rows_bk_rate(const Sample& sample, double n) {
  const double denom =
      std::pow(n, -0.25) * std::sqrt(std::log(n)) * std::pow(iterated_log(n), 0.25);
  return {{0.0, "", bahadur_kiefer_gap(sample) / denom, true, ""}};
}

RowsPerReplicate rows_cr_rate(const Sample& sample, const DistributionModel& model, double n) {
  const double denom = iterated_log(n) / std::sqrt(n);
  return {{0.0, "", normed_quantile_gap(sample, model) / denom, true, ""}};
}

RowsPerReplicate rows_radius_gap(const Sample& sample, const DistributionModel& model,
                                 const ExperimentConfig& cfg, double n,
                                 const std::vector<double>& h_grid) {
  RowsPerReplicate rows;
  std::vector<double> x_grid;
  try {
    const auto [u1, u2] = empirical_interval(sample, cfg.t1, cfg.t2);
    if (!(u1 < u2)) throw std::runtime_error("radius_gap: empirical interval collapsed");
    for (int i = 0; i < cfg.x_grid_size; ++i) {
      x_grid.push_back(u1 + (u2 - u1) * static_cast<double>(i) / (cfg.x_grid_size - 1));
    }
  } catch (const std::exception& e) {
    for (double h : h_grid) rows.push_back(invalid_row(h, "", e));
    return rows;
  }
  for (double h : h_grid) {
    try {
      const double k[] = {n * h};
      rows.push_back({h, "", radius_gap(sample, model, k, x_grid), true, ""});
    } catch (const std::exception& e) {
      rows.push_back(invalid_row(h, "", e));
    }
  }
  return rows;
}

// --- config plumbing -------------------------------------------------------

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty()) throw std::invalid_argument("config: n_list is empty");
  for (double n : cfg.n_list) {
    if (!(n >= 1.0)) throw std::invalid_argument("config: n must be >= 1");
  }
  if (cfg.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (cfg.s_grid_size < 3 || cfg.s_grid_size % 2 == 0)
    throw std::invalid_argument("config: s_grid_size must be odd and >= 3");
  if (cfg.t_stride < 1) throw std::invalid_argument("config: t_stride must be >= 1");
  if (cfg.x_grid_size < 2) throw std::invalid_argument("config: x_grid_size must be >= 2");
  if (!(0.0 <= cfg.c1 && cfg.c1 < cfg.c2 && cfg.c2 <= 1.0))
    throw std::invalid_argument("config: need 0 <= c1 < c2 <= 1");
  if (!(0.0 < cfg.t1 && cfg.t1 < cfg.t2 && cfg.t2 < 1.0))
    throw std::invalid_argument("config: need 0 < t1 < t2 < 1");
  const bool centering = cfg.experiment == Experiment::thm33 || cfg.experiment == Experiment::prop42;
  if (centering && cfg.replicates < 2)
    throw std::invalid_argument("config: centering experiments need >= 2 replicates");
  if (centering && cfg.kernel.empty())
    throw std::invalid_argument("config: density experiments need a kernel");
  const bool uniform_only =
      cfg.experiment == Experiment::thm21_dist || cfg.experiment == Experiment::thm21_cover ||
      cfg.experiment == Experiment::cor21 || cfg.experiment == Experiment::thm31 ||
      cfg.experiment == Experiment::bk_rate || cfg.experiment == Experiment::conj412;
  if (uniform_only && cfg.model != "uniform")
    throw std::invalid_argument("config: this experiment is defined for the uniform model");
}

}  // namespace

std::string_view experiment_name(Experiment e) {
  for (const auto& ne : kExperiments) {
    if (ne.e == e) return ne.name;
  }
  throw std::logic_error("experiment_name: unknown experiment");
}

Experiment experiment_from_name(std::string_view name) {
  for (const auto& ne : kExperiments) {
    if (ne.name == name) return ne.e;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(name));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replicate) {
  using detail::splitmix64;
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ replicate);
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  const BandwidthPlan plan = make_plan(cfg.plan);
  const DistributionModel& model = model_by_name(cfg.model);
  const DistributionModel& uniform = model_by_name("uniform");
  const Kernel* kernel = cfg.kernel.empty() ? nullptr : &kernel_by_name(cfg.kernel);

  ExperimentReport report;
  report.config = cfg;
  report.version = std::string(kLibraryVersion);

  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);

  for (double n : cfg.n_list) {
    const std::size_t nsz = static_cast<std::size_t>(n);
    const bool bandwidth_free =
        cfg.experiment == Experiment::bk_rate || cfg.experiment == Experiment::cr_rate;
    const std::vector<double> h_grid =
        bandwidth_free ? std::vector<double>{0.0} : bandwidth_grid(plan, n);

    std::vector<std::uint64_t> seeds(reps);
    for (std::size_t r = 0; r < reps; ++r) seeds[r] = derive_seed(cfg.master_seed, nsz, r);

    std::vector<RowsPerReplicate> results(reps);

    if (cfg.experiment == Experiment::thm33 || cfg.experiment == Experiment::prop42) {
      // Centering experiments share one x grid across replicates.
      std::vector<Sample> samples(reps);
      parallel_for(reps, cfg.threads,
                   [&](std::size_t r) { samples[r] = generate_sample(model, nsz, seeds[r]); });
      double xlo = 0.0, xhi = 0.0;
      if (cfg.experiment == Experiment::thm33) {
        // Common random interval: intersection of the per-replicate ones.
        xlo = -std::numeric_limits<double>::infinity();
        xhi = std::numeric_limits<double>::infinity();
        for (const auto& s : samples) {
          const auto [u1, u2] = empirical_interval(s, cfg.t1, cfg.t2);
          xlo = std::max(xlo, u1);
          xhi = std::min(xhi, u2);
        }
      } else {
        xlo = model.quantile(cfg.t1);
        xhi = model.quantile(cfg.t2);
      }
      if (!(xlo < xhi)) throw std::runtime_error("density experiment: empty x interval");
      std::vector<double> x_grid(cfg.x_grid_size);
      for (int i = 0; i < cfg.x_grid_size; ++i) {
        x_grid[i] = xlo + (xhi - xlo) * static_cast<double>(i) / (cfg.x_grid_size - 1);
      }
      for (std::size_t r = 0; r < reps; ++r) results[r].reserve(h_grid.size());
      for (double h : h_grid) {
        try {
          const CenteredStatResult stat =
              cfg.experiment == Experiment::thm33
                  ? nn_statistic(samples, model, *kernel, n * h, x_grid)
                  : pr_statistic(samples, model, *kernel, h, x_grid);
          for (std::size_t r = 0; r < reps; ++r) {
            results[r].push_back({h, cfg.kernel, stat.per_replicate[r], true, ""});
          }
        } catch (const std::exception& e) {
          for (std::size_t r = 0; r < reps; ++r) results[r].push_back(invalid_row(h, cfg.kernel, e));
        }
      }
    } else {
      parallel_for(reps, cfg.threads, [&](std::size_t r) {
        Sample sample = generate_sample(
            cfg.experiment == Experiment::thm11 || cfg.experiment == Experiment::thm32 ||
                    cfg.experiment == Experiment::cr_rate ||
                    cfg.experiment == Experiment::radius_gap
                ? model
                : uniform,
            nsz, seeds[r]);
        switch (cfg.experiment) {
          case Experiment::thm21_dist:
            results[r] = rows_ball_distance(sample, nullptr, cfg, n, h_grid, ProcessKind::quantile);
            break;
          case Experiment::thm11:
            results[r] =
                rows_ball_distance(sample, &model, cfg, n, h_grid, ProcessKind::normed_quantile);
            break;
          case Experiment::thm21_cover:
            results[r] = rows_coverage(sample, cfg, h_grid);
            break;
          case Experiment::cor21:
            results[r] = rows_oscillation(sample, cfg, h_grid, false);
            break;
          case Experiment::conj412:
            results[r] = rows_oscillation(sample, cfg, h_grid, true);
            break;
          case Experiment::thm31:
            results[r] = rows_spacings(sample, nullptr, h_grid, n, SpacingStatKind::uniform_deviation);
            break;
          case Experiment::thm32:
            results[r] =
                rows_spacings(sample, &model, h_grid, n, SpacingStatKind::restricted_deviation);
            break;
          case Experiment::bk_rate:
            results[r] = rows_bk_rate(sample, n);
            break;
          case Experiment::cr_rate:
            results[r] = rows_cr_rate(sample, model, n);
            break;
          case Experiment::radius_gap:
            results[r] = rows_radius_gap(sample, model, cfg, n, h_grid);
            break;
          default:
            throw std::logic_error("run_experiment: unhandled experiment");
        }
      });
    }

    // Deterministic layout: rows sorted by (n, h, label, replicate).
    const std::size_t per_rep = results.empty() ? 0 : results[0].size();
    for (std::size_t r = 0; r < reps; ++r) {
      if (results[r].size() != per_rep)
        throw std::logic_error("run_experiment: ragged replicate results");
    }
    std::vector<std::size_t> order(per_rep);
    for (std::size_t i = 0; i < per_rep; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (results[0][a].h != results[0][b].h) return results[0][a].h < results[0][b].h;
      return results[0][a].label < results[0][b].label;
    });
    for (std::size_t idx : order) {
      for (std::size_t r = 0; r < reps; ++r) {
        const RowValue& v = results[r][idx];
        ReportRow row;
        row.n = n;
        row.h = v.h;
        row.label = v.label;
        row.replicate = static_cast<int>(r);
        row.seed = seeds[r];
        row.statistic = v.statistic;
        row.valid = v.valid;
        row.error = v.error;
        report.rows.push_back(std::move(row));
      }
    }
  }

  // Aggregates per (n, h, label) over valid rows.
  std::map<std::tuple<double, double, std::string>, std::vector<const ReportRow*>> groups;
  for (const auto& row : report.rows) groups[{row.n, row.h, row.label}].push_back(&row);
  for (const auto& [key, rows] : groups) {
    Aggregate agg;
    agg.n = std::get<0>(key);
    agg.h = std::get<1>(key);
    agg.label = std::get<2>(key);
    std::vector<double> vals;
    for (const ReportRow* r : rows) {
      if (r->valid) vals.push_back(r->statistic);
      else ++agg.invalid_count;
    }
    agg.valid_count = static_cast<int>(vals.size());
    if (!vals.empty()) {
      agg.median = median_of(vals);
      agg.min = *std::min_element(vals.begin(), vals.end());
      agg.max = *std::max_element(vals.begin(), vals.end());
    } else {
      agg.median = agg.min = agg.max = std::numeric_limits<double>::quiet_NaN();
    }
    report.aggregates.push_back(std::move(agg));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qproc
