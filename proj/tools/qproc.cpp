#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qproc/bandwidth.hpp"
#include "qproc/density.hpp"
#include "qproc/empirical.hpp"
#include "qproc/harness.hpp"
#include "qproc/numeric.hpp"
#include "qproc/sample.hpp"
#include "qproc/spacings.hpp"
#include "qproc/strassen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

qproc::GridFunction read_grid_function(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::vector<double> nodes, values;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double s, v;
    if (!(ls >> s >> v)) throw std::runtime_error("bad grid function line: " + line);
    nodes.push_back(s);
    values.push_back(v);
  }
  return qproc::make_grid_function(std::move(nodes), std::move(values));
}

int run_main(const std::string& config_path, std::uint64_t seed, bool seed_set, int reps,
             const std::string& out, const std::string& format, int threads) {
  qproc::ExperimentConfig cfg = qproc::load_config_file(config_path);
  if (seed_set) cfg.master_seed = seed;
  if (reps > 0) cfg.replicates = reps;
  if (threads >= 0) cfg.threads = threads;
  const qproc::ExperimentReport report = qproc::run_experiment(cfg);
  qproc::write_report(report, format, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"empirical/quantile process increment statistics"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string run_config, run_out = "-", run_format = "csv";
  std::uint64_t run_seed = 0;
  bool run_seed_set = false;
  int run_reps = 0, run_threads = -1;
  run->add_option("config", run_config, "config file (flat key = value)")->required();
  run->add_option("--seed", run_seed, "override master_seed")->each([&](const std::string&) {
    run_seed_set = true;
  });
  run->add_option("--reps", run_reps, "override replicates");
  run->add_option("--out", run_out, "output path, - for stdout");
  run->add_option("--format", run_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--threads", run_threads, "worker threads, 0 = hardware");

  // check-bandwidths
  auto* check = app.add_subcommand("check-bandwidths", "evaluate bandwidth hypotheses on a plan");
  qproc::PlanSpec check_plan;
  std::string check_n = "10000,100000,1000000";
  check->add_option("--h-lo-coeff", check_plan.lo_coeff, "h' coefficient");
  check->add_option("--h-lo-exp", check_plan.lo_exp, "h' exponent (h' = c n^-e)");
  check->add_option("--h-hi-coeff", check_plan.hi_coeff, "h'' coefficient");
  check->add_option("--h-hi-exp", check_plan.hi_exp, "h'' exponent");
  check->add_option("--ratio", check_plan.grid_ratio, "geometric grid ratio");
  check->add_option("--n", check_n, "comma-separated n list");

  // sample
  auto* smp = app.add_subcommand("sample", "generate and save a sample");
  std::string smp_model = "uniform", smp_out = "-";
  std::uint64_t smp_seed = 1;
  std::size_t smp_n = 1000;
  smp->add_option("--model", smp_model, "model name");
  smp->add_option("--n", smp_n, "sample size")->required();
  smp->add_option("--seed", smp_seed, "generator seed");
  smp->add_option("--out", smp_out, "output path, - for stdout");

  // strassen-dist
  auto* sd = app.add_subcommand("strassen-dist", "sup-norm distance of a grid function to the ball");
  std::string sd_input, sd_witness;
  sd->add_option("input", sd_input, "two-column text file (node, value)")->required();
  sd->add_option("--witness", sd_witness, "write the witness path here");

  // spacings
  auto* sp = app.add_subcommand("spacings", "per-k spacing maxima of a sample");
  sp->set_help_flag("--help", "print help");  // frees --h for the bandwidth
  std::string sp_input, sp_model, sp_out = "-";
  std::size_t sp_k = 0, sp_d = 0;
  double sp_h = 0.0;
  sp->add_option("--input", sp_input, "sample file")->required();
  sp->add_option("--model", sp_model, "model name; empty = uniform spacings");
  sp->add_option("--k", sp_k, "single spacing order");
  sp->add_option("--d", sp_d, "max spacing order");
  sp->add_option("--h", sp_h, "bandwidth; uses d = ceil(n h) and prints the statistic");
  sp->add_option("--out", sp_out, "output path");

  // nn-density
  auto* nd = app.add_subcommand("nn-density", "nearest-neighbor density estimate on a grid");
  std::string nd_input, nd_model = "uniform", nd_kernel = "uniform", nd_out = "-", nd_x;
  std::uint64_t nd_seed = 1;
  std::size_t nd_n = 0;
  std::string nd_k = "10";
  double nd_t1 = 0.25, nd_t2 = 0.75;
  int nd_points = 101;
  nd->add_option("--input", nd_input, "sample file (alternative to --model/--n/--seed)");
  nd->add_option("--model", nd_model, "model name");
  nd->add_option("--n", nd_n, "sample size when generating");
  nd->add_option("--seed", nd_seed, "generator seed when generating");
  nd->add_option("--kernel", nd_kernel, "kernel name");
  nd->add_option("--k", nd_k, "k or comma-separated k list");
  nd->add_option("--x", nd_x, "x grid as lo:hi:count; default from --t1/--t2");
  nd->add_option("--t1", nd_t1, "lower quantile level for the default x grid");
  nd->add_option("--t2", nd_t2, "upper quantile level for the default x grid");
  nd->add_option("--points", nd_points, "default x grid size");
  nd->add_option("--out", nd_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      return run_main(run_config, run_seed, run_seed_set, run_reps, run_out, run_format,
                      run_threads);
    }
    if (check->parsed()) {
      const auto plan = qproc::make_plan(check_plan);
      const auto report = qproc::check_hypotheses(plan, parse_list(check_n));
      std::cout << qproc::format_report(report);
      return kExitOk;
    }
    if (smp->parsed()) {
      const auto& model = qproc::model_by_name(smp_model);
      const qproc::Sample sample = qproc::generate_sample(model, smp_n, smp_seed);
      std::ofstream file;
      qproc::save_sample(sample, smp_out == "-" ? "/dev/stdout" : smp_out);
      return kExitOk;
    }
    if (sd->parsed()) {
      const auto phi = read_grid_function(sd_input);
      const auto result = qproc::strassen_distance(phi);
      std::cout << "distance " << g17(result.distance) << "\n"
                << "witness_energy " << g17(result.energy_of_witness) << "\n"
                << "iterations " << result.iterations << "\n";
      if (!sd_witness.empty()) {
        std::ofstream os(sd_witness);
        if (!os) throw std::runtime_error("cannot open " + sd_witness);
        for (std::size_t i = 0; i < result.witness.nodes.size(); ++i) {
          os << g17(result.witness.nodes[i]) << ' ' << g17(result.witness.values[i]) << '\n';
        }
      }
      return kExitOk;
    }
    if (sp->parsed()) {
      const qproc::Sample sample = qproc::load_sample(sp_input);
      const qproc::DistributionModel* model =
          sp_model.empty() ? nullptr : &qproc::model_by_name(sp_model);
      std::size_t d = sp_d;
      if (sp_h > 0.0) {
        d = static_cast<std::size_t>(
            qproc::detail::ceil_scaled(static_cast<double>(sample.n()), sp_h));
      } else if (sp_k > 0) {
        d = sp_k;
      }
      if (d == 0) throw std::invalid_argument("spacings: give one of --k, --d, --h");
      auto maxima = model ? qproc::restricted_spacing_maxima(sample, *model, d)
                          : qproc::uniform_spacing_maxima(sample, d);
      if (sp_k > 0 && sp_h == 0.0) {
        maxima.erase(std::remove_if(maxima.begin(), maxima.end(),
                                    [&](const auto& m) { return m.k != sp_k; }),
                     maxima.end());
      }
      std::ofstream file;
      std::ostream& os = open_out(file, sp_out);
      os << "k,i_argmax,value\n";
      for (const auto& m : maxima) os << m.k << ',' << m.argmax_i << ',' << g17(m.value) << '\n';
      if (sp_h > 0.0) {
        const double stat = qproc::normalized_spacing_statistic(
            sample, model, sp_h,
            model ? qproc::SpacingStatKind::restricted_deviation
                  : qproc::SpacingStatKind::uniform_deviation);
        os << "# statistic " << g17(stat) << '\n';
      }
      return kExitOk;
    }
    if (nd->parsed()) {
      const auto& model = qproc::model_by_name(nd_model);
      const auto& kernel = qproc::kernel_by_name(nd_kernel);
      if (nd_input.empty() && nd_n == 0)
        throw std::invalid_argument("nn-density: give --input or --n");
      qproc::Sample sample = nd_input.empty()
                                 ? qproc::generate_sample(model, nd_n, nd_seed)
                                 : qproc::load_sample(nd_input);
      std::vector<double> x_grid;
      if (!nd_x.empty()) {
        double lo, hi;
        int count;
        if (std::sscanf(nd_x.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 2)
          throw std::invalid_argument("nn-density: --x must be lo:hi:count");
        for (int i = 0; i < count; ++i) x_grid.push_back(lo + (hi - lo) * i / (count - 1));
      } else {
        const auto [u1, u2] = qproc::empirical_interval(sample, nd_t1, nd_t2);
        for (int i = 0; i < nd_points; ++i)
          x_grid.push_back(u1 + (u2 - u1) * i / (nd_points - 1));
      }
      const std::vector<double> ks = parse_list(nd_k);
      std::ofstream file;
      std::ostream& os = open_out(file, nd_out);
      if (ks.size() == 1) os << "x,r_k,fhat,f\n";
      else os << "k,x,r_k,fhat,f\n";
      for (double k : ks) {
        for (double x : x_grid) {
          const double r = qproc::nn_radius(sample, k, x);
          const double fhat = qproc::nn_density(sample, kernel, k, x);
          if (ks.size() > 1) os << g17(k) << ',';
          os << g17(x) << ',' << g17(r) << ',' << g17(fhat) << ',' << g17(model.density(x))
             << '\n';
        }
      }
      return kExitOk;
    }
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
