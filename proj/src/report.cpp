#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qproc/harness.hpp"

namespace qproc {

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["experiment"] = std::string(experiment_name(c.experiment));
  j["model"] = c.model;
  j["kernel"] = c.kernel;
  j["n_list"] = c.n_list;
  j["h_lo_coeff"] = c.plan.lo_coeff;
  j["h_lo_exp"] = c.plan.lo_exp;
  j["h_hi_coeff"] = c.plan.hi_coeff;
  j["h_hi_exp"] = c.plan.hi_exp;
  j["grid_ratio"] = c.plan.grid_ratio;
  j["replicates"] = c.replicates;
  j["master_seed"] = c.master_seed;
  j["s_grid_size"] = c.s_grid_size;
  j["t_stride"] = c.t_stride;
  j["x_grid_size"] = c.x_grid_size;
  j["c1"] = c.c1;
  j["c2"] = c.c2;
  j["t1"] = c.t1;
  j["t2"] = c.t2;
  return j;
}

}  // namespace

void write_report_csv(const ExperimentReport& report, std::ostream& os) {
  os << "experiment,model,kernel,n,h,replicate,statistic,valid,seed\n";
  const std::string name(experiment_name(report.config.experiment));
  for (const auto& row : report.rows) {
    os << name << ',' << report.config.model << ',' << row.label << ',' << num17(row.n) << ','
       << num17(row.h) << ',' << row.replicate << ',' << num17(row.statistic) << ','
       << (row.valid ? 1 : 0) << ',' << row.seed << '\n';
  }
}

void write_report_json(const ExperimentReport& report, std::ostream& os) {
  nlohmann::ordered_json j;
  j["config"] = config_json(report.config);
  j["library_version"] = report.version;
  j["wall_seconds"] = report.wall_seconds;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["h"] = row.h;
    r["label"] = row.label;
    r["replicate"] = row.replicate;
    r["seed"] = row.seed;
    if (std::isnan(row.statistic)) r["statistic"] = nullptr;
    else r["statistic"] = row.statistic;
    r["valid"] = row.valid;
    if (!row.error.empty()) r["error"] = row.error;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  auto aggs = nlohmann::ordered_json::array();
  for (const auto& a : report.aggregates) {
    nlohmann::ordered_json ja;
    ja["n"] = a.n;
    ja["h"] = a.h;
    ja["label"] = a.label;
    if (a.valid_count > 0) {
      ja["median"] = a.median;
      ja["min"] = a.min;
      ja["max"] = a.max;
    } else {
      ja["median"] = nullptr;
      ja["min"] = nullptr;
      ja["max"] = nullptr;
    }
    ja["valid_count"] = a.valid_count;
    ja["invalid_count"] = a.invalid_count;
    aggs.push_back(std::move(ja));
  }
  j["aggregates"] = std::move(aggs);
  os << j.dump(2) << '\n';
}

void write_report(const ExperimentReport& report, const std::string& format,
                  const std::string& path) {
  auto emit = [&](std::ostream& os) {
    if (format == "csv") write_report_csv(report, os);
    else if (format == "json") write_report_json(report, os);
    else throw std::invalid_argument("write_report: format must be csv or json");
  };
  if (path.empty() || path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_report: cannot open " + path);
  emit(os);
  if (!os) throw std::runtime_error("write_report: write failed for " + path);
}

std::string report_csv_string(const ExperimentReport& report) {
  std::ostringstream os;
  write_report_csv(report, os);
  return os.str();
}

namespace {

std::vector<double> parse_n_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(std::istream& is) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, value;
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      key = line.substr(0, eq);
      value = line.substr(eq + 1);
    } else {
      std::istringstream ls(line);
      ls >> key;
      std::getline(ls, value);
    }
    auto trim = [](std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    trim(key);
    trim(value);
    if (key.empty()) continue;
    try {
      if (key == "experiment") cfg.experiment = experiment_from_name(value);
      else if (key == "model") cfg.model = value;
      else if (key == "kernel") cfg.kernel = value;
      else if (key == "n_list") cfg.n_list = parse_n_list(value);
      else if (key == "replicates") cfg.replicates = std::stoi(value);
      else if (key == "master_seed") cfg.master_seed = std::stoull(value);
      else if (key == "h_lo_coeff") cfg.plan.lo_coeff = std::stod(value);
      else if (key == "h_lo_exp") cfg.plan.lo_exp = std::stod(value);
      else if (key == "h_hi_coeff") cfg.plan.hi_coeff = std::stod(value);
      else if (key == "h_hi_exp") cfg.plan.hi_exp = std::stod(value);
      else if (key == "grid_ratio") cfg.plan.grid_ratio = std::stod(value);
      else if (key == "s_grid_size") cfg.s_grid_size = std::stoi(value);
      else if (key == "t_stride") cfg.t_stride = std::stoi(value);
      else if (key == "x_grid_size") cfg.x_grid_size = std::stoi(value);
      else if (key == "c1") cfg.c1 = std::stod(value);
      else if (key == "c2") cfg.c2 = std::stod(value);
      else if (key == "t1") cfg.t1 = std::stod(value);
      else if (key == "t2") cfg.t2 = std::stod(value);
      else if (key == "threads") cfg.threads = std::stoi(value);
      else throw std::invalid_argument("unknown key");
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + " (" + key +
                                  "): " + e.what());
    }
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file: " + path);
  return load_config(is);
}

}  // namespace qproc
