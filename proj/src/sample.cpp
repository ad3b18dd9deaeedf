#include "qproc/sample.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qproc {

Sample make_sample(std::vector<double> values, std::string source_model, std::uint64_t seed) {
  if (values.empty()) throw std::invalid_argument("make_sample: empty sample");
  Sample s;
  s.values = std::move(values);
  s.order_stats = s.values;
  std::sort(s.order_stats.begin(), s.order_stats.end());
  s.source_model = std::move(source_model);
  s.seed = seed;
  return s;
}

Sample generate_sample(const DistributionModel& model, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("generate_sample: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    values[i] = model.quantile(u);
  }
  return make_sample(std::move(values), model.name, seed);
}

std::vector<double> recovered_uniform_order_stats(const Sample& sample,
                                                  const DistributionModel& model) {
  std::vector<double> u(sample.order_stats.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = model.cdf(sample.order_stats[i]);
  return u;
}

void save_sample(const Sample& sample, std::ostream& os) {
  os << "# n=" << sample.n() << " model=" << (sample.source_model.empty() ? "-" : sample.source_model)
     << " seed=" << sample.seed << "\n";
  char buf[64];
  for (double v : sample.values) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    os << buf;
  }
}

void save_sample(const Sample& sample, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_sample: cannot open " + path);
  save_sample(sample, os);
  if (!os) throw std::runtime_error("save_sample: write failed for " + path);
}

Sample load_sample(std::istream& is) {
  std::vector<double> values;
  std::string model;
  std::uint64_t seed = 0;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("model=", 0) == 0 && tok != "model=-") model = tok.substr(6);
        if (tok.rfind("seed=", 0) == 0) seed = std::stoull(tok.substr(5));
      }
      continue;
    }
    values.push_back(std::stod(line));
  }
  return make_sample(std::move(values), std::move(model), seed);
}

Sample load_sample(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_sample: cannot open " + path);
  return load_sample(is);
}

}  // namespace qproc
