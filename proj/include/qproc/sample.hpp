#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qproc/distributions.hpp"

namespace qproc {

// A batch of n draws with cached order statistics. Immutable after
// construction; every empirical object is computed from it.
struct Sample {
  std::vector<double> values;       // generation order
  std::vector<double> order_stats;  // same values, sorted ascending
  std::string source_model;         // empty when unknown
  std::uint64_t seed = 0;

  std::size_t n() const { return values.size(); }
};

Sample make_sample(std::vector<double> values, std::string source_model = {},
                   std::uint64_t seed = 0);

// Inverse-transform sampling: uniforms from a seeded mt19937_64 mapped
// through the model quantile. The mapping ((x >> 11) + 0.5) * 2^-53 keeps
// the uniforms strictly inside (0,1) and is identical on every platform.
Sample generate_sample(const DistributionModel& model, std::size_t n, std::uint64_t seed);

// Sorted uniforms underlying an inverse-transform sample, recovered as
// F(X_(i)). Exact for the uniform model, within an ulp otherwise.
std::vector<double> recovered_uniform_order_stats(const Sample& sample,
                                                  const DistributionModel& model);

// Plain text, one value per line, header comment carrying n/model/seed.
void save_sample(const Sample& sample, std::ostream& os);
void save_sample(const Sample& sample, const std::string& path);
Sample load_sample(std::istream& is);
Sample load_sample(const std::string& path);

}  // namespace qproc
