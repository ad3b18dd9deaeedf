#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace qproc {

// log_+ x = log(x v e). Exactly 1 for x <= e.
inline double log_plus(double x) {
  return x > std::numbers::e ? std::log(x) : 1.0;
}

// Iterated logarithm log_+ log_+ x. Equals 1 for x <= e^e.
inline double iterated_log(double x) {
  return log_plus(log_plus(x));
}

namespace detail {

// Ceiling of the exact product n*t under the convention
// ceil(x) >= x > ceil(x) - 1. The fma residual recovers the rounding error
// of the product; products within a few ulps of an integer snap to that
// integer, so t = i/n maps to i even though fl(i/n) is inexact.
inline std::int64_t ceil_scaled(double n, double t) {
  const double p = n * t;
  const double r = std::fma(n, t, -p);  // exact product = p + r
  const double nearest = std::round(p);
  const double snap =
      32.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(p), 1.0);
  if (std::abs((p - nearest) + r) <= snap) return static_cast<std::int64_t>(nearest);
  double c = std::ceil(p);
  if (c - p < r) c += 1.0;                 // exact product lies above c
  else if ((c - 1.0) - p >= r) c -= 1.0;   // exact product lies at or below c-1
  return static_cast<std::int64_t>(c);
}

// Floor counterpart of ceil_scaled, same snapping rule.
inline std::int64_t floor_scaled(double n, double t) {
  const double p = n * t;
  const double r = std::fma(n, t, -p);
  const double nearest = std::round(p);
  const double snap =
      32.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(p), 1.0);
  if (std::abs((p - nearest) + r) <= snap) return static_cast<std::int64_t>(nearest);
  double f = std::floor(p);
  if (f - p > r) f -= 1.0;                 // exact product lies below f
  else if ((f + 1.0) - p <= r) f += 1.0;   // exact product lies at or above f+1
  return static_cast<std::int64_t>(f);
}

// Order-statistic index for the quantile function: smallest i in [1, n]
// with i/n >= t, for t in (0, 1].
inline std::size_t quantile_index(std::size_t n, double t) {
  const std::int64_t i = ceil_scaled(static_cast<double>(n), t);
  return static_cast<std::size_t>(std::clamp<std::int64_t>(i, 1, static_cast<std::int64_t>(n)));
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail
}  // namespace qproc
