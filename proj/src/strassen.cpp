#include "qproc/strassen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include "qproc/empirical.hpp"

namespace qproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t zero_index(const std::vector<double>& nodes) {
  const auto it = std::find(nodes.begin(), nodes.end(), 0.0);
  if (it == nodes.end()) throw std::invalid_argument("grid function: 0 is not a node");
  return static_cast<std::size_t>(it - nodes.begin());
}

// Minimal-energy path through the gates (x[i], [lo[i], hi[i]]), pinned to v0
// at x[0], free at the far end. Funnel walk: from the current anchor, keep
// the wedge [smin, smax] of straight-line slopes that clear every gate seen
// so far. When the wedge empties the string bends at the gate that pinched
// it; at the end of the scan the flattest slope in the wedge finishes the
// path (bending again first if 0 is outside the wedge). Each bend advances
// the anchor, so the walk terminates; O(m^2) worst case.
double taut_half(std::span<const double> x, std::span<const double> lo,
                 std::span<const double> hi, double v0, std::span<double> out) {
  const std::size_t m = x.size();
  out[0] = v0;
  double energy = 0.0;
  std::size_t a = 0;
  double va = v0;

  auto emit = [&](std::size_t j, double slope) {
    for (std::size_t i = a + 1; i <= j; ++i) out[i] = va + slope * (x[i] - x[a]);
    energy += slope * slope * (x[j] - x[a]);
    a = j;
    va = std::clamp(out[j], lo[j], hi[j]);
    out[j] = va;
  };

  while (a + 1 < m) {
    double smin = -kInf, smax = kInf;
    std::size_t jmin = a, jmax = a;
    bool bent = false;
    for (std::size_t i = a + 1; i < m; ++i) {
      const double dx = x[i] - x[a];
      const double clo = (lo[i] - va) / dx;
      const double chi = (hi[i] - va) / dx;
      if (clo > smax) {  // lower gate rose above the wedge: wrap on the upper contact
        emit(jmax, smax);
        bent = true;
        break;
      }
      if (chi < smin) {  // upper gate fell below the wedge: wrap on the lower contact
        emit(jmin, smin);
        bent = true;
        break;
      }
      if (chi < smax) { smax = chi; jmax = i; }
      if (clo > smin) { smin = clo; jmin = i; }
    }
    if (bent) continue;
    if (smin <= 0.0 && smax >= 0.0) {
      for (std::size_t i = a + 1; i < m; ++i) out[i] = va;
      break;
    }
    if (smin > 0.0) {
      if (jmin + 1 == m) { emit(jmin, smin); break; }
      emit(jmin, smin);
    } else {
      if (jmax + 1 == m) { emit(jmax, smax); break; }
      emit(jmax, smax);
    }
  }
  return energy;
}

}  // namespace

GridFunction make_grid_function(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() != values.size()) throw std::invalid_argument("grid function: size mismatch");
  if (nodes.size() < 3) throw std::invalid_argument("grid function: need at least 3 nodes");
  if (nodes.front() != -1.0 || nodes.back() != 1.0)
    throw std::invalid_argument("grid function: nodes must span [-1,1]");
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (!(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument("grid function: nodes must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid function: values must be finite");
  }
  zero_index(nodes);
  return GridFunction{std::move(nodes), std::move(values)};
}

double dirichlet_energy(const GridFunction& g) {
  double e = 0.0;
  for (std::size_t i = 1; i < g.nodes.size(); ++i) {
    const double dv = g.values[i] - g.values[i - 1];
    e += dv * dv / (g.nodes[i] - g.nodes[i - 1]);
  }
  return e;
}

double sup_norm(const GridFunction& g) {
  double m = 0.0;
  for (double v : g.values) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm_plus(const GridFunction& g) {
  double m = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.nodes[i] >= 0.0) m = std::max(m, std::abs(g.values[i]));
  }
  return m;
}

double sup_norm_diff(const GridFunction& a, const GridFunction& b) {
  if (a.nodes.size() != b.nodes.size())
    throw std::invalid_argument("sup_norm_diff: node grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  }
  return m;
}

bool in_strassen_ball(const GridFunction& g, double tol) {
  if (tol < 0.0) throw std::invalid_argument("in_strassen_ball: tol < 0");
  const std::size_t z = zero_index(g.nodes);
  return std::abs(g.values[z]) <= tol && dirichlet_energy(g) <= 1.0 + tol;
}

TubeResult taut_string_min_energy(const GridFunction& lower, const GridFunction& upper) {
  if (lower.nodes != upper.nodes)
    throw std::invalid_argument("taut_string_min_energy: node grids differ");
  const std::size_t count = lower.nodes.size();
  for (std::size_t i = 0; i < count; ++i) {
    if (!(lower.values[i] <= upper.values[i]))
      throw std::invalid_argument("taut_string_min_energy: lower exceeds upper");
  }
  const std::size_t z = zero_index(lower.nodes);
  if (!(lower.values[z] <= 0.0 && 0.0 <= upper.values[z]))
    throw std::runtime_error("taut_string_min_energy: tube excludes 0 at the pin");

  std::vector<double> out(count, 0.0);
  double energy = 0.0;

  // Right half, pinned at the zero node.
  {
    const std::size_t m = count - z;
    std::vector<double> vals(m);
    energy += taut_half(std::span(lower.nodes).subspan(z, m),
                        std::span(lower.values).subspan(z, m),
                        std::span(upper.values).subspan(z, m), 0.0, vals);
    for (std::size_t i = 0; i < m; ++i) out[z + i] = vals[i];
  }
  // Left half, mirrored so the pin is again the first node.
  {
    const std::size_t m = z + 1;
    std::vector<double> x(m), lo(m), hi(m), vals(m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = -lower.nodes[z - i];
      lo[i] = lower.values[z - i];
      hi[i] = upper.values[z - i];
    }
    energy += taut_half(x, lo, hi, 0.0, vals);
    for (std::size_t i = 0; i < m; ++i) out[z - i] = vals[i];
  }
  out[z] = 0.0;

  TubeResult r;
  r.min_energy = energy;
  r.path = GridFunction{lower.nodes, std::move(out)};
  return r;
}

namespace {

TubeResult tube_at(const GridFunction& phi, double eps) {
  GridFunction lower{phi.nodes, phi.values};
  GridFunction upper{phi.nodes, phi.values};
  for (auto& v : lower.values) v -= eps;
  for (auto& v : upper.values) v += eps;
  return taut_string_min_energy(lower, upper);
}

}  // namespace

StrassenQueryResult strassen_distance(const GridFunction& phi) {
  const std::size_t z = zero_index(phi.nodes);
  if (phi.values[z] != 0.0)
    throw std::invalid_argument("strassen_distance: phi(0) must be exactly 0");

  StrassenQueryResult result;
  if (in_strassen_ball(phi, 1e-9)) {
    result.distance = 0.0;
    result.witness = phi;
    result.iterations = 0;
    result.energy_of_witness = dirichlet_energy(phi);
    return result;
  }

  double lo = 0.0;
  double hi = sup_norm(phi);  // the zero path is within hi of phi
  TubeResult best = tube_at(phi, hi);
  int iters = 0;
  while (hi - lo > 1e-6) {
    const double mid = lo + 0.5 * (hi - lo);
    TubeResult probe = tube_at(phi, mid);
    ++iters;
    if (probe.min_energy <= 1.0) {
      hi = mid;
      best = std::move(probe);
    } else {
      lo = mid;
    }
  }
  result.distance = hi;
  result.witness = std::move(best.path);
  result.iterations = iters;
  result.energy_of_witness = dirichlet_energy(result.witness);
  return result;
}

bool strassen_distance_exceeds(const GridFunction& phi, double eps) {
  if (eps >= sup_norm(phi)) return false;
  return tube_at(phi, eps).min_energy > 1.0;
}

std::vector<std::pair<std::string, GridFunction>> strassen_test_elements(std::size_t m,
                                                                         std::size_t grid_size) {
  if (m < 1) throw std::invalid_argument("strassen_test_elements: m must be >= 1");
  const std::vector<double> nodes = symmetric_grid(grid_size);
  const double c = 1.0 / std::numbers::sqrt2;

  auto build = [&](auto&& f) {
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
    return GridFunction{nodes, std::move(vals)};
  };

  std::vector<std::pair<std::string, GridFunction>> out;
  out.emplace_back("zero", build([](double) { return 0.0; }));
  if (out.size() < m) out.emplace_back("line+", build([&](double s) { return c * s; }));
  if (out.size() < m) out.emplace_back("line-", build([&](double s) { return -c * s; }));
  if (out.size() < m) out.emplace_back("ramp+", build([](double s) { return std::max(s, 0.0); }));
  if (out.size() < m) {
    // Tent rising to c/2 at |s| = 1/2 and back to 0 at the ends; |slope| = c
    // throughout, so the energy is exactly the full budget.
    out.emplace_back("hat", build([&](double s) {
      const double a = std::abs(s);
      return c * std::min(a, 1.0 - a);
    }));
  }
  std::size_t j = 2;
  while (out.size() < m) {
    const double scale = c / static_cast<double>(j);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    out.emplace_back("line/" + std::to_string(j) + (sign > 0 ? "+" : "-"),
                     build([&](double s) { return sign * scale * s; }));
    ++j;
  }
  return out;
}

}  // namespace qproc
