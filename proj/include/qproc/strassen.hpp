#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qproc {

// Piecewise-linear real function on a strictly increasing node grid over
// [-1,1] that contains 0.
struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;
};

GridFunction make_grid_function(std::vector<double> nodes, std::vector<double> values);

// Exact Dirichlet energy of the piecewise-linear interpolant,
// sum over segments of (dv)^2/dx.
double dirichlet_energy(const GridFunction& g);

// sup_{-1<=s<=1} |g(s)|; extrema of a piecewise-linear function sit at nodes.
double sup_norm(const GridFunction& g);

// sup over s >= 0 only.
double sup_norm_plus(const GridFunction& g);

double sup_norm_diff(const GridFunction& a, const GridFunction& b);

// Membership in the Strassen ball: |g(0)| <= tol and energy <= 1 + tol.
bool in_strassen_ball(const GridFunction& g, double tol);

struct TubeResult {
  double min_energy = 0.0;
  GridFunction path;
};

// Minimal Dirichlet energy over piecewise-linear paths on the node grid with
// lower <= g <= upper nodewise and g(0) = 0, solved independently on each
// side of 0 (pinned at 0, free far endpoint) and summed. Throws if the tube
// excludes 0 at the pin.
TubeResult taut_string_min_energy(const GridFunction& lower, const GridFunction& upper);

struct StrassenQueryResult {
  double distance = 0.0;
  GridFunction witness;      // nearest admissible path found
  int iterations = 0;        // bisection steps
  double energy_of_witness = 0.0;
};

// Smallest eps (bisection, absolute tolerance 1e-6) such that the tube
// phi -/+ eps admits a path of energy <= 1: the sup-norm distance from phi
// to the Strassen ball, restricted to the node grid. phi(0) must be 0.
StrassenQueryResult strassen_distance(const GridFunction& phi);

// One feasibility probe: true iff the distance from phi exceeds eps.
bool strassen_distance_exceeds(const GridFunction& phi, double eps);

// m distinct ball members on a symmetric grid: zero, lines of slope
// +-1/sqrt(2), the unit-slope ramp on [0,1], a symmetric hat, then scaled
// lines. Each carries a short label for reports.
std::vector<std::pair<std::string, GridFunction>> strassen_test_elements(std::size_t m,
                                                                         std::size_t grid_size = 65);

// sup of ||g|| over the ball (attained by a full-budget one-sided ramp).
inline double strassen_sup_norm_bound() { return 1.0; }

}  // namespace qproc
