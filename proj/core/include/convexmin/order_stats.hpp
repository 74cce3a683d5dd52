// Copyright 2026 The convexmin Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONVEXMIN_ORDER_STATS_HPP_
#define CONVEXMIN_ORDER_STATS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "convexmin/process.hpp"

namespace convexmin {

// Empirical ray probabilities P(V > x) and P(V < x) over an x-grid.
// Convergence in the right-order topology means the liminf of P(V_n > x)
// dominates the limit's P(V > x); the left-order topology mirrors this
// with P(V < x). Both probabilities are monotone in x by construction.
struct RayProbabilityTable {
  std::vector<double> x_grid;
  std::vector<double> p_gt;            // non-increasing in x
  std::vector<double> p_lt;            // non-decreasing in x
  std::vector<double> ci_halfwidth;    // 3 binomial standard errors
  std::size_t paths = 0;
};

RayProbabilityTable ray_table(std::span<const double> values,
                              std::vector<double> x_grid);

// Degenerate table of a point mass (the limit law of a unique minimizer).
RayProbabilityTable point_mass_table(double atom, std::vector<double> x_grid);

// Two-sample Kolmogorov-Smirnov statistic: sup |F1 - F2| over the merged
// sample.
double ks_statistic(std::vector<double> a, std::vector<double> b);

struct OrderTestOptions {
  // Additional absolute slack on top of the limit table's 3-SE half-width;
  // covers degenerate limit probabilities (0 or 1) where the binomial SE
  // vanishes. Callers typically pass 3.0 / paths.
  double slack_floor = 0.0;
  // Fraction of the stage list counted as "late"; the liminf surrogate
  // takes tail infima over those stages only.
  double late_fraction = 0.5;
};

struct OrderTestResult {
  std::vector<std::uint8_t> right_pass_at_x, left_pass_at_x;
  double worst_right_margin = 0;  // min over x of tail-inf p_gt - (limit - tol)
  double worst_left_margin = 0;
  bool right_pass = false;
  bool left_pass = false;
  bool combined_pass = false;  // both ray families; the natural-topology claim
};

// Finite-stage surrogate of distributional convergence in the order
// topologies: for each grid x, the tail infimum over late stages of the
// stage ray probability must dominate the limit's up to tolerance.
// Throws GridMismatch when tables disagree on the grid or path count.
OrderTestResult order_convergence_test(std::span<const RayProbabilityTable> stages,
                                       const RayProbabilityTable& limit,
                                       const OrderTestOptions& opts = {});

struct SandwichTestResult {
  OrderTestResult xi_vs_sigma;  // right-order side
  OrderTestResult xi_vs_tau;    // left-order side
  bool sigma_right_pass = false;
  bool tau_left_pass = false;
  // Claimed only when the limit laws of sigma and tau coincide (two-sample
  // KS within threshold, or exact equality for analytic limits).
  std::optional<bool> natural_topology_pass;
  double limit_sigma_tau_ks = 0;
};

// Any selection xi sandwiched between sigma and tau inherits the one-sided
// distributional limits; when sigma(Z) and tau(Z) agree in law, the two
// one-sided statements combine into natural-topology convergence.
SandwichTestResult selection_sandwich_test(std::span<const RayProbabilityTable> xi_stages,
                                           const RayProbabilityTable& limit_sigma,
                                           const RayProbabilityTable& limit_tau,
                                           double limit_sigma_tau_ks,
                                           double ks_equality_threshold,
                                           const OrderTestOptions& opts = {});

// Marginal (and pairwise joint) distribution distances between a stage
// ensemble and a limit-stage ensemble of trajectory values Z(t), t in a
// finite grid from the dense set. Convergence of these finite dimensional
// distributions is the sole hypothesis the distributional argmin
// experiments rely on.
struct FidiTable {
  std::vector<double> t_grid;
  std::vector<double> ks_per_t;
  struct PairDistance {
    double s, t, distance;
  };
  std::vector<PairDistance> pairs;  // joint ECDF distance over a bin grid
};

FidiTable fidi_convergence_probe(const ProcessModel& model,
                                 std::span<const double> t_grid, int stage_n,
                                 int limit_stage_n, int paths,
                                 std::uint64_t seed);

}  // namespace convexmin

#endif  // CONVEXMIN_ORDER_STATS_HPP_
