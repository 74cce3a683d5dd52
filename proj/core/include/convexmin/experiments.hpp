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

#ifndef CONVEXMIN_EXPERIMENTS_HPP_
#define CONVEXMIN_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "convexmin/process.hpp"

namespace convexmin {

/** Monte Carlo diagnostics for almost-sure uniqueness of the minimizer.
 *
 *  Three equivalent characterizations are estimated side by side:
 *   (1) tau = sigma on (almost) every path,
 *   (2) the mean width E[tau - sigma] vanishes,
 *   (3) the membership probability P(x in A(Z)) vanishes for a.e. x.
 *  The bridge between (2) and (3) is the exchange of path-average and
 *  x-integral: the mean width equals the integral of the membership
 *  probability. lhs estimates the left side by the path average, rhs by a
 *  trapezoid rule over the x grid; their gap is bounded by the Monte Carlo
 *  half-width plus the grid-resolution term. Membership is additionally
 *  evaluated through the derivative sign conditions per path (exact), and
 *  the two routes must agree at every grid point.
 */
struct UniquenessReport {
  double lhs = 0;            // mean (tau - sigma) over paths
  double rhs = 0;            // trapezoid integral of P(x in A)
  double mc_halfwidth = 0;   // 3 * SE of lhs
  double grid_term = 0;      // 2 * max grid spacing
  double frac_nonunique = 0; // fraction of paths with tau > sigma
  double max_membership = 0; // max over the grid of P(x in A)
  std::vector<double> x_grid;
  std::vector<double> membership;  // P(x in A) per grid point
  bool clause1_unique = false;
  bool clause2_unique = false;
  bool clause3_unique = false;
  bool clauses_agree = false;
  bool membership_routes_match = false;
  bool fubini_pass = false;  // |lhs - rhs| <= mc_halfwidth + grid_term

  bool unique() const { return clause1_unique && clause2_unique && clause3_unique; }
};

// stage_n is the LAD sample size; ignored by stage-free models. Throws
// GridTooNarrow when the grid edges carry membership probability.
UniquenessReport uniqueness_diagnostics(const ProcessModel& model, int paths,
                                        std::span<const double> x_grid,
                                        std::uint64_t seed, int stage_n = 0);

struct AsExperimentConfig {
  std::vector<int> stages;  // sorted; tail checks use stages >= N/2, N = back()
  int paths = 100;
  std::uint64_t seed = 0;
  SelectionPolicy policy = SelectionPolicy::midpoint();
  // Pathwise slack for the tail inequalities against the population values.
  Rational tail_tol = Rational(1, 1000000000);
  // Per-path bound on |sigma(Z_N) - c| (and tau, xi) for unique populations.
  double unique_tol = 0.05;
};

/** Pathwise (almost-sure mode) argmin experiment on coupled ensembles.
 *
 *  Stages share each path's data stream, so stagewise convergence holds
 *  path by path. Checks, per path: the tail infimum of sigma over late
 *  stages dominates the population sigma, the tail supremum of tau stays
 *  below the population tau, the exact sandwich sigma <= xi <= tau at every
 *  stage, and for unique populations the final-stage closeness of sigma,
 *  tau, and xi to the population minimizer.
 */
struct AsExperimentReport {
  double frac_sigma_tail_ok = 0;
  double frac_tau_tail_ok = 0;
  std::optional<double> frac_unique_ok;  // unique populations only
  bool sandwich_exact = false;
  std::vector<double> mean_sigma, mean_tau, mean_xi;  // per stage, reporting

  bool pass() const {
    return sandwich_exact && frac_sigma_tail_ok == 1.0 && frac_tau_tail_ok == 1.0 &&
           (!frac_unique_ok || *frac_unique_ok == 1.0);
  }
};

AsExperimentReport as_argmin_experiment(const ProcessModel& model,
                                        const AsExperimentConfig& config);

struct InProbabilityConfig {
  std::vector<int> stages;
  std::vector<double> eps_grid;
  int paths = 1000;
  std::uint64_t seed = 0;
  SelectionPolicy policy = SelectionPolicy::midpoint();
  double final_stage_max = 0.01;  // bound on P(|stat - c| > eps) at the last stage
  // Uniqueness pre-check sample (diagnostics run at the largest stage).
  int diagnostic_paths = 2000;
};

/** Convergence-in-probability experiment with independent ensembles per
 *  stage. Requires an a.s.-unique population minimizer; the precondition is
 *  validated through the population min set and, for LAD models, the
 *  uniqueness diagnostics at the largest stage. Throws NonUniqueLimit when
 *  it fails.
 */
struct InProbabilityReport {
  std::vector<int> stages;
  std::vector<double> eps_grid;
  // p_hat[statistic][stage][eps], statistic in {sigma, tau, xi}
  std::vector<std::vector<std::vector<double>>> p_hat;
  std::vector<double> trend_slopes;  // per (statistic, eps), least squares
  bool pass = false;
};

InProbabilityReport in_probability_experiment(const ProcessModel& model,
                                              const InProbabilityConfig& config);

}  // namespace convexmin

#endif  // CONVEXMIN_EXPERIMENTS_HPP_
