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

#ifndef CONVEXMIN_CONVERGENCE_HPP_
#define CONVEXMIN_CONVERGENCE_HPP_

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "convexmin/bisect.hpp"
#include "convexmin/min_set.hpp"
#include "convexmin/oracle.hpp"
#include "convexmin/pwl.hpp"

namespace convexmin {

// A stage of a function sequence: exact PWL or a bracketed oracle.
using StageFunction = std::variant<PwlConvex, ConvexOracle>;

// Sequence (or one-parameter slice of a net) of convex functions together
// with its declared pointwise limit and the dense grid the convergence is
// verified on.
struct FunctionSequence {
  std::function<StageFunction(int)> stage;  // 1-based index
  StageFunction limit;
  std::vector<Rational> dense_grid;  // sorted
};

// Smallest/largest minimizer of a stage: exact for PWL, bisection midpoints
// for oracles. Throws StageFailure when the min set is not compact.
struct SigmaTau {
  Rational sigma;
  Rational tau;
  bool exact = true;
};
SigmaTau stage_sigma_tau(const StageFunction& f, const BisectOptions& opts = {});

// The family witnessing discontinuity of the largest-minimizer functional:
// the limit has the flat bottom [-1, 1]; each stage tilts the right part of
// the bottom upward by slope 1/(n+1) on [0, 1+1/n]. Stages converge
// uniformly, yet the largest minimizer stays at 0 while the limit's is 1.
struct DiscontinuityPair {
  PwlConvex stage;
  PwlConvex limit;
};
DiscontinuityPair discontinuity_family(int n);

// Dyadic rationals k/16 covering [-3, 3]; the default dense grid.
std::vector<Rational> default_dense_grid();

struct SemicontinuityReport {
  std::vector<Rational> sigma, tau;                     // per stage 1..N
  std::vector<Rational> tail_inf_sigma, tail_sup_tau;   // over stages [n, N]
  std::vector<Rational> pointwise_gap;                  // max |f_n - f| on D
  Rational limit_sigma, limit_tau;
  bool limit_unique = false;
  bool all_exact = true;

  bool sigma_clause_pass = false;  // tail-inf sigma >= limit sigma - tol
  bool tau_clause_pass = false;    // tail-sup tau  <= limit tau  + tol
  std::optional<bool> unique_clause_pass;  // only claimed when limit_unique
  double sigma_trend_slope = 0;  // least-squares slope of log error, unique case
  double tau_trend_slope = 0;

  bool pass() const {
    return sigma_clause_pass && tau_clause_pass &&
           (!unique_clause_pass || *unique_clause_pass);
  }
};

// Finite-stage surrogate of the semicontinuity statements: tail infima of
// the smallest minimizer and tail suprema of the largest over [n, N]. The
// full-limit clause is claimed only when the limit has a unique minimizer,
// which is decided from the limit itself, never assumed; that clause also
// demands the final-stage errors below the declared per-family tolerance
// and a non-positive log-error trend.
SemicontinuityReport check_semicontinuity(const FunctionSequence& seq, int stages,
                                          const Rational& tol,
                                          const Rational& unique_stage_tol = Rational(1, 50),
                                          const BisectOptions& oracle_opts = {});

struct UniformConvergenceReport {
  std::vector<double> observed;  // sup |f_n - f| on K per stage
  std::vector<double> bound;     // grid gap + (L_n + L_limit) * cover radius
  std::vector<double> grid_gap;  // max |f_n - f| on D within [a, b]
  double l_limit = 0;
  double cover_radius = 0;
  bool pass = false;  // observed <= bound at the final stage
};

// Verifies that pointwise control on the dense grid plus the certified
// Lipschitz constants bounds the sup-norm gap on K. Exact sup for PWL
// stages (difference extremes sit at breakpoints); probe grid otherwise.
UniformConvergenceReport check_uniform_from_pointwise(const FunctionSequence& seq,
                                                      double k_lo, double k_hi,
                                                      int stages,
                                                      int probe_points = 4096);

// Finite product-ordered index grid standing in for a directed set, with a
// diagonal cofinal chain. Indices are 1-based, enumerated lexicographically.
class NetGrid {
 public:
  explicit NetGrid(std::vector<int> shape);

  const std::vector<int>& shape() const { return shape_; }
  const std::vector<std::vector<int>>& indices() const { return indices_; }
  static bool leq(std::span<const int> a, std::span<const int> b);
  std::vector<std::vector<int>> cofinal_chain() const;

  // min over the upper set {alpha >= from} of a statistic per index.
  Rational tail_inf(const std::function<Rational(std::span<const int>)>& stat,
                    std::span<const int> from) const;
  Rational tail_sup(const std::function<Rational(std::span<const int>)>& stat,
                    std::span<const int> from) const;

 private:
  std::vector<int> shape_;
  std::vector<std::vector<int>> indices_;
};

inline NetGrid net_stage_grid(std::vector<int> shape) { return NetGrid(std::move(shape)); }

}  // namespace convexmin

#endif  // CONVEXMIN_CONVERGENCE_HPP_
