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

#ifndef CONVEXMIN_ORACLE_HPP_
#define CONVEXMIN_ORACLE_HPP_

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "convexmin/pwl.hpp"

namespace convexmin {

/** Black-box access to a function assumed convex.
 *
 *  Carries the evaluation map, an optional bracket [lo, hi] promised to
 *  contain both the smallest and largest minimizer, and an optional
 *  evaluation budget. The budget caps evaluations per operation invocation
 *  (a shared global counter would break immutability and concurrent use).
 *
 *  Convexity is checked, not assumed silently: every operation that samples
 *  difference quotients verifies their monotone approach and throws
 *  ConvexityViolation on contradiction; check_convexity() covers grids.
 */
class ConvexOracle {
 public:
  using Fn = std::function<double(double)>;

  explicit ConvexOracle(Fn eval,
                        std::optional<std::pair<double, double>> bracket = {},
                        std::optional<long> eval_budget = {})
      : eval_(std::move(eval)), bracket_(bracket), eval_budget_(eval_budget) {}

  // Wraps a PWL function; the bracket encloses its compact min set.
  static ConvexOracle from_pwl(const PwlConvex& f, double margin = 1.0);

  double operator()(double t) const { return eval_(t); }
  const std::optional<std::pair<double, double>>& bracket() const { return bracket_; }
  std::optional<long> eval_budget() const { return eval_budget_; }

  ConvexOracle with_bracket(double lo, double hi) const {
    return ConvexOracle(eval_, std::make_pair(lo, hi), eval_budget_);
  }

 private:
  Fn eval_;
  std::optional<std::pair<double, double>> bracket_;
  std::optional<long> eval_budget_;
};

// Strictly decreasing positive step schedule for difference quotients.
// Default: geometric, ratio 1/8, 12 steps, starting at 1.
struct StepSchedule {
  double start = 1.0;
  double ratio = 0.125;
  int count = 12;

  std::vector<double> steps() const;
  static StepSchedule from_steps(std::vector<double> explicit_steps);
  std::vector<double> explicit_steps;  // used when non-empty
};

// Certified enclosure of a one-sided derivative at a point. Quotients
// approach d_plus from above (and d_minus from below), so in general only
// one side is certified; the other is infinite unless a quotient from the
// opposite side of the point was requested.
struct DerivativeBracket {
  enum class Side { kLeft, kRight };

  double lower = 0;
  double upper = 0;
  Side side = Side::kRight;
  double at = 0;
  // Gap between the two smallest-step quotients; a resolution estimate,
  // not a certificate.
  double gap_estimate = 0;
  std::vector<double> quotients;
};

struct BracketOptions {
  StepSchedule schedule;
  double tol_quotient = 1e-9;  // relative slack for the monotonicity check
  // Also evaluate one quotient on the far side of x, which certifies the
  // otherwise-infinite bound via d_minus <= d_plus.
  bool certify_far_side = false;
};

// Difference quotients (f(x+h) - f(x))/h over the schedule. Non-increasing
// as h decreases for convex f; each one upper-bounds d_plus(x), so
// upper = last quotient. lower = -inf unless certify_far_side.
// Throws ConvexityViolation when monotonicity fails beyond tol_quotient and
// BudgetExceeded when the oracle budget is exhausted.
DerivativeBracket d_plus_bracket(const ConvexOracle& f, double x,
                                 const BracketOptions& opts = {});

// Mirror image: quotients (f(x) - f(x-h))/h are non-decreasing as h
// decreases and lower-bound d_minus(x), so lower = last quotient.
DerivativeBracket d_minus_bracket(const ConvexOracle& f, double x,
                                  const BracketOptions& opts = {});

struct ConvexityReport {
  bool pass = true;
  double worst_violation = 0;  // f(mid) minus the chord through the outer pair
  std::array<double, 3> worst_triple{0, 0, 0};
  int triples_checked = 0;
};

// Chord test on all consecutive grid triples. The report carries pass/fail;
// nothing throws.
ConvexityReport check_convexity(const std::function<double(double)>& f,
                                std::span<const double> grid,
                                double tol_convexity = 1e-9);

inline ConvexityReport check_convexity(const ConvexOracle& f,
                                        std::span<const double> grid,
                                        double tol_convexity = 1e-9) {
  return check_convexity([&](double t) { return f(t); }, grid, tol_convexity);
}

}  // namespace convexmin

#endif  // CONVEXMIN_ORACLE_HPP_
