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

#include "convexmin/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "convexmin/errors.hpp"
#include "convexmin/min_set.hpp"

namespace convexmin {

ConvexOracle ConvexOracle::from_pwl(const PwlConvex& f, double margin) {
  const MinSet a = min_set(f);
  std::optional<std::pair<double, double>> bracket;
  if (a.is_compact()) {
    bracket = std::make_pair(to_double(a.sigma()) - margin,
                             to_double(a.tau()) + margin);
  }
  // The lambda owns a copy; the oracle stays valid after f goes away.
  return ConvexOracle([g = f](double t) { return g(t); }, bracket);
}

std::vector<double> StepSchedule::steps() const {
  if (!explicit_steps.empty()) return explicit_steps;
  if (count < 1 || start <= 0 || ratio <= 0 || ratio >= 1) {
    throw std::invalid_argument("StepSchedule: need start > 0, 0 < ratio < 1, count >= 1");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  double h = start;
  for (auto& s : out) {
    s = h;
    h *= ratio;
  }
  return out;
}

StepSchedule StepSchedule::from_steps(std::vector<double> explicit_steps) {
  if (explicit_steps.empty()) {
    throw std::invalid_argument("StepSchedule: empty step list");
  }
  for (std::size_t i = 0; i < explicit_steps.size(); ++i) {
    if (explicit_steps[i] <= 0 ||
        (i > 0 && explicit_steps[i] >= explicit_steps[i - 1])) {
      throw std::invalid_argument("StepSchedule: steps must be positive and strictly decreasing");
    }
  }
  StepSchedule s;
  s.explicit_steps = std::move(explicit_steps);
  return s;
}

namespace {

// Per-operation budget enforcement.
class CountedEval {
 public:
  explicit CountedEval(const ConvexOracle& oracle) : oracle_(oracle) {}

  double operator()(double t) {
    if (oracle_.eval_budget() && used_ >= *oracle_.eval_budget()) {
      throw BudgetExceeded("oracle evaluation budget of " +
                           std::to_string(*oracle_.eval_budget()) + " exhausted");
    }
    ++used_;
    return oracle_(t);
  }

 private:
  const ConvexOracle& oracle_;
  long used_ = 0;
};

// Quotients computed at step h carry rounding noise of order eps*|f|/h;
// the monotonicity check must not fire inside that band.
double quotient_noise(double fa, double fb, double h) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return 8.0 * eps * std::max({1.0, std::fabs(fa), std::fabs(fb)}) / h;
}

void check_quotient_monotone(double prev, double cur, double tol, double noise,
                             bool expect_decreasing) {
  const double slack = tol * std::max(1.0, std::fabs(prev)) + noise;
  const bool ok = expect_decreasing ? (cur <= prev + slack) : (cur >= prev - slack);
  if (!ok) {
    throw ConvexityViolation(
        "difference quotients are not monotone: " + std::to_string(prev) +
        " then " + std::to_string(cur));
  }
}

}  // namespace

DerivativeBracket d_plus_bracket(const ConvexOracle& f, double x,
                                 const BracketOptions& opts) {
  const std::vector<double> steps = opts.schedule.steps();
  CountedEval eval(f);
  const double fx = eval(x);

  DerivativeBracket out;
  out.side = DerivativeBracket::Side::kRight;
  out.at = x;
  out.quotients.reserve(steps.size());
  double prev = std::numeric_limits<double>::infinity();
  double prev_noise = 0;
  for (double h : steps) {
    const double fxh = eval(x + h);
    const double q = (fxh - fx) / h;
    const double noise = quotient_noise(fx, fxh, h);
    if (!out.quotients.empty()) {
      check_quotient_monotone(prev, q, opts.tol_quotient, prev_noise + noise,
                              /*expect_decreasing=*/true);
    }
    out.quotients.push_back(q);
    prev = q;
    prev_noise = noise;
  }
  out.upper = out.quotients.back();
  out.gap_estimate = out.quotients.size() > 1
                         ? out.quotients[out.quotients.size() - 2] - out.quotients.back()
                         : std::numeric_limits<double>::infinity();
  if (opts.certify_far_side) {
    // A left quotient lower-bounds d_minus(x) <= d_plus(x).
    const double h = steps.back();
    out.lower = (fx - eval(x - h)) / h;
  } else {
    out.lower = -std::numeric_limits<double>::infinity();
  }
  return out;
}

DerivativeBracket d_minus_bracket(const ConvexOracle& f, double x,
                                  const BracketOptions& opts) {
  const std::vector<double> steps = opts.schedule.steps();
  CountedEval eval(f);
  const double fx = eval(x);

  DerivativeBracket out;
  out.side = DerivativeBracket::Side::kLeft;
  out.at = x;
  out.quotients.reserve(steps.size());
  double prev = -std::numeric_limits<double>::infinity();
  double prev_noise = 0;
  for (double h : steps) {
    const double fxh = eval(x - h);
    const double q = (fx - fxh) / h;
    const double noise = quotient_noise(fx, fxh, h);
    if (!out.quotients.empty()) {
      check_quotient_monotone(prev, q, opts.tol_quotient, prev_noise + noise,
                              /*expect_decreasing=*/false);
    }
    out.quotients.push_back(q);
    prev = q;
    prev_noise = noise;
  }
  out.lower = out.quotients.back();
  out.gap_estimate = out.quotients.size() > 1
                         ? out.quotients.back() - out.quotients[out.quotients.size() - 2]
                         : std::numeric_limits<double>::infinity();
  if (opts.certify_far_side) {
    const double h = steps.back();
    out.upper = (eval(x + h) - fx) / h;  // upper-bounds d_plus >= d_minus
  } else {
    out.upper = std::numeric_limits<double>::infinity();
  }
  return out;
}

ConvexityReport check_convexity(const std::function<double(double)>& f,
                                std::span<const double> grid,
                                double tol_convexity) {
  if (grid.size() < 3) {
    throw std::invalid_argument("check_convexity: need at least 3 grid points");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) {
      throw std::invalid_argument("check_convexity: grid must be sorted strictly");
    }
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = f(grid[i]);

  ConvexityReport report;
  for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
    const double s = grid[i], m = grid[i + 1], t = grid[i + 2];
    const double chord = values[i] + (values[i + 2] - values[i]) * (m - s) / (t - s);
    const double violation = values[i + 1] - chord;
    const double scale = std::max({1.0, std::fabs(values[i]),
                                   std::fabs(values[i + 1]), std::fabs(values[i + 2])});
    ++report.triples_checked;
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.worst_triple = {s, m, t};
    }
    if (violation > tol_convexity * scale) report.pass = false;
  }
  return report;
}

}  // namespace convexmin
