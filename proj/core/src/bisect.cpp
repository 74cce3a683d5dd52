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

#include "convexmin/bisect.hpp"

#include <cmath>
#include <limits>

#include "convexmin/errors.hpp"

namespace convexmin {

namespace {

enum class SignClass { kNonNegative, kNegative, kUndecided };

struct Classification {
  SignClass cls;
  double h_used;  // smallest step actually evaluated
};

// Difference quotients carry rounding noise of order eps*|f|/h; a negative
// quotient only certifies a negative derivative when it clears that bound.
double noise_bound(double fx, double fxh, double h) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  return 8.0 * eps * std::max({1.0, std::fabs(fx), std::fabs(fxh)}) / h;
}

// Sign of d_plus at x from right quotients. Early exit on a certified
// negative; otherwise the final quotient decides. The monotone check
// carries the rounding-noise slack of both quotients, and a sign certified
// by the very first quotient still gets one confirming step, so non-convex
// input cannot slip through unchecked.
Classification classify_right(const std::function<double(double)>& eval, double x,
                              const std::vector<double>& steps, double tol_sign,
                              double tol_quotient) {
  const double fx = eval(x);
  double q = std::numeric_limits<double>::infinity();
  double prev = q, prev_noise = 0;
  double h_used = steps.front();
  bool negative = false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double h = steps[i];
    const double fxh = eval(x + h);
    const double noise = noise_bound(fx, fxh, h);
    q = (fxh - fx) / h;
    if (std::isfinite(prev) &&
        q > prev + tol_quotient * std::max(1.0, std::fabs(prev)) + prev_noise + noise) {
      throw ConvexityViolation("bisect: right quotients increased as the step shrank");
    }
    prev = q;
    prev_noise = noise;
    h_used = h;
    if (q <= -std::max(tol_sign, noise)) {
      if (i > 0) return {SignClass::kNegative, h_used};
      negative = true;  // confirm against one more quotient first
      continue;
    }
    if (negative) return {SignClass::kNegative, steps[i - 1]};
  }
  if (negative) return {SignClass::kNegative, h_used};
  if (q >= 0) return {SignClass::kNonNegative, h_used};
  return {SignClass::kUndecided, h_used};
}

// Sign of d_minus at x from left quotients (which under-estimate it).
Classification classify_left(const std::function<double(double)>& eval, double x,
                             const std::vector<double>& steps, double tol_sign,
                             double tol_quotient) {
  const double fx = eval(x);
  double q = -std::numeric_limits<double>::infinity();
  double prev = q, prev_noise = 0;
  double h_used = steps.front();
  bool positive = false;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double h = steps[i];
    const double fxh = eval(x - h);
    const double noise = noise_bound(fx, fxh, h);
    q = (fx - fxh) / h;
    if (std::isfinite(prev) &&
        q < prev - tol_quotient * std::max(1.0, std::fabs(prev)) - prev_noise - noise) {
      throw ConvexityViolation("bisect: left quotients decreased as the step shrank");
    }
    prev = q;
    prev_noise = noise;
    h_used = h;
    if (q >= std::max(tol_sign, noise)) {
      // d_minus >= q > 0: the largest minimizer is left of x.
      if (i > 0) return {SignClass::kNonNegative, h_used};
      positive = true;
      continue;
    }
    if (positive) return {SignClass::kNonNegative, steps[i - 1]};
  }
  if (positive) return {SignClass::kNonNegative, h_used};
  if (q <= 0) return {SignClass::kNegative, h_used};
  return {SignClass::kUndecided, h_used};
}

class BudgetedEval {
 public:
  explicit BudgetedEval(const ConvexOracle& oracle) : oracle_(oracle) {}
  double operator()(double t) {
    if (oracle_.eval_budget() && used_ >= *oracle_.eval_budget()) {
      throw BudgetExceeded("bisect: oracle evaluation budget exhausted");
    }
    ++used_;
    return oracle_(t);
  }

 private:
  const ConvexOracle& oracle_;
  long used_ = 0;
};

}  // namespace

BisectResult bisect_smallest(const ConvexOracle& f, const BisectOptions& opts) {
  if (!f.bracket()) {
    throw NoBracket("bisect_smallest: oracle carries no minimizer bracket");
  }
  const std::vector<double> steps = opts.schedule.steps();
  BudgetedEval budgeted(f);
  const std::function<double(double)> eval = [&](double t) { return budgeted(t); };

  BisectResult r;
  double lo = f.bracket()->first;
  double hi = f.bracket()->second;
  while (hi - lo > opts.tol) {
    if (r.iterations >= opts.max_iter) {
      r.capped = true;
      break;
    }
    ++r.iterations;
    const double m = 0.5 * (lo + hi);
    const Classification c = classify_right(eval, m, steps, opts.tol_sign, 1e-9);
    if (c.cls == SignClass::kNegative) {
      lo = m;  // minimizers are strictly right of m
    } else {
      if (c.cls == SignClass::kUndecided) {
        ++r.undecided;
        r.certified = false;
      }
      // f(m + h) >= f(m) certifies the smallest minimizer is <= m + h.
      hi = std::min(hi, m + c.h_used);
    }
  }
  r.enclosure = {lo, hi};
  return r;
}

BisectResult bisect_largest(const ConvexOracle& f, const BisectOptions& opts) {
  if (!f.bracket()) {
    throw NoBracket("bisect_largest: oracle carries no minimizer bracket");
  }
  const auto [lo, hi] = *f.bracket();
  ConvexOracle reflected([g = f](double t) { return g(-t); },
                         std::make_pair(-hi, -lo), f.eval_budget());
  BisectResult r = bisect_smallest(reflected, opts);
  const Enclosure e = r.enclosure;
  r.enclosure = {-e.hi, -e.lo};
  return r;
}

BisectResult bisect_largest_direct(const ConvexOracle& f, const BisectOptions& opts) {
  if (!f.bracket()) {
    throw NoBracket("bisect_largest_direct: oracle carries no minimizer bracket");
  }
  const std::vector<double> steps = opts.schedule.steps();
  BudgetedEval budgeted(f);
  const std::function<double(double)> eval = [&](double t) { return budgeted(t); };

  BisectResult r;
  double lo = f.bracket()->first;
  double hi = f.bracket()->second;
  while (hi - lo > opts.tol) {
    if (r.iterations >= opts.max_iter) {
      r.capped = true;
      break;
    }
    ++r.iterations;
    const double m = 0.5 * (lo + hi);
    const Classification c = classify_left(eval, m, steps, opts.tol_sign, 1e-9);
    if (c.cls == SignClass::kNonNegative) {
      hi = m;  // d_minus(m) > 0: minimizers are strictly left of m
    } else {
      if (c.cls == SignClass::kUndecided) {
        ++r.undecided;
        r.certified = false;
      }
      // f(m - h) >= f(m) certifies the largest minimizer is >= m - h.
      lo = std::max(lo, m - c.h_used);
    }
  }
  r.enclosure = {lo, hi};
  return r;
}

}  // namespace convexmin
