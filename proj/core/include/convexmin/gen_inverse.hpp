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

#ifndef CONVEXMIN_GEN_INVERSE_HPP_
#define CONVEXMIN_GEN_INVERSE_HPP_

#include <functional>
#include <vector>

#include "convexmin/pwl.hpp"
#include "convexmin/rational.hpp"

namespace convexmin {

// Extended real: a rational value or one of the two infinities.
struct ExtendedReal {
  enum class Kind { kFinite, kNegInf, kPosInf };
  Kind kind = Kind::kFinite;
  Rational value;

  static ExtendedReal finite(Rational v) { return {Kind::kFinite, std::move(v)}; }
  static ExtendedReal neg_inf() { return {Kind::kNegInf, Rational(0)}; }
  static ExtendedReal pos_inf() { return {Kind::kPosInf, Rational(0)}; }
  bool is_finite() const { return kind == Kind::kFinite; }
};

// Non-decreasing step function: value values[0] left of breakpoints[0],
// values[i] between breakpoints[i-1] and breakpoints[i], values[m] to the
// right. Which endpoint each step attains does not affect the generalized
// inverses below, so no continuity convention is stored.
struct StepFunction {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;  // size breakpoints.size() + 1, non-decreasing

  StepFunction(std::vector<Rational> bps, std::vector<Rational> vals);
};

// The one-sided derivative of a PWL convex function as a step function.
// d_plus is the right-continuous version, d_minus the left-continuous one;
// both share the same step data.
StepFunction derivative_step(const PwlConvex& f);

// inf{x : F(x) >= y}. Exact; -inf when F >= y everywhere, +inf when the
// level set is empty.
ExtendedReal ginv_lower(const StepFunction& F, const Rational& y);

// sup{x : F(x) <= y}.
ExtendedReal ginv_upper(const StepFunction& F, const Rational& y);

struct GinvNumericOptions {
  double tol = 1e-9;
  int monotonicity_samples = 33;
  int max_iter = 200;
};

// Bisection for a monotone black-box F on [lo, hi]. Validates
// non-decreasingness by sampling (NotMonotone), requires the level set to
// intersect the bracket (EmptyLevelSet). Returns the enclosure midpoint.
double ginv_lower_numeric(const std::function<double(double)>& F, double y,
                          double lo, double hi, const GinvNumericOptions& opts = {});
double ginv_upper_numeric(const std::function<double(double)>& F, double y,
                          double lo, double hi, const GinvNumericOptions& opts = {});

}  // namespace convexmin

#endif  // CONVEXMIN_GEN_INVERSE_HPP_
