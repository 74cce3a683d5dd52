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

#include "convexmin/gen_inverse.hpp"

#include <cmath>
#include <stdexcept>

#include "convexmin/errors.hpp"

namespace convexmin {

StepFunction::StepFunction(std::vector<Rational> bps, std::vector<Rational> vals)
    : breakpoints(std::move(bps)), values(std::move(vals)) {
  if (values.size() != breakpoints.size() + 1) {
    throw std::invalid_argument("StepFunction: need breakpoints+1 values");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw std::invalid_argument("StepFunction: breakpoints must strictly increase");
    }
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) {
      throw NotMonotone("StepFunction: values must be non-decreasing");
    }
  }
}

StepFunction derivative_step(const PwlConvex& f) {
  return StepFunction(f.breakpoints(), f.slopes());
}

ExtendedReal ginv_lower(const StepFunction& F, const Rational& y) {
  const auto& v = F.values;
  std::size_t i = 0;
  while (i < v.size() && v[i] < y) ++i;
  if (i == v.size()) return ExtendedReal::pos_inf();  // empty level set
  if (i == 0) return ExtendedReal::neg_inf();         // F >= y everywhere
  return ExtendedReal::finite(F.breakpoints[i - 1]);
}

ExtendedReal ginv_upper(const StepFunction& F, const Rational& y) {
  const auto& v = F.values;
  std::size_t i = v.size();
  while (i > 0 && v[i - 1] > y) --i;
  if (i == 0) return ExtendedReal::neg_inf();          // empty level set
  if (i == v.size()) return ExtendedReal::pos_inf();   // F <= y everywhere
  return ExtendedReal::finite(F.breakpoints[i - 1]);
}

namespace {

void validate_monotone(const std::function<double(double)>& F, double lo,
                       double hi, int samples) {
  if (samples < 2) return;
  double prev = F(lo);
  for (int i = 1; i < samples; ++i) {
    const double x = lo + (hi - lo) * i / (samples - 1);
    const double cur = F(x);
    const double slack = 1e-12 * std::max({1.0, std::fabs(prev), std::fabs(cur)});
    if (cur < prev - slack) {
      throw NotMonotone("gen_inverse: sampled oracle decreases on bracket");
    }
    prev = cur;
  }
}

}  // namespace

double ginv_lower_numeric(const std::function<double(double)>& F, double y,
                          double lo, double hi, const GinvNumericOptions& opts) {
  if (!(lo <= hi)) throw std::invalid_argument("ginv_lower_numeric: bad bracket");
  validate_monotone(F, lo, hi, opts.monotonicity_samples);
  if (F(lo) >= y) return lo;  // the level set starts at or before the bracket
  if (F(hi) < y) {
    throw EmptyLevelSet("ginv_lower_numeric: F < y on the whole bracket");
  }
  double a = lo, b = hi;  // F(a) < y <= F(b)
  for (int i = 0; i < opts.max_iter && (b - a) > opts.tol; ++i) {
    const double m = 0.5 * (a + b);
    (F(m) >= y ? b : a) = m;
  }
  return 0.5 * (a + b);
}

double ginv_upper_numeric(const std::function<double(double)>& F, double y,
                          double lo, double hi, const GinvNumericOptions& opts) {
  if (!(lo <= hi)) throw std::invalid_argument("ginv_upper_numeric: bad bracket");
  validate_monotone(F, lo, hi, opts.monotonicity_samples);
  if (F(hi) <= y) return hi;
  if (F(lo) > y) {
    throw EmptyLevelSet("ginv_upper_numeric: F > y on the whole bracket");
  }
  double a = lo, b = hi;  // F(a) <= y < F(b)
  for (int i = 0; i < opts.max_iter && (b - a) > opts.tol; ++i) {
    const double m = 0.5 * (a + b);
    (F(m) <= y ? a : b) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace convexmin
