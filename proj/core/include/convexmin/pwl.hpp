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

#ifndef CONVEXMIN_PWL_HPP_
#define CONVEXMIN_PWL_HPP_

#include <cstddef>
#include <vector>

#include "convexmin/rational.hpp"

namespace convexmin {

/** Piecewise-linear convex function with exact rational coefficients.
 *
 *  Representation: m strictly increasing breakpoints x_1 < ... < x_m and
 *  m+1 non-decreasing slopes, where slopes[0] applies on (-inf, x_1),
 *  slopes[i] on (x_i, x_{i+1}) and slopes[m] on (x_m, +inf), anchored by one
 *  function value. Non-decreasing slopes are exactly convexity for this
 *  class; the constructor rejects anything else. Values at all breakpoints
 *  are precomputed, so evaluation is one binary search plus one multiply.
 *
 *  Immutable after construction; every operation below is pure.
 */
class PwlConvex {
 public:
  PwlConvex(Rational anchor_x, Rational anchor_y,
            std::vector<Rational> breakpoints, std::vector<Rational> slopes);

  // f(t) = |t - center|
  static PwlConvex absolute(const Rational& center);
  static PwlConvex constant(const Rational& value);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& slopes() const { return slopes_; }
  // f(x_i) for each breakpoint, exact.
  const std::vector<Rational>& breakpoint_values() const { return values_; }
  const Rational& anchor_x() const { return anchor_x_; }
  const Rational& anchor_y() const { return anchor_y_; }
  std::size_t segment_count() const { return slopes_.size(); }

  Rational operator()(const Rational& t) const;
  // Fast path over cached doubles; exact whenever all coefficients are
  // exactly representable (dyadic data).
  double operator()(double t) const;

  // One-sided derivatives: slope of the segment immediately right/left of x.
  // Both are non-decreasing in x and d_minus(x) <= d_plus(x) everywhere.
  Rational d_plus(const Rational& x) const;
  Rational d_minus(const Rational& x) const;
  Rational d_plus(double x) const { return d_plus(rational_from_double(x)); }
  Rational d_minus(double x) const { return d_minus(rational_from_double(x)); }

  // t -> f(-t). An involution; swaps the roles of the two one-sided
  // derivatives: d_plus(reflect(f), -x) == -d_minus(f, x).
  PwlConvex reflect() const;

  // t -> f(t - dx)
  PwlConvex shifted(const Rational& dx) const;
  // c * f for c >= 0
  PwlConvex scaled(const Rational& factor) const;
  // f(t) + a*t + b
  PwlConvex plus_linear(const Rational& a, const Rational& b) const;

 private:
  Rational anchor_x_;
  Rational anchor_y_;
  std::vector<Rational> breakpoints_;
  std::vector<Rational> slopes_;
  std::vector<Rational> values_;

  // double mirrors for the fast evaluation path
  std::vector<double> breakpoints_d_;
  std::vector<double> slopes_d_;
  std::vector<double> values_d_;
  double anchor_x_d_ = 0.0;
  double anchor_y_d_ = 0.0;

  void build_caches();
};

// Pointwise sum; convexity is preserved (slopes add segment-wise).
PwlConvex operator+(const PwlConvex& f, const PwlConvex& g);

// Exact sup of |f - g| over [lo, hi]. The difference is piecewise linear, so
// the sup is attained at an endpoint or an interior breakpoint of f or g.
Rational sup_abs_diff(const PwlConvex& f, const PwlConvex& g,
                      const Rational& lo, const Rational& hi);

}  // namespace convexmin

#endif  // CONVEXMIN_PWL_HPP_
