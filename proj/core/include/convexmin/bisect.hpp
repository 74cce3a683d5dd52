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

#ifndef CONVEXMIN_BISECT_HPP_
#define CONVEXMIN_BISECT_HPP_

#include "convexmin/oracle.hpp"

namespace convexmin {

struct Enclosure {
  double lo = 0;
  double hi = 0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct BisectResult {
  Enclosure enclosure;
  // False when some midpoint classification was undecided (quotients inside
  // the sign tolerance at schedule exhaustion). The enclosure is then valid
  // only under the documented resolution assumption: the function has no
  // sub-tolerance slope structure.
  bool certified = true;
  int undecided = 0;
  int iterations = 0;
  bool capped = false;  // iteration cap hit before reaching tol
};

struct BisectOptions {
  double tol = 1e-8;        // target enclosure width
  double tol_sign = 1e-10;  // derivative sign classification threshold
  StepSchedule schedule;
  int max_iter = 200;
};

/** Certified enclosure of the smallest minimizer of a bracketed oracle.
 *
 *  Bisection on the predicate "d_plus(x) >= 0" (equivalently: the smallest
 *  minimizer is <= x), decided from right difference quotients over the
 *  step schedule:
 *    - a quotient <= -max(tol_sign, rounding noise bound) certifies
 *      d_plus(x) < 0 (quotients over-estimate d_plus), so the minimizer is
 *      right of x;
 *    - a final quotient >= 0 means f(x+h) >= f(x), which for convex f
 *      certifies no minimizer lies right of x+h (h = smallest step);
 *    - otherwise the sign is undecided at schedule resolution; treated as
 *      the second case and flagged, widening the certificate assumption.
 *
 *  Throws NoBracket without a bracket, ConvexityViolation / BudgetExceeded
 *  from the quotient machinery.
 */
BisectResult bisect_smallest(const ConvexOracle& f, const BisectOptions& opts = {});

// Largest minimizer via time reversal: computed as the negated smallest
// minimizer of t -> f(-t).
BisectResult bisect_largest(const ConvexOracle& f, const BisectOptions& opts = {});

// Largest minimizer by direct bisection on "d_minus(x) <= 0" via left
// quotients; cross-checks the reflection route.
BisectResult bisect_largest_direct(const ConvexOracle& f, const BisectOptions& opts = {});

}  // namespace convexmin

#endif  // CONVEXMIN_BISECT_HPP_
