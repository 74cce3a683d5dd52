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

#ifndef CONVEXMIN_LIPSCHITZ_HPP_
#define CONVEXMIN_LIPSCHITZ_HPP_

#include <array>
#include <functional>
#include <span>

namespace convexmin {

/** Certified local Lipschitz bound for a convex function from grid values.
 *
 *  For grid points a <= k_lo, b >= k_hi with flanking points y < a < x and
 *  u < b < v, the one-sided derivatives at a and b are bounded by grid
 *  values alone:
 *    |d_plus(a)|  <= c1 * (|f(x)| + 2|f(a)| + |f(y)|),
 *    |d_minus(b)| <= c2 * (|f(u)| + 2|f(b)| + |f(v)|),
 *  and max(|d_plus(a)|, |d_minus(b)|) is a Lipschitz constant on [a, b].
 *  Hence |f(s) - f(t)| <= bound * |s - t| on K = [k_lo, k_hi] with
 *  bound = c * sum of the eight grid values, c = max reciprocal gap.
 *
 *  Only grid membership of the eight points enters; the constant works for
 *  every convex function uniformly, which is what makes the equicontinuity
 *  argument in the uniform-convergence check possible.
 */
struct LipschitzCertificate {
  double a = 0;
  double b = 0;
  std::array<double, 8> points{};  // x, a, y, a, u, b, v, b
  double c = 0;                    // max of the reciprocal gaps
  double bound = 0;                // c * sum |f(points[i])|
};

// The eight points are the closest admissible grid points to a and b.
// Throws GridTooSparse when the grid lacks required flanking points.
LipschitzCertificate lipschitz_bound(const std::function<double(double)>& f,
                                     double k_lo, double k_hi,
                                     std::span<const double> sorted_grid);

}  // namespace convexmin

#endif  // CONVEXMIN_LIPSCHITZ_HPP_
