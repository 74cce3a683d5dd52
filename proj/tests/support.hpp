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

#ifndef CONVEXMIN_TESTS_SUPPORT_HPP_
#define CONVEXMIN_TESTS_SUPPORT_HPP_

#include <vector>

#include "convexmin/min_set.hpp"
#include "convexmin/process.hpp"
#include "convexmin/pwl.hpp"

namespace convexmin::test {

// Rational grid that is guaranteed to contain every breakpoint (hence the
// exact smallest/largest minimizer of a compact PWL), plus midpoints and
// outer flanks.
inline std::vector<Rational> predicate_grid(const PwlConvex& f) {
  const auto& bps = f.breakpoints();
  std::vector<Rational> grid;
  grid.push_back(bps.front() - 1);
  for (std::size_t i = 0; i < bps.size(); ++i) {
    grid.push_back(bps[i]);
    if (i + 1 < bps.size()) grid.push_back((bps[i] + bps[i + 1]) / 2);
  }
  grid.push_back(bps.back() + 1);
  return grid;
}

// The flat-bottom limit of the discontinuity family: 0 on [-1, 1], |t|-1
// outside.
inline PwlConvex flat_vee() {
  return PwlConvex(Rational(0), Rational(0), {Rational(-1), Rational(1)},
                   {Rational(-1), Rational(0), Rational(1)});
}

// |t - 1| + |t + 1|: slopes -2, 0, 2 with min set [-1, 1].
inline PwlConvex double_abs() {
  return PwlConvex::absolute(Rational(1)) + PwlConvex::absolute(Rational(-1));
}

}  // namespace convexmin::test

#endif  // CONVEXMIN_TESTS_SUPPORT_HPP_
