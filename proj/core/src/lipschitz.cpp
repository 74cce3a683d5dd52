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

#include "convexmin/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convexmin/errors.hpp"

namespace convexmin {

LipschitzCertificate lipschitz_bound(const std::function<double(double)>& f,
                                     double k_lo, double k_hi,
                                     std::span<const double> grid) {
  if (!(k_lo <= k_hi)) {
    throw std::invalid_argument("lipschitz_bound: empty compact interval");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("lipschitz_bound: grid must be sorted");
  }

  // Largest grid point <= value, or none.
  auto floor_of = [&](double value) -> const double* {
    auto it = std::upper_bound(grid.begin(), grid.end(), value);
    return it == grid.begin() ? nullptr : &*(it - 1);
  };
  auto ceil_of = [&](double value) -> const double* {
    auto it = std::lower_bound(grid.begin(), grid.end(), value);
    return it == grid.end() ? nullptr : &*it;
  };
  auto strictly_below = [&](double value) -> const double* {
    auto it = std::lower_bound(grid.begin(), grid.end(), value);
    return it == grid.begin() ? nullptr : &*(it - 1);
  };
  auto strictly_above = [&](double value) -> const double* {
    auto it = std::upper_bound(grid.begin(), grid.end(), value);
    return it == grid.end() ? nullptr : &*it;
  };

  const double* pa = floor_of(k_lo);
  const double* pb = ceil_of(k_hi);
  if (!pa || !pb) {
    throw GridTooSparse("lipschitz_bound: grid has no points enclosing K");
  }
  const double a = *pa, b = *pb;

  const double* px = strictly_above(a);
  const double* py = strictly_below(a);
  const double* pu = strictly_below(b);
  const double* pv = strictly_above(b);
  if (!px || !py || !pu || !pv) {
    throw GridTooSparse("lipschitz_bound: grid lacks flanking points around [a, b]");
  }
  const double x = *px, y = *py, u = *pu, v = *pv;

  const double c1 = std::max(1.0 / (x - a), 1.0 / (a - y));
  const double c2 = std::max(1.0 / (b - u), 1.0 / (v - b));

  LipschitzCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.points = {x, a, y, a, u, b, v, b};
  cert.c = std::max(c1, c2);
  double sum = 0;
  for (double d : cert.points) sum += std::fabs(f(d));
  cert.bound = cert.c * sum;
  return cert;
}

}  // namespace convexmin
