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

#include <cmath>

#include <doctest.h>

#include "convexmin/errors.hpp"
#include "convexmin/process.hpp"

using namespace convexmin;

namespace {

std::vector<double> integer_grid(int lo, int hi) {
  std::vector<double> g;
  for (int k = lo; k <= hi; ++k) g.push_back(k);
  return g;
}

// Brute-force spot check of |f(s) - f(t)| <= L |s - t| on random pairs in K.
void check_pairs(const std::function<double(double)>& f, double k_lo, double k_hi,
                 double bound, SeededRng& rng, int pairs = 1000) {
  for (int i = 0; i < pairs; ++i) {
    const double s = k_lo + (k_hi - k_lo) * to_double(rng.next_dyadic01());
    const double t = k_lo + (k_hi - k_lo) * to_double(rng.next_dyadic01());
    CHECK(std::fabs(f(s) - f(t)) <= bound * std::fabs(s - t) + 1e-12);
  }
}

}  // namespace

TEST_CASE("square on [-1, 1] over the integer grid") {
  auto sq = [](double t) { return t * t; };
  const LipschitzCertificate cert = lipschitz_bound(sq, -1, 1, integer_grid(-5, 5));
  CHECK(cert.a == -1);
  CHECK(cert.b == 1);
  CHECK(cert.c == 1);
  CHECK(cert.bound == doctest::Approx(12.0));  // sum over x,a,y,a,u,b,v,b
  CHECK(cert.bound >= 2.0);                    // the true constant on [-1, 1]
  SeededRng rng(53);
  check_pairs(sq, -1, 1, cert.bound, rng);
}

TEST_CASE("the zero function certifies a zero bound") {
  const LipschitzCertificate cert =
      lipschitz_bound([](double) { return 0.0; }, -1, 1, integer_grid(-3, 3));
  CHECK(cert.bound == 0.0);
}

TEST_CASE("absolute value on [0, 1] dominates its true constant") {
  auto f = [](double t) { return std::fabs(t); };
  const LipschitzCertificate cert = lipschitz_bound(f, 0, 1, integer_grid(-3, 3));
  CHECK(cert.bound >= 1.0);
  SeededRng rng(59);
  check_pairs(f, 0, 1, cert.bound, rng);
}

TEST_CASE("missing flanking points raise GridTooSparse") {
  auto f = [](double t) { return t * t; };
  CHECK_THROWS_AS(lipschitz_bound(f, -1, 1, integer_grid(-1, 1)), GridTooSparse);
  CHECK_THROWS_AS(lipschitz_bound(f, -1, 1, integer_grid(-5, 1)), GridTooSparse);
  CHECK_THROWS_AS(lipschitz_bound(f, 4, 8, integer_grid(-3, 3)), GridTooSparse);
}

TEST_CASE("certified bound holds for random PWL and quadratic functions") {
  SeededRng rng(61);
  std::vector<double> grid;
  for (int k = -80; k <= 80; ++k) grid.push_back(k / 16.0);
  for (int i = 0; i < 30; ++i) {
    const PwlConvex f = random_compact_pwl(rng);
    auto eval = [&](double t) { return f(t); };
    const LipschitzCertificate cert = lipschitz_bound(eval, -2, 2, grid);
    check_pairs(eval, -2, 2, cert.bound, rng, 200);
  }
  for (int i = 0; i < 10; ++i) {
    const double a = 0.25 + to_double(rng.next_dyadic01());
    const double c = to_double(rng.next_dyadic01()) - 0.5;
    auto quad = [a, c](double t) { return a * (t - c) * (t - c); };
    const LipschitzCertificate cert = lipschitz_bound(quad, -2, 2, grid);
    check_pairs(quad, -2, 2, cert.bound, rng, 200);
  }
}
