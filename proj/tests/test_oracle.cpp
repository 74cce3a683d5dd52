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

#include <doctest.h>

#include "convexmin/errors.hpp"
#include "convexmin/min_set.hpp"
#include "convexmin/process.hpp"
#include "support.hpp"

using namespace convexmin;

namespace {
BracketOptions steps(std::vector<double> s) {
  BracketOptions opts;
  opts.schedule = StepSchedule::from_steps(std::move(s));
  return opts;
}
}  // namespace

TEST_CASE("right quotients of the square shrink onto the derivative") {
  const ConvexOracle f([](double t) { return t * t; });
  const DerivativeBracket b = d_plus_bracket(f, 1.0, steps({1, 0.1, 0.01}));
  REQUIRE(b.quotients.size() == 3);
  CHECK(b.quotients[0] == doctest::Approx(3.0));
  CHECK(b.quotients[1] == doctest::Approx(2.1));
  CHECK(b.quotients[2] == doctest::Approx(2.01));
  CHECK(b.upper == doctest::Approx(2.01));
  CHECK(b.lower == -std::numeric_limits<double>::infinity());
  CHECK(b.upper >= 2.0);  // quotients upper-bound the right derivative
}

TEST_CASE("kinks give constant quotients") {
  const ConvexOracle f([](double t) { return std::fabs(t); });
  const DerivativeBracket b = d_plus_bracket(f, 0.0, {});
  for (double q : b.quotients) CHECK(q == 1.0);
  CHECK(b.upper == 1.0);

  const ConvexOracle g([](double t) { return std::fmax(-t, 0.0); });
  const DerivativeBracket bg = d_plus_bracket(g, 0.0, steps({1, 0.5}));
  CHECK(bg.quotients[0] == 0.0);
  CHECK(bg.quotients[1] == 0.0);
  CHECK(bg.upper == 0.0);
}

TEST_CASE("left bracket mirrors the right one") {
  const ConvexOracle f([](double t) { return t * t; });
  const DerivativeBracket b = d_minus_bracket(f, 1.0, steps({1, 0.1, 0.01}));
  CHECK(b.quotients[0] == doctest::Approx(1.0));   // (f(1)-f(0))/1
  CHECK(b.quotients[2] == doctest::Approx(1.99));
  CHECK(b.lower == doctest::Approx(1.99));
  CHECK(b.lower <= 2.0);
  CHECK(b.upper == std::numeric_limits<double>::infinity());
}

TEST_CASE("far-side certification closes the open bound") {
  const ConvexOracle f([](double t) { return t * t; });
  BracketOptions opts = steps({1, 0.1, 0.01});
  opts.certify_far_side = true;
  const DerivativeBracket b = d_plus_bracket(f, 1.0, opts);
  CHECK(b.lower <= 2.0);
  CHECK(2.0 <= b.upper);
  CHECK(b.lower > 1.9);
}

TEST_CASE("non-convex input is detected through quotient monotonicity") {
  const ConvexOracle f([](double t) { return -t * t; });
  CHECK_THROWS_AS(d_plus_bracket(f, 0.0, steps({1, 0.5, 0.25})), ConvexityViolation);
}

TEST_CASE("evaluation budget is enforced per operation") {
  const ConvexOracle f([](double t) { return t * t; }, {}, 3);
  CHECK_THROWS_AS(d_plus_bracket(f, 1.0, {}), BudgetExceeded);
  // 1 base + 2 quotients fits in the budget
  CHECK_NOTHROW(d_plus_bracket(f, 1.0, steps({1, 0.5})));
  // the counter resets between operations
  CHECK_NOTHROW(d_plus_bracket(f, 1.0, steps({1, 0.5})));
}

TEST_CASE("oracle brackets always contain the exact PWL derivative") {
  SeededRng rng(41);
  for (int i = 0; i < 50; ++i) {
    const PwlConvex f = random_compact_pwl(rng);
    const ConvexOracle oracle = ConvexOracle::from_pwl(f);
    BracketOptions opts;
    opts.certify_far_side = true;
    for (const Rational& xq : test::predicate_grid(f)) {
      const double x = to_double(xq);
      const DerivativeBracket right = d_plus_bracket(oracle, x, opts);
      const double exact_plus = to_double(f.d_plus(xq));
      CHECK(right.lower <= exact_plus + 1e-9);
      CHECK(exact_plus <= right.upper + 1e-9);
      const DerivativeBracket left = d_minus_bracket(oracle, x, opts);
      const double exact_minus = to_double(f.d_minus(xq));
      CHECK(left.lower <= exact_minus + 1e-9);
      CHECK(exact_minus <= left.upper + 1e-9);
    }
  }
}

TEST_CASE("grid convexity check matches the worked examples") {
  const std::vector<double> grid{-1, 0, 1};
  CHECK(check_convexity([](double t) { return t * t; }, grid).pass);
  CHECK(check_convexity([](double t) { return std::fabs(t); }, grid).pass);

  const ConvexityReport bad = check_convexity([](double t) { return -t * t; }, grid);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_violation == doctest::Approx(1.0));
  CHECK(bad.worst_triple[0] == -1);
  CHECK(bad.worst_triple[1] == 0);
  CHECK(bad.worst_triple[2] == 1);

  CHECK_THROWS_AS(check_convexity([](double t) { return t; }, std::vector<double>{0, 1}),
                  std::invalid_argument);
}

TEST_CASE("step schedules validate their shape") {
  CHECK_THROWS_AS(StepSchedule::from_steps({}), std::invalid_argument);
  CHECK_THROWS_AS(StepSchedule::from_steps({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(StepSchedule::from_steps({0.5, -0.1}), std::invalid_argument);
  const StepSchedule def;
  const auto s = def.steps();
  CHECK(s.size() == 12);
  CHECK(s.front() == 1.0);
  CHECK(s.back() == doctest::Approx(std::pow(0.125, 11)));
}
