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

#include <doctest.h>

#include "convexmin/errors.hpp"
#include "convexmin/min_set.hpp"
#include "convexmin/process.hpp"
#include "support.hpp"

using namespace convexmin;

TEST_CASE("exact inverses of the derivative step recover the minimizers") {
  const PwlConvex f = test::double_abs();  // slopes -2, 0, 2
  const StepFunction step = derivative_step(f);
  const ExtendedReal lo = ginv_lower(step, Rational(0));
  REQUIRE(lo.is_finite());
  CHECK(lo.value == Rational(-1));
  const ExtendedReal hi = ginv_upper(step, Rational(0));
  REQUIRE(hi.is_finite());
  CHECK(hi.value == Rational(1));
}

TEST_CASE("inverse identities hold exactly on random instances") {
  SeededRng rng(31);
  for (int i = 0; i < 300; ++i) {
    const PwlConvex f = random_compact_pwl(rng);
    const MinSet a = min_set(f);
    const StepFunction step = derivative_step(f);
    const ExtendedReal lo = ginv_lower(step, Rational(0));
    const ExtendedReal hi = ginv_upper(step, Rational(0));
    REQUIRE(lo.is_finite());
    REQUIRE(hi.is_finite());
    CHECK(lo.value == a.sigma());
    CHECK(hi.value == a.tau());
  }
}

TEST_CASE("inverses at generic levels bracket each other") {
  SeededRng rng(37);
  for (int i = 0; i < 200; ++i) {
    const PwlConvex f = random_compact_pwl(rng);
    const StepFunction step = derivative_step(f);
    // levels spanning below, inside, and above the value range
    for (const Rational& y :
         {Rational(step.values.front() - 1), step.values.front(), Rational(0),
          step.values.back(), Rational(step.values.back() + 1)}) {
      const ExtendedReal lo = ginv_lower(step, y);
      const ExtendedReal hi = ginv_upper(step, y);
      if (lo.is_finite() && hi.is_finite()) CHECK(lo.value <= hi.value);
    }
  }
}

TEST_CASE("infinite branches of the exact inverses") {
  // all slopes negative: the level set {F >= 0} is empty
  const PwlConvex down(Rational(0), Rational(0), {Rational(0)},
                       {Rational(-2), Rational(-1)});
  const StepFunction sd = derivative_step(down);
  CHECK(ginv_lower(sd, Rational(0)).kind == ExtendedReal::Kind::kPosInf);
  CHECK(ginv_upper(sd, Rational(0)).kind == ExtendedReal::Kind::kPosInf);

  // all slopes positive: F >= 0 everywhere
  const PwlConvex up(Rational(0), Rational(0), {Rational(0)},
                     {Rational(1), Rational(2)});
  const StepFunction su = derivative_step(up);
  CHECK(ginv_lower(su, Rational(0)).kind == ExtendedReal::Kind::kNegInf);
  CHECK(ginv_upper(su, Rational(0)).kind == ExtendedReal::Kind::kNegInf);
}

TEST_CASE("step function construction validates monotonicity") {
  CHECK_THROWS_AS(StepFunction({Rational(0)}, {Rational(1), Rational(0)}), NotMonotone);
  CHECK_THROWS_AS(StepFunction({Rational(0)}, {Rational(1)}), std::invalid_argument);
}

TEST_CASE("tie levels resolve to the breakpoint itself") {
  // F = -1 left of 0, 0 on (0, 1), 1 right of 1; level y = 0 has a run.
  const StepFunction step({Rational(0), Rational(1)},
                          {Rational(-1), Rational(0), Rational(1)});
  CHECK(ginv_lower(step, Rational(0)).value == Rational(0));
  CHECK(ginv_upper(step, Rational(0)).value == Rational(1));
}

TEST_CASE("numeric inverses on a monotone oracle") {
  auto identity = [](double x) { return x; };
  CHECK(ginv_lower_numeric(identity, 0.0, -1, 1) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(ginv_upper_numeric(identity, 0.0, -1, 1) == doctest::Approx(0.0).epsilon(1e-8));

  // level set saturating the bracket edges
  CHECK(ginv_lower_numeric(identity, -2.0, -1, 1) == -1);
  CHECK(ginv_upper_numeric(identity, 2.0, -1, 1) == 1);

  CHECK_THROWS_AS(ginv_lower_numeric(identity, 5.0, -1, 1), EmptyLevelSet);
  CHECK_THROWS_AS(ginv_upper_numeric(identity, -5.0, -1, 1), EmptyLevelSet);
  CHECK_THROWS_AS(ginv_lower_numeric([](double x) { return -x; }, 0.0, -1, 1),
                  NotMonotone);
}

TEST_CASE("numeric inverse approximates a step function jump") {
  auto heaviside = [](double x) { return x < 0.25 ? -1.0 : 1.0; };
  const double lo = ginv_lower_numeric(heaviside, 0.0, -1, 1, {1e-10, 33, 200});
  CHECK(lo == doctest::Approx(0.25).epsilon(1e-7));
}
