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

#include "convexmin/rational.hpp"

#include <doctest.h>

#include "convexmin/process.hpp"

using namespace convexmin;

TEST_CASE("parse_rational accepts p/q, integers, decimals, exponents") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational(" 7 / 2 ") == Rational(7, 2));
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("0.2") == Rational(1, 5));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("-2.5e2") == Rational(-250));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
}

TEST_CASE("format_rational is canonical") {
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK(format_rational(Rational(-6, 8)) == "-3/4");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(format_rational(Rational(0)) == "0");
  CHECK(parse_rational(format_rational(Rational(-355, 113))) == Rational(-355, 113));
}

TEST_CASE("rational_from_double is exact on dyadics and binary expansions") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(3.0) == Rational(3));
  CHECK(rational_from_double(0.0) == Rational(0));
  // 0.1 is not exactly 1/10 in binary; the conversion must reproduce the
  // double bit pattern, not the decimal intent.
  const Rational tenth = rational_from_double(0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK(to_double(tenth) == 0.1);
  CHECK_THROWS_AS(rational_from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("double round trip is exact for every dyadic the simulator draws") {
  SeededRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Rational d = rng.next_dyadic01();
    CHECK(rational_from_double(to_double(d)) == d);
  }
}

TEST_CASE("arithmetic stays exact at scale") {
  Rational sum(0);
  for (int k = 1; k <= 200; ++k) sum += Rational(1, k);
  Rational back(0);
  for (int k = 200; k >= 1; --k) back += Rational(1, k);
  CHECK(sum == back);
  CHECK(sum > Rational(5));
  CHECK(sum < Rational(6));
}
