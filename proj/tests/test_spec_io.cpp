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

#include "convexmin/spec_io.hpp"

#include <doctest.h>

#include "convexmin/expr.hpp"
#include "convexmin/min_set.hpp"

using namespace convexmin;

TEST_CASE("pwl specs parse rationals given as strings or numbers") {
  const ParsedFunction f = parse_function_spec(R"json({
    "kind": "pwl",
    "anchor": [0, 0],
    "breakpoints": ["-1/1", "1"],
    "slopes": ["-1", 0, "1/1"]
  })json");
  REQUIRE(f.exact);
  const MinSet a = min_set(f.pwl());
  CHECK(a.sigma() == Rational(-1));
  CHECK(a.tau() == Rational(1));
}

TEST_CASE("decimal strings are exact decimals, not binary doubles") {
  const ParsedFunction f = parse_function_spec(R"json({
    "kind": "pwl", "anchor": ["0.2", "0"], "breakpoints": ["0.2"], "slopes": [-1, 1]
  })json");
  CHECK(f.pwl().breakpoints()[0] == Rational(1, 5));
}

TEST_CASE("unknown and malformed fields are rejected with context") {
  CHECK_THROWS_WITH_AS(parse_function_spec(R"json({"kind": "pwl", "anchor": [0, 0],
                                              "breakpoints": [], "slopes": [0],
                                              "color": "red"})json"),
                       doctest::Contains("unknown field 'color'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_function_spec(R"json({"kind": "pwl", "anchor": [0, 0],
                                              "breakpoints": ["x"], "slopes": [0, 1]})json"),
                       doctest::Contains("breakpoints[0]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_spec("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_function_spec(R"json({"kind": "nope"})json"), std::invalid_argument);
  // convexity violations surface at parse time
  CHECK_THROWS_AS(parse_function_spec(R"json({"kind": "pwl", "anchor": [0, 0],
                                         "breakpoints": [0], "slopes": [1, -1]})json"),
                  std::invalid_argument);
}

TEST_CASE("expr specs build bracketed oracles") {
  const ParsedFunction f = parse_function_spec(R"json({
    "kind": "expr", "expr": "abs(t-1) + abs(t+1)", "bracket": [-5, 5]
  })json");
  REQUIRE_FALSE(f.exact);
  REQUIRE(f.oracle().bracket().has_value());
  CHECK(f.oracle().bracket()->first == -5);
  CHECK(f.oracle()(0.0) == 2.0);
  CHECK(f.oracle()(2.0) == 4.0);

  CHECK_THROWS_AS(parse_function_spec(R"json({"kind": "expr", "expr": "t", "bracket": [1, -1]})json"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_function_spec(R"json({"kind": "expr", "expr": "t", "eval_budget": 0})json"),
                  std::invalid_argument);
}

TEST_CASE("expression grammar") {
  CHECK(Expression::parse("2+3*4^2")(0) == 50.0);
  CHECK(Expression::parse("(2+3)*4")(0) == 20.0);
  CHECK(Expression::parse("-t^2")(3) == -9.0);
  CHECK(Expression::parse("2^-1")(0) == 0.5);
  CHECK(Expression::parse("abs(t)")(-4) == 4.0);
  CHECK(Expression::parse("max(t, 0)")(-4) == 0.0);
  CHECK(Expression::parse("min(t, 0)")(-4) == -4.0);
  CHECK(Expression::parse("pow(t, 2)")(3) == 9.0);
  CHECK(Expression::parse("sqrt(t)")(9) == 3.0);
  CHECK(Expression::parse("exp(0*t)")(5) == 1.0);
  CHECK(Expression::parse(" ( t - 2 ) ^ 2 ")(5) == 9.0);
  CHECK_THROWS_AS(Expression::parse("t +"), std::invalid_argument);
  CHECK_THROWS_AS(Expression::parse("foo(t)"), std::invalid_argument);
  CHECK_THROWS_AS(Expression::parse("abs(t, 1)"), std::invalid_argument);
  CHECK_THROWS_AS(Expression::parse("t t"), std::invalid_argument);
  CHECK_THROWS_AS(Expression::parse(""), std::invalid_argument);
}
