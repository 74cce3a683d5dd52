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

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "convexmin/expr.hpp"

namespace convexmin {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("function spec: field '" + field + "': " + what);
}

void reject_unknown_fields(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw std::invalid_argument("function spec: unknown field '" + key + "'");
    }
  }
}

Rational rational_field(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
    if (j.is_number_float()) return rational_from_double(j.get<double>());
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
  fail(field, "expected a number or a 'p/q' string");
}

std::vector<Rational> rational_array(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(rational_field(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

ParsedFunction parse_function_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("function spec: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("function spec: expected a JSON object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("function spec: missing string field 'kind'");
  }
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "pwl") {
    reject_unknown_fields(j, {"kind", "anchor", "breakpoints", "slopes"});
    if (!j.contains("anchor") || !j["anchor"].is_array() || j["anchor"].size() != 2) {
      fail("anchor", "expected [x, y]");
    }
    Rational ax = rational_field(j["anchor"][0], "anchor[0]");
    Rational ay = rational_field(j["anchor"][1], "anchor[1]");
    if (!j.contains("breakpoints") || !j.contains("slopes")) {
      throw std::invalid_argument("function spec: pwl needs 'breakpoints' and 'slopes'");
    }
    std::vector<Rational> bps = rational_array(j["breakpoints"], "breakpoints");
    std::vector<Rational> slopes = rational_array(j["slopes"], "slopes");
    try {
      return {PwlConvex(std::move(ax), std::move(ay), std::move(bps), std::move(slopes)),
              true};
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("function spec: ") + e.what());
    }
  }

  if (kind == "expr") {
    reject_unknown_fields(j, {"kind", "expr", "bracket", "eval_budget"});
    if (!j.contains("expr") || !j["expr"].is_string()) {
      fail("expr", "expected an expression string");
    }
    Expression e = Expression::parse(j["expr"].get<std::string>());
    std::optional<std::pair<double, double>> bracket;
    if (j.contains("bracket")) {
      const auto& b = j["bracket"];
      if (!b.is_array() || b.size() != 2) fail("bracket", "expected [lo, hi]");
      const double lo = to_double(rational_field(b[0], "bracket[0]"));
      const double hi = to_double(rational_field(b[1], "bracket[1]"));
      if (!(lo <= hi)) fail("bracket", "lo must be <= hi");
      bracket = std::make_pair(lo, hi);
    }
    std::optional<long> budget;
    if (j.contains("eval_budget")) {
      if (!j["eval_budget"].is_number_integer()) fail("eval_budget", "expected an integer");
      budget = j["eval_budget"].get<long>();
      if (*budget < 1) fail("eval_budget", "must be positive");
    }
    return {ConvexOracle([e](double t) { return e(t); }, bracket, budget), false};
  }

  throw std::invalid_argument("function spec: unknown kind '" + kind + "'");
}

ParsedFunction load_function_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("function spec: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_function_spec(buf.str());
}

}  // namespace convexmin
