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

#ifndef CONVEXMIN_SPEC_IO_HPP_
#define CONVEXMIN_SPEC_IO_HPP_

#include <string>
#include <variant>

#include "convexmin/oracle.hpp"
#include "convexmin/pwl.hpp"

namespace convexmin {

// A function spec file describes either an exact PWL function,
//   {"kind": "pwl", "anchor": [x, y], "breakpoints": [...], "slopes": [...]}
// with rationals as "p/q" strings (plain numbers also accepted), or a
// black-box expression with an optional minimizer bracket and budget,
//   {"kind": "expr", "expr": "(t-2)^2", "bracket": [lo, hi]}.
struct ParsedFunction {
  std::variant<PwlConvex, ConvexOracle> fn;
  bool exact = false;

  const PwlConvex& pwl() const { return std::get<PwlConvex>(fn); }
  const ConvexOracle& oracle() const { return std::get<ConvexOracle>(fn); }
};

// Unknown fields are rejected; malformed values report the offending field.
// Throws std::invalid_argument with context.
ParsedFunction parse_function_spec(const std::string& json_text);
ParsedFunction load_function_spec(const std::string& path);

}  // namespace convexmin

#endif  // CONVEXMIN_SPEC_IO_HPP_
