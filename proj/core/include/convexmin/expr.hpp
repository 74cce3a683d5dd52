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

#ifndef CONVEXMIN_EXPR_HPP_
#define CONVEXMIN_EXPR_HPP_

#include <memory>
#include <string>

namespace convexmin {

// Arithmetic expression in the single variable t. Supports + - * / ^,
// parentheses, unary signs, and abs, min, max, exp, log, sqrt, pow.
// Example: "abs(t-1) + abs(t+1)" or "(t-2)^2".
class Expression {
 public:
  static Expression parse(const std::string& text);  // throws std::invalid_argument

  double operator()(double t) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace convexmin

#endif  // CONVEXMIN_EXPR_HPP_
