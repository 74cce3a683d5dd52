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

#ifndef CONVEXMIN_SELECTION_HPP_
#define CONVEXMIN_SELECTION_HPP_

#include <stdexcept>
#include <string>

#include "convexmin/errors.hpp"
#include "convexmin/min_set.hpp"
#include "convexmin/rational.hpp"

namespace convexmin {

// Rule for picking one minimizer out of a compact min set. Every rule
// yields a point xi with sigma <= xi <= tau.
struct SelectionPolicy {
  enum class Rule { kSmallest, kLargest, kMidpoint, kFixedFraction };

  Rule rule = Rule::kMidpoint;
  Rational fraction = Rational(1, 2);  // used by kFixedFraction, in [0, 1]

  static SelectionPolicy smallest() { return {Rule::kSmallest, Rational(0)}; }
  static SelectionPolicy largest() { return {Rule::kLargest, Rational(1)}; }
  static SelectionPolicy midpoint() { return {Rule::kMidpoint, Rational(1, 2)}; }
  static SelectionPolicy fixed_fraction(Rational lambda) {
    if (lambda < 0 || lambda > 1) {
      throw std::invalid_argument("SelectionPolicy: fraction must be in [0, 1]");
    }
    return {Rule::kFixedFraction, std::move(lambda)};
  }

  static SelectionPolicy parse(const std::string& name);
  std::string name() const;
};

inline Rational select(const MinSet& a, const SelectionPolicy& policy) {
  if (!a.is_compact()) {
    throw NoCompactMinSet("select: min set is " + to_string(a.kind));
  }
  switch (policy.rule) {
    case SelectionPolicy::Rule::kSmallest:
      return a.sigma();
    case SelectionPolicy::Rule::kLargest:
      return a.tau();
    case SelectionPolicy::Rule::kMidpoint:
      return (a.sigma() + a.tau()) / 2;
    case SelectionPolicy::Rule::kFixedFraction:
      return a.sigma() + policy.fraction * (a.tau() - a.sigma());
  }
  throw std::logic_error("select: unknown rule");
}

inline Rational select(const PwlConvex& f, const SelectionPolicy& policy) {
  return select(min_set(f), policy);
}

inline SelectionPolicy SelectionPolicy::parse(const std::string& name) {
  if (name == "smallest") return smallest();
  if (name == "largest") return largest();
  if (name == "midpoint") return midpoint();
  if (name.rfind("fraction:", 0) == 0) {
    return fixed_fraction(parse_rational(name.substr(9)));
  }
  throw std::invalid_argument("SelectionPolicy: unknown policy '" + name + "'");
}

inline std::string SelectionPolicy::name() const {
  switch (rule) {
    case Rule::kSmallest: return "smallest";
    case Rule::kLargest: return "largest";
    case Rule::kMidpoint: return "midpoint";
    case Rule::kFixedFraction: return "fraction:" + format_rational(fraction);
  }
  return "?";
}

}  // namespace convexmin

#endif  // CONVEXMIN_SELECTION_HPP_
