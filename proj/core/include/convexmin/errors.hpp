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

#ifndef CONVEXMIN_ERRORS_HPP_
#define CONVEXMIN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace convexmin {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sampled difference-quotient sequence (or midpoint check) contradicts
// convexity beyond tolerance.
struct ConvexityViolation : Error {
  using Error::Error;
};

// An oracle operation needed more evaluations than its eval_budget allows.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Bisection over an oracle requires a minimizer bracket.
struct NoBracket : Error {
  using Error::Error;
};

struct NotMonotone : Error {
  using Error::Error;
};

struct EmptyLevelSet : Error {
  using Error::Error;
};

struct NoCompactMinSet : Error {
  using Error::Error;
};

// A dense grid lacks the flanking points the Lipschitz construction needs.
struct GridTooSparse : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

// The diagnostic x-grid does not span the support of the min set.
struct GridTooNarrow : Error {
  using Error::Error;
};

struct StageFailure : Error {
  using Error::Error;
};

struct ModelInvalid : Error {
  using Error::Error;
};

// The in-probability experiment requires an a.s.-unique population minimizer.
struct NonUniqueLimit : Error {
  using Error::Error;
};

// The two sides of the location equivalence disagreed; indicates an
// implementation bug and must never fire.
struct EquivalenceViolation : Error {
  using Error::Error;
};

}  // namespace convexmin

#endif  // CONVEXMIN_ERRORS_HPP_
