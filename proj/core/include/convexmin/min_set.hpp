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

#ifndef CONVEXMIN_MIN_SET_HPP_
#define CONVEXMIN_MIN_SET_HPP_

#include <optional>
#include <string>

#include "convexmin/pwl.hpp"
#include "convexmin/rational.hpp"

namespace convexmin {

// The set of global minimizers of a convex function: empty, a compact
// interval [lo, hi], a ray, or the whole line (constant function).
enum class MinSetKind { kEmpty, kCompact, kLeftRay, kRightRay, kAll };

struct MinSet {
  MinSetKind kind = MinSetKind::kEmpty;
  std::optional<Rational> lo;  // present for kCompact, kRightRay
  std::optional<Rational> hi;  // present for kCompact, kLeftRay

  bool is_compact() const { return kind == MinSetKind::kCompact; }
  bool contains(const Rational& x) const;

  // Smallest / largest minimizing point; only defined when finite.
  const Rational& sigma() const;
  const Rational& tau() const;
};

std::string to_string(MinSetKind kind);

// Exact minimum set of a PWL convex function, found by scanning the
// non-decreasing slope sequence for its sign change. Decided from slope
// signs alone; never searches.
MinSet min_set(const PwlConvex& f);

struct LocationFlags {
  bool sigma_le_x = false;
  bool tau_ge_x = false;
};

// Evaluates both characterizations of minimizer location independently --
// (a) sigma(f) <= x and tau(f) >= x from the min set, (b) the sign
// conditions d_plus(x) >= 0 and d_minus(x) <= 0 -- and asserts they agree.
// Requires a compact min set. Throws EquivalenceViolation if the routes
// disagree (an implementation bug) and NoCompactMinSet otherwise.
LocationFlags location_predicates(const PwlConvex& f, const Rational& x);

// Membership of x in the min set via the interval, and independently via
// the derivative sign conditions. Used by the uniqueness diagnostics to
// cross-check the two routes.
bool contains_via_min_set(const MinSet& a, const Rational& x);
bool contains_via_derivatives(const PwlConvex& f, const Rational& x);

}  // namespace convexmin

#endif  // CONVEXMIN_MIN_SET_HPP_
