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

#include "convexmin/min_set.hpp"

#include <stdexcept>

#include "convexmin/errors.hpp"

namespace convexmin {

bool MinSet::contains(const Rational& x) const {
  switch (kind) {
    case MinSetKind::kEmpty:
      return false;
    case MinSetKind::kCompact:
      return *lo <= x && x <= *hi;
    case MinSetKind::kLeftRay:
      return x <= *hi;
    case MinSetKind::kRightRay:
      return *lo <= x;
    case MinSetKind::kAll:
      return true;
  }
  return false;
}

const Rational& MinSet::sigma() const {
  if (!lo) throw std::logic_error("MinSet::sigma: no finite smallest minimizer");
  return *lo;
}

const Rational& MinSet::tau() const {
  if (!hi) throw std::logic_error("MinSet::tau: no finite largest minimizer");
  return *hi;
}

std::string to_string(MinSetKind kind) {
  switch (kind) {
    case MinSetKind::kEmpty: return "empty";
    case MinSetKind::kCompact: return "compact";
    case MinSetKind::kLeftRay: return "left_ray";
    case MinSetKind::kRightRay: return "right_ray";
    case MinSetKind::kAll: return "all";
  }
  return "?";
}

MinSet min_set(const PwlConvex& f) {
  const auto& slopes = f.slopes();
  const auto& bps = f.breakpoints();
  const std::size_t m = bps.size();

  // All slopes positive: f decreases without bound towards -inf.
  // All negative: towards +inf. Either way the infimum is unattained.
  if (slopes.front() > 0 || slopes.back() < 0) return {MinSetKind::kEmpty, {}, {}};

  if (slopes.front() == 0 && slopes.back() == 0) {
    // Non-decreasing slopes between two zeros are all zero: constant f.
    return {MinSetKind::kAll, {}, {}};
  }

  // First segment with slope >= 0; its left endpoint is the smallest
  // minimizer (the predicate "d_plus(x) >= 0" flips exactly there).
  std::size_t first_nonneg = 0;
  while (slopes[first_nonneg] < 0) ++first_nonneg;
  // Last segment with slope <= 0; its right endpoint is the largest.
  std::size_t last_nonpos = m;
  while (slopes[last_nonpos] > 0) --last_nonpos;

  const bool sigma_finite = first_nonneg > 0;
  const bool tau_finite = last_nonpos < m;
  if (sigma_finite && tau_finite) {
    return {MinSetKind::kCompact, bps[first_nonneg - 1], bps[last_nonpos]};
  }
  if (sigma_finite) return {MinSetKind::kRightRay, bps[first_nonneg - 1], {}};
  return {MinSetKind::kLeftRay, {}, bps[last_nonpos]};
}

LocationFlags location_predicates(const PwlConvex& f, const Rational& x) {
  const MinSet a = min_set(f);
  if (!a.is_compact()) {
    throw NoCompactMinSet("location_predicates: min set is " + to_string(a.kind));
  }
  const LocationFlags from_min_set{a.sigma() <= x, a.tau() >= x};
  const LocationFlags from_derivatives{f.d_plus(x) >= 0, f.d_minus(x) <= 0};
  if (from_min_set.sigma_le_x != from_derivatives.sigma_le_x ||
      from_min_set.tau_ge_x != from_derivatives.tau_ge_x) {
    throw EquivalenceViolation("location_predicates: routes disagree at x = " +
                               format_rational(x));
  }
  return from_min_set;
}

bool contains_via_min_set(const MinSet& a, const Rational& x) {
  return a.contains(x);
}

bool contains_via_derivatives(const PwlConvex& f, const Rational& x) {
  return f.d_minus(x) <= 0 && f.d_plus(x) >= 0;
}

}  // namespace convexmin
