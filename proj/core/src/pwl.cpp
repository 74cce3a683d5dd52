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

#include "convexmin/pwl.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace convexmin {

PwlConvex::PwlConvex(Rational anchor_x, Rational anchor_y,
                     std::vector<Rational> breakpoints,
                     std::vector<Rational> slopes)
    : anchor_x_(std::move(anchor_x)),
      anchor_y_(std::move(anchor_y)),
      breakpoints_(std::move(breakpoints)),
      slopes_(std::move(slopes)) {
  if (slopes_.size() != breakpoints_.size() + 1) {
    throw std::invalid_argument("PwlConvex: need breakpoints+1 slopes");
  }
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i - 1] < breakpoints_[i])) {
      throw std::invalid_argument("PwlConvex: breakpoints must strictly increase");
    }
  }
  for (std::size_t i = 1; i < slopes_.size(); ++i) {
    if (slopes_[i] < slopes_[i - 1]) {
      throw std::invalid_argument("PwlConvex: slopes must be non-decreasing");
    }
  }
  build_caches();
}

void PwlConvex::build_caches() {
  const std::size_t m = breakpoints_.size();
  values_.assign(m, Rational(0));
  if (m > 0) {
    // Index of the segment containing the anchor.
    const std::size_t seg = static_cast<std::size_t>(
        std::upper_bound(breakpoints_.begin(), breakpoints_.end(), anchor_x_) -
        breakpoints_.begin());
    // Seed one breakpoint value from the anchor, then walk outwards.
    if (seg == 0) {
      values_[0] = anchor_y_ + slopes_[0] * (breakpoints_[0] - anchor_x_);
    } else {
      values_[seg - 1] = anchor_y_ + slopes_[seg] * (breakpoints_[seg - 1] - anchor_x_);
    }
    const std::size_t seed = (seg == 0) ? 0 : seg - 1;
    for (std::size_t i = seed; i + 1 < m; ++i) {
      values_[i + 1] = values_[i] + slopes_[i + 1] * (breakpoints_[i + 1] - breakpoints_[i]);
    }
    for (std::size_t i = seed; i > 0; --i) {
      values_[i - 1] = values_[i] - slopes_[i] * (breakpoints_[i] - breakpoints_[i - 1]);
    }
  }

  breakpoints_d_.resize(m);
  values_d_.resize(m);
  slopes_d_.resize(slopes_.size());
  for (std::size_t i = 0; i < m; ++i) {
    breakpoints_d_[i] = to_double(breakpoints_[i]);
    values_d_[i] = to_double(values_[i]);
  }
  for (std::size_t i = 0; i < slopes_.size(); ++i) slopes_d_[i] = to_double(slopes_[i]);
  anchor_x_d_ = to_double(anchor_x_);
  anchor_y_d_ = to_double(anchor_y_);
}

PwlConvex PwlConvex::absolute(const Rational& center) {
  return PwlConvex(center, Rational(0), {center}, {Rational(-1), Rational(1)});
}

PwlConvex PwlConvex::constant(const Rational& value) {
  return PwlConvex(Rational(0), value, {}, {Rational(0)});
}

Rational PwlConvex::operator()(const Rational& t) const {
  if (breakpoints_.empty()) {
    return anchor_y_ + slopes_[0] * (t - anchor_x_);
  }
  const std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t) -
      breakpoints_.begin());
  const std::size_t ref = (idx == 0) ? 0 : idx - 1;
  return values_[ref] + slopes_[idx] * (t - breakpoints_[ref]);
}

double PwlConvex::operator()(double t) const {
  if (breakpoints_d_.empty()) {
    return anchor_y_d_ + slopes_d_[0] * (t - anchor_x_d_);
  }
  const std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(breakpoints_d_.begin(), breakpoints_d_.end(), t) -
      breakpoints_d_.begin());
  const std::size_t ref = (idx == 0) ? 0 : idx - 1;
  return values_d_[ref] + slopes_d_[idx] * (t - breakpoints_d_[ref]);
}

Rational PwlConvex::d_plus(const Rational& x) const {
  const std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
      breakpoints_.begin());
  return slopes_[idx];
}

Rational PwlConvex::d_minus(const Rational& x) const {
  const std::size_t idx = static_cast<std::size_t>(
      std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x) -
      breakpoints_.begin());
  return slopes_[idx];
}

PwlConvex PwlConvex::reflect() const {
  std::vector<Rational> bps(breakpoints_.rbegin(), breakpoints_.rend());
  for (auto& b : bps) b = -b;
  std::vector<Rational> sl(slopes_.rbegin(), slopes_.rend());
  for (auto& s : sl) s = -s;
  return PwlConvex(-anchor_x_, anchor_y_, std::move(bps), std::move(sl));
}

PwlConvex PwlConvex::shifted(const Rational& dx) const {
  std::vector<Rational> bps = breakpoints_;
  for (auto& b : bps) b += dx;
  return PwlConvex(anchor_x_ + dx, anchor_y_, std::move(bps), slopes_);
}

PwlConvex PwlConvex::scaled(const Rational& factor) const {
  if (factor < 0) {
    throw std::invalid_argument("PwlConvex::scaled: factor must be >= 0");
  }
  std::vector<Rational> sl = slopes_;
  for (auto& s : sl) s *= factor;
  return PwlConvex(anchor_x_, anchor_y_ * factor, breakpoints_, std::move(sl));
}

PwlConvex PwlConvex::plus_linear(const Rational& a, const Rational& b) const {
  std::vector<Rational> sl = slopes_;
  for (auto& s : sl) s += a;
  return PwlConvex(anchor_x_, anchor_y_ + a * anchor_x_ + b, breakpoints_,
                   std::move(sl));
}

PwlConvex operator+(const PwlConvex& f, const PwlConvex& g) {
  std::vector<Rational> bps;
  bps.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(),
             g.breakpoints().begin(), g.breakpoints().end(),
             std::back_inserter(bps));
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  std::vector<Rational> slopes;
  slopes.reserve(bps.size() + 1);
  slopes.push_back(f.slopes().front() + g.slopes().front());
  for (const auto& b : bps) {
    // d_plus at a breakpoint is the slope of the segment to its right.
    slopes.push_back(f.d_plus(b) + g.d_plus(b));
  }

  const Rational t0 = bps.empty() ? Rational(0) : bps.front();
  return PwlConvex(t0, f(t0) + g(t0), std::move(bps), std::move(slopes));
}

Rational sup_abs_diff(const PwlConvex& f, const PwlConvex& g,
                      const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("sup_abs_diff: empty interval");
  auto gap_at = [&](const Rational& t) -> Rational { return abs(f(t) - g(t)); };
  Rational best = gap_at(lo);
  Rational at_hi = gap_at(hi);
  if (at_hi > best) best = at_hi;
  for (const auto* bps : {&f.breakpoints(), &g.breakpoints()}) {
    for (const auto& b : *bps) {
      if (lo < b && b < hi) {
        Rational v = gap_at(b);
        if (v > best) best = v;
      }
    }
  }
  return best;
}

}  // namespace convexmin
