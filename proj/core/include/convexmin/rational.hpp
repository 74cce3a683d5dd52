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

#ifndef CONVEXMIN_RATIONAL_HPP_
#define CONVEXMIN_RATIONAL_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace convexmin {

// Exact rational scalar. Everything built from rational input (piecewise
// linear functions, grids, simulated data) stays exact; sign tests and
// comparisons carry no tolerance.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline int sign(const Rational& r) { return r.sign(); }

// Every finite double is a dyadic rational; the conversion is exact.
Rational rational_from_double(double x);

// Accepts "p/q", plain integers, and decimal literals with an optional
// exponent ("-3", "0.25", "1e-3", "2/7"). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

// Canonical form used in JSON output: "p/q", or "p" when q == 1.
std::string format_rational(const Rational& r);

}  // namespace convexmin

#endif  // CONVEXMIN_RATIONAL_HPP_
