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

#include "convexmin/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace convexmin {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("rational_from_double: non-finite value");
  }
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  // 53 shifts make the mantissa integral.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r(scaled);
  if (exp > 0) {
    r *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    r /= Rational(BigInt(1) << -exp);
  }
  return r;
}

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// cpp_int's string constructor treats a leading 0 as an octal prefix;
// canonicalize to plain decimal first.
BigInt decimal_bigint(std::string s) {
  std::string sign;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    if (s[0] == '-') sign = "-";
    s.erase(0, 1);
  }
  std::size_t first = s.find_first_not_of('0');
  if (first == std::string::npos) return BigInt(0);
  return BigInt(sign + s.substr(first));
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) {
      throw std::invalid_argument("parse_rational: malformed 'p/q': " + text);
    }
    BigInt d = decimal_bigint(den);
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(decimal_bigint(num), d);
  }

  if (is_integer_literal(s)) return Rational(decimal_bigint(s));

  // Decimal with optional exponent: [sign] digits [. digits] [e[sign]digits]
  bool negative = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    i = 1;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false, seen_digit = false;
  long exp10 = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      const std::string tail = s.substr(i + 1);
      if (!is_integer_literal(tail)) {
        throw std::invalid_argument("parse_rational: malformed exponent: " + text);
      }
      exp10 = std::stol(tail);
      i = s.size() - 1;
    } else {
      throw std::invalid_argument("parse_rational: malformed number: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("parse_rational: malformed number: " + text);

  BigInt mantissa = decimal_bigint(digits);
  if (negative) mantissa = -mantissa;
  long net_exp = exp10 - frac_digits;
  Rational r(mantissa);
  if (net_exp > 0) {
    r *= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(net_exp)));
  } else if (net_exp < 0) {
    r /= Rational(boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-net_exp)));
  }
  return r;
}

std::string format_rational(const Rational& r) {
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace convexmin
