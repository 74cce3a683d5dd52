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

#include "convexmin/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace convexmin {

struct Expression::Node {
  enum class Op { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kFn1, kFn2 };

  Op op;
  double value = 0;
  double (*fn1)(double) = nullptr;
  double (*fn2)(double, double) = nullptr;
  std::shared_ptr<const Node> a, b;

  double eval(double t) const {
    switch (op) {
      case Op::kConst: return value;
      case Op::kVar: return t;
      case Op::kAdd: return a->eval(t) + b->eval(t);
      case Op::kSub: return a->eval(t) - b->eval(t);
      case Op::kMul: return a->eval(t) * b->eval(t);
      case Op::kDiv: return a->eval(t) / b->eval(t);
      case Op::kPow: return std::pow(a->eval(t), b->eval(t));
      case Op::kNeg: return -a->eval(t);
      case Op::kFn1: return fn1(a->eval(t));
      case Op::kFn2: return fn2(a->eval(t), b->eval(t));
    }
    return 0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at position " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) {
        lhs = make({Node::Op::kAdd, 0, nullptr, nullptr, lhs, term()});
      } else if (eat('-')) {
        lhs = make({Node::Op::kSub, 0, nullptr, nullptr, lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*')) {
        lhs = make({Node::Op::kMul, 0, nullptr, nullptr, lhs, factor()});
      } else if (eat('/')) {
        lhs = make({Node::Op::kDiv, 0, nullptr, nullptr, lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  // Unary minus binds looser than '^': -t^2 is -(t^2).
  NodePtr factor() {
    if (eat('-')) return make({Node::Op::kNeg, 0, nullptr, nullptr, factor(), nullptr});
    if (eat('+')) return factor();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) {  // right associative; exponent may carry a sign
      return make({Node::Op::kPow, 0, nullptr, nullptr, base, factor()});
    }
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return ident();
    if (eat('(')) {
      NodePtr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make({Node::Op::kConst, v, nullptr, nullptr, nullptr, nullptr});
  }

  NodePtr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name = s_.substr(start, pos_ - start);
    if (name == "t") return make({Node::Op::kVar, 0, nullptr, nullptr, nullptr, nullptr});

    if (!eat('(')) fail("unknown identifier '" + name + "'");
    NodePtr first = expr();
    NodePtr second;
    if (eat(',')) second = expr();
    if (!eat(')')) fail("expected ')' after arguments of " + name);

    auto unary_fn = [&](double (*f)(double)) {
      if (second) fail(name + " takes one argument");
      return make({Node::Op::kFn1, 0, f, nullptr, first, nullptr});
    };
    auto binary_fn = [&](double (*f)(double, double)) {
      if (!second) fail(name + " takes two arguments");
      return make({Node::Op::kFn2, 0, nullptr, f, first, second});
    };

    if (name == "abs") return unary_fn([](double x) { return std::fabs(x); });
    if (name == "exp") return unary_fn([](double x) { return std::exp(x); });
    if (name == "log") return unary_fn([](double x) { return std::log(x); });
    if (name == "sqrt") return unary_fn([](double x) { return std::sqrt(x); });
    if (name == "min") return binary_fn([](double x, double y) { return std::fmin(x, y); });
    if (name == "max") return binary_fn([](double x, double y) { return std::fmax(x, y); });
    if (name == "pow") return binary_fn([](double x, double y) { return std::pow(x, y); });
    fail("unknown function '" + name + "'");
  }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  Expression e;
  e.root_ = Parser(text).run();
  e.text_ = text;
  return e;
}

double Expression::operator()(double t) const { return root_->eval(t); }

}  // namespace convexmin
