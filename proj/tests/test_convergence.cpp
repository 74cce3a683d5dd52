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

#include "convexmin/convergence.hpp"

#include <doctest.h>

#include "convexmin/process.hpp"
#include "support.hpp"

using namespace convexmin;

namespace {

FunctionSequence shifted_abs_sequence() {
  FunctionSequence seq{nullptr, PwlConvex::absolute(Rational(0)), default_dense_grid()};
  seq.stage = [](int n) { return StageFunction(PwlConvex::absolute(Rational(1, n))); };
  return seq;
}

FunctionSequence discontinuity_sequence() {
  FunctionSequence seq{nullptr, discontinuity_family(1).limit, default_dense_grid()};
  seq.stage = [](int n) { return StageFunction(discontinuity_family(n).stage); };
  return seq;
}

}  // namespace

TEST_CASE("discontinuity family reproduces the exact argmin values") {
  for (int n : {1, 2, 5, 17, 100}) {
    const DiscontinuityPair pair = discontinuity_family(n);
    const MinSet stage = min_set(pair.stage);
    CHECK(stage.tau() == Rational(0));
    CHECK(stage.sigma() == Rational(-1));
    const MinSet limit = min_set(pair.limit);
    CHECK(limit.sigma() == Rational(-1));
    CHECK(limit.tau() == Rational(1));
  }
  CHECK_THROWS_AS(discontinuity_family(0), std::invalid_argument);
}

TEST_CASE("discontinuity family converges uniformly with the known sup gap") {
  const DiscontinuityPair p5 = discontinuity_family(5);
  const Rational gap = sup_abs_diff(p5.stage, p5.limit, Rational(-3), Rational(3));
  CHECK(gap == Rational(1, 6));        // attained at t = 1
  CHECK(gap <= Rational(1, 5));        // the coarse bound max((1+1/n)/(n+1), 1/n)
}

TEST_CASE("semicontinuity holds while the largest minimizer jumps") {
  const SemicontinuityReport rep =
      check_semicontinuity(discontinuity_sequence(), 50, Rational(1, 1000000000));
  CHECK(rep.sigma_clause_pass);
  CHECK(rep.tau_clause_pass);
  CHECK_FALSE(rep.limit_unique);
  CHECK_FALSE(rep.unique_clause_pass.has_value());  // correctly not claimed
  CHECK(rep.all_exact);
  // tau(f_n) = 0 for every stage; the limit's largest minimizer is 1.
  for (const Rational& t : rep.tau) CHECK(t == Rational(0));
  CHECK(abs(rep.tau.back() - rep.limit_tau) == Rational(1));
  // tail quantities are monotone in the window start by construction
  for (std::size_t i = 1; i < rep.tail_inf_sigma.size(); ++i) {
    CHECK(rep.tail_inf_sigma[i - 1] <= rep.tail_inf_sigma[i]);
    CHECK(rep.tail_sup_tau[i - 1] >= rep.tail_sup_tau[i]);
  }
}

TEST_CASE("unique limits get the full convergence clause") {
  const SemicontinuityReport rep =
      check_semicontinuity(shifted_abs_sequence(), 100, Rational(1, 1000000000));
  CHECK(rep.limit_unique);
  REQUIRE(rep.unique_clause_pass.has_value());
  CHECK(*rep.unique_clause_pass);
  CHECK(rep.sigma_trend_slope < 0);
  CHECK(rep.sigma.back() == Rational(1, 100));
}

TEST_CASE("a tilt pins the whole flat bottom to its left endpoint") {
  const PwlConvex flat = test::flat_vee();
  FunctionSequence seq{nullptr, flat, default_dense_grid()};
  seq.stage = [flat](int n) {
    return StageFunction(flat.plus_linear(Rational(1, n + 1), Rational(0)));
  };
  const SemicontinuityReport rep = check_semicontinuity(seq, 60, Rational(1, 1000000000));
  for (const Rational& s : rep.sigma) CHECK(s == Rational(-1));
  for (const Rational& t : rep.tau) CHECK(t == Rational(-1));
  CHECK(rep.sigma_clause_pass);
  CHECK(rep.tau_clause_pass);
}

TEST_CASE("oracle stages run through bisection") {
  FunctionSequence seq{nullptr,
                       ConvexOracle([](double t) { return t * t; }, std::make_pair(-2.0, 2.0)),
                       default_dense_grid()};
  seq.stage = [](int n) {
    const double c = 1.0 / n;
    return StageFunction(ConvexOracle([c](double t) { return (t - c) * (t - c); },
                                      std::make_pair(-2.0, 3.0)));
  };
  BisectOptions opts;
  opts.tol = 1e-8;
  // 20 stages of a 1/n family: the per-family tolerance must cover 1/20.
  const SemicontinuityReport rep =
      check_semicontinuity(seq, 20, Rational(1, 1000000), Rational(1, 10), opts);
  CHECK_FALSE(rep.all_exact);
  CHECK(rep.sigma_clause_pass);
  CHECK(rep.tau_clause_pass);
  CHECK(rep.limit_unique);
}

TEST_CASE("the dense grid alone is enough to reach the same verdicts") {
  // Finer grid and default grid must agree on every clause.
  FunctionSequence coarse = discontinuity_sequence();
  FunctionSequence fine = discontinuity_sequence();
  fine.dense_grid.clear();
  for (int k = -3 * 64; k <= 3 * 64; ++k) fine.dense_grid.push_back(Rational(k, 64));
  const auto rc = check_semicontinuity(coarse, 40, Rational(1, 1000000000));
  const auto rf = check_semicontinuity(fine, 40, Rational(1, 1000000000));
  CHECK(rc.sigma_clause_pass == rf.sigma_clause_pass);
  CHECK(rc.tau_clause_pass == rf.tau_clause_pass);
  CHECK(rc.limit_unique == rf.limit_unique);
  // and the pointwise gaps on the dense grid vanish in both
  CHECK(rc.pointwise_gap.back() <= Rational(1, 40));
  CHECK(rf.pointwise_gap.back() <= Rational(1, 40));
}

TEST_CASE("uniform convergence bound from grid control") {
  SUBCASE("vertical shifts have sup gap exactly 1/n") {
    FunctionSequence seq{nullptr, PwlConvex::absolute(Rational(0)), default_dense_grid()};
    seq.stage = [](int n) {
      return StageFunction(
          PwlConvex::absolute(Rational(0)).plus_linear(Rational(0), Rational(1, n)));
    };
    const UniformConvergenceReport rep = check_uniform_from_pointwise(seq, -1, 1, 30);
    CHECK(rep.pass);
    for (int n = 1; n <= 30; ++n) {
      CHECK(rep.observed[static_cast<std::size_t>(n - 1)] == doctest::Approx(1.0 / n));
    }
  }
  SUBCASE("the discontinuity family converges uniformly despite the argmin jump") {
    const UniformConvergenceReport rep =
        check_uniform_from_pointwise(discontinuity_sequence(), -2, 2, 50);
    CHECK(rep.pass);
    CHECK(rep.observed.back() <= 1.0 / 50);
  }
  SUBCASE("random PWL perturbations respect the certified bound") {
    SeededRng rng(67);
    for (int trial = 0; trial < 10; ++trial) {
      const PwlConvex limit = random_compact_pwl(rng);
      const PwlConvex bump = random_convex_pwl(rng);
      FunctionSequence seq{nullptr, limit, default_dense_grid()};
      seq.stage = [limit, bump](int n) {
        return StageFunction(limit + bump.scaled(Rational(1, n)));
      };
      const UniformConvergenceReport rep = check_uniform_from_pointwise(seq, -2, 2, 25);
      CHECK(rep.pass);
      for (std::size_t i = 0; i < rep.observed.size(); ++i) {
        CHECK(rep.observed[i] <= rep.bound[i] + 1e-9);
      }
    }
  }
}

TEST_CASE("net grids enumerate the product order with a diagonal chain") {
  SUBCASE("a sequence is the rank-one case") {
    const NetGrid net({3});
    CHECK(net.indices().size() == 3);
    const auto chain = net.cofinal_chain();
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == std::vector<int>{1});
    CHECK(chain[2] == std::vector<int>{3});
  }
  SUBCASE("2x2 grid") {
    const NetGrid net({2, 2});
    CHECK(net.indices().size() == 4);
    CHECK(NetGrid::leq(std::vector<int>{1, 1}, std::vector<int>{1, 2}));
    CHECK(NetGrid::leq(std::vector<int>{1, 1}, std::vector<int>{2, 1}));
    CHECK_FALSE(NetGrid::leq(std::vector<int>{1, 2}, std::vector<int>{2, 1}));
    const auto chain = net.cofinal_chain();
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == std::vector<int>{1, 1});
    CHECK(chain[1] == std::vector<int>{2, 2});
  }
  SUBCASE("tail infima of the shifted-kink net sink to the limit") {
    auto sigma_of = [](std::span<const int> alpha) {
      Rational c(0);
      for (int a : alpha) c += Rational(1, a);
      return min_set(PwlConvex::absolute(c)).sigma();
    };
    const NetGrid net({4, 4});
    // The upper set of (k, k) bottoms out at the top corner (4, 4).
    CHECK(net.tail_inf(sigma_of, std::vector<int>{1, 1}) == Rational(1, 2));
    CHECK(net.tail_inf(sigma_of, std::vector<int>{4, 4}) == Rational(1, 2));
    CHECK(net.tail_sup(sigma_of, std::vector<int>{2, 2}) == Rational(1));
    // Larger grids push the diagonal tail infimum towards 0 = sigma(limit).
    const NetGrid big({16, 16});
    CHECK(big.tail_inf(sigma_of, std::vector<int>{16, 16}) == Rational(1, 8));
  }
}
