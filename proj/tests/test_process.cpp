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

#include "convexmin/process.hpp"

#include <doctest.h>

#include "convexmin/errors.hpp"

using namespace convexmin;

TEST_CASE("LAD risk of a two-point sample has the median interval as min set") {
  const std::vector<Rational> data{Rational(1, 5), Rational(4, 5)};
  const PwlConvex z = lad_risk(data);
  const MinSet a = min_set(z);
  CHECK(a.sigma() == Rational(1, 5));
  CHECK(a.tau() == Rational(4, 5));
  // 0.5*(|0.2 - t| + |0.8 - t|) at t = 0: 0.5
  CHECK(z(Rational(0)) == Rational(1, 2));
  CHECK(z(Rational(1, 2)) == Rational(3, 10));
}

TEST_CASE("odd samples give the unique sample median") {
  const std::vector<Rational> data{Rational(1, 10), Rational(1, 2), Rational(9, 10)};
  const MinSet a = min_set(lad_risk(data));
  CHECK(a.sigma() == Rational(1, 2));
  CHECK(a.tau() == Rational(1, 2));
}

TEST_CASE("LAD slopes follow the split-count formula, ties included") {
  const std::vector<Rational> data{Rational(0), Rational(0), Rational(1), Rational(1)};
  const PwlConvex z = lad_risk(data);
  REQUIRE(z.slopes().size() == 3);
  CHECK(z.slopes()[0] == Rational(-1));
  CHECK(z.slopes()[1] == Rational(0));  // (2*2 - 4)/4
  CHECK(z.slopes()[2] == Rational(1));
  const MinSet a = min_set(z);
  CHECK(a.sigma() == Rational(0));
  CHECK(a.tau() == Rational(1));

  // cross-check one value against the direct mean of distances
  CHECK(z(Rational(1, 4)) == (Rational(1, 4) + Rational(1, 4) + Rational(3, 4) * 2) / 4);
}

TEST_CASE("degenerate all-equal sample pins the min set to the atom") {
  const std::vector<Rational> data{Rational(1), Rational(1), Rational(1)};
  const MinSet a = min_set(lad_risk(data));
  CHECK(a.sigma() == Rational(1));
  CHECK(a.tau() == Rational(1));
  CHECK_THROWS_AS(lad_risk({}), ModelInvalid);
}

TEST_CASE("flat models expose their min set by construction") {
  SUBCASE("zero tilt keeps the whole flat interval") {
    const ProcessModel m = ProcessModel::tilted_flat(Rational(0), Rational(1, 2));
    SeededRng rng(3);
    const PwlConvex z = sample_trajectory(m, 0, rng);
    const MinSet a = min_set(z);
    CHECK(a.sigma() == Rational(0));
    CHECK(a.tau() == Rational(1, 2));
  }
  SUBCASE("positive tilt collapses it to the left endpoint") {
    const ProcessModel m = ProcessModel::tilted_flat(Rational(1, 8), Rational(1, 2));
    SeededRng rng(3);
    const MinSet a = min_set(sample_trajectory(m, 0, rng));
    CHECK(a.sigma() == Rational(0));
    CHECK(a.tau() == Rational(0));
  }
  SUBCASE("width zero is the pure kink") {
    const ProcessModel m = ProcessModel::tilted_flat(Rational(0), Rational(0));
    SeededRng rng(3);
    const MinSet a = min_set(sample_trajectory(m, 0, rng));
    CHECK(a.sigma() == a.tau());
  }
  SUBCASE("tilt magnitude must stay below the outer slopes") {
    CHECK_THROWS_AS(ProcessModel::tilted_flat(Rational(2)), ModelInvalid);
  }
}

TEST_CASE("bernoulli LAD hits atoms and the tie interval") {
  const ProcessModel m = ProcessModel::bernoulli_lad();
  const PathEnsemble ens = simulate(m, 500, 10, 99);
  bool saw_zero = false, saw_one = false, saw_tie = false;
  for (std::size_t p = 0; p < ens.size(); ++p) {
    const bool tie = ens.sigma[p] != ens.tau[p];
    if (tie) {
      CHECK(ens.sigma[p] == Rational(0));
      CHECK(ens.tau[p] == Rational(1));
      saw_tie = true;
    } else if (ens.sigma[p] == Rational(0)) {
      saw_zero = true;
    } else {
      CHECK(ens.sigma[p] == Rational(1));
      saw_one = true;
    }
  }
  CHECK(saw_zero);
  CHECK(saw_one);
  CHECK(saw_tie);
}

TEST_CASE("ensembles regenerate bit-identically from the master seed") {
  const ProcessModel m = ProcessModel::empirical_lad();
  const PathEnsemble a = simulate(m, 50, 40, 1234, SelectionPolicy::midpoint(), 7);
  const PathEnsemble b = simulate(m, 50, 40, 1234, SelectionPolicy::midpoint(), 7);
  CHECK(a.sigma == b.sigma);
  CHECK(a.tau == b.tau);
  CHECK(a.xi == b.xi);
  CHECK(a.sigma_d == b.sigma_d);

  const PathEnsemble c = simulate(m, 50, 40, 1234, SelectionPolicy::midpoint(), 8);
  CHECK(a.sigma != c.sigma);  // different stream, different sample
}

TEST_CASE("per-path seeds are independent of evaluation order") {
  const ProcessModel m = ProcessModel::empirical_lad();
  const PathEnsemble ens = simulate(m, 20, 30, 555, SelectionPolicy::midpoint(), 0);
  // Recompute a few paths in reverse order straight from the derived seeds.
  for (int p = 19; p >= 0; p -= 7) {
    SeededRng rng(derive_seed(555, 0, static_cast<std::uint64_t>(p)));
    const MinSet a = min_set(sample_trajectory(m, 30, rng));
    CHECK(a.sigma() == ens.sigma[static_cast<std::size_t>(p)]);
    CHECK(a.tau() == ens.tau[static_cast<std::size_t>(p)]);
  }
}

TEST_CASE("the selection is sandwiched exactly on every path") {
  for (const auto& policy :
       {SelectionPolicy::midpoint(), SelectionPolicy::smallest(), SelectionPolicy::largest(),
        SelectionPolicy::fixed_fraction(Rational(3, 7))}) {
    const PathEnsemble ens =
        simulate(ProcessModel::bernoulli_lad(), 200, 16, 2024, policy);
    for (std::size_t p = 0; p < ens.size(); ++p) {
      CHECK(ens.sigma[p] <= ens.xi[p]);
      CHECK(ens.xi[p] <= ens.tau[p]);
    }
  }
}

TEST_CASE("coupled ensembles share each path's data stream") {
  const ProcessModel m = ProcessModel::empirical_lad();
  const std::vector<int> stages{10, 25, 50};
  const auto coupled = simulate_coupled(m, 30, stages, 777);
  REQUIRE(coupled.size() == 3);
  // The last coupled stage replays exactly the plain per-path simulation at
  // that sample size (same stream, same draw order).
  const PathEnsemble direct = simulate(m, 30, 50, 777);
  CHECK(coupled[2].sigma == direct.sigma);
  CHECK(coupled[2].tau == direct.tau);
  CHECK_THROWS_AS(simulate_coupled(ProcessModel::tilted_flat(Rational(0)), 5,
                                   stages, 1),
                  ModelInvalid);
}

TEST_CASE("population min sets match the data law") {
  const auto uni = ProcessModel::empirical_lad().population_min_set();
  REQUIRE(uni.has_value());
  CHECK(uni->sigma() == Rational(1, 2));
  CHECK(uni->tau() == Rational(1, 2));
  const auto ber = ProcessModel::bernoulli_lad().population_min_set();
  REQUIRE(ber.has_value());
  CHECK(ber->sigma() == Rational(0));
  CHECK(ber->tau() == Rational(1));
  CHECK_FALSE(ProcessModel::tilted_flat(Rational(0)).population_min_set().has_value());
}

TEST_CASE("random PWL generators honor their contracts") {
  SeededRng rng(71);
  for (int i = 0; i < 100; ++i) {
    const PwlConvex f = random_compact_pwl(rng);
    CHECK(min_set(f).is_compact());
    CHECK(f.slopes().front() <= Rational(-1, 64));
    CHECK(f.slopes().back() >= Rational(1, 64));
    const PwlConvex g = random_convex_pwl(rng);  // constructor validates
    CHECK(g.segment_count() == g.breakpoints().size() + 1);
  }
}
