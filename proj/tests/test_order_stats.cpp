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

#include "convexmin/order_stats.hpp"

#include <doctest.h>

#include "convexmin/errors.hpp"

using namespace convexmin;

TEST_CASE("ray tables are monotone and bounded") {
  SeededRng rng(73);
  std::vector<double> values;
  for (int i = 0; i < 500; ++i) values.push_back(to_double(rng.next_dyadic01()));
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  const RayProbabilityTable t = ray_table(values, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(t.p_gt[k] >= 0);
    CHECK(t.p_gt[k] <= 1);
    CHECK(t.p_lt[k] >= 0);
    CHECK(t.p_lt[k] <= 1);
    if (k > 0) {
      CHECK(t.p_gt[k] <= t.p_gt[k - 1]);   // non-increasing
      CHECK(t.p_lt[k] >= t.p_lt[k - 1]);   // non-decreasing
    }
  }
  // strict values at an exact atom grid point
  const RayProbabilityTable pm = point_mass_table(0.5, {0.0, 0.5, 1.0});
  CHECK(pm.p_gt == std::vector<double>{1, 0, 0});
  CHECK(pm.p_lt == std::vector<double>{0, 0, 1});
}

TEST_CASE("two-sample KS distance") {
  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_statistic({0, 0.1, 0.2}, {5, 6, 7}) == 1.0);
  // one-element shift in a 4-point sample moves one CDF step
  CHECK(ks_statistic({1, 2, 3, 4}, {1, 2, 3, 5}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(ks_statistic({}, {1.0}), std::invalid_argument);
}

TEST_CASE("degenerate order test: stages identical to the limit pass with zero slack") {
  SeededRng rng(79);
  std::vector<double> values;
  for (int i = 0; i < 400; ++i) values.push_back(to_double(rng.next_dyadic01()));
  std::vector<double> grid{0.1, 0.3, 0.5, 0.7, 0.9};
  const RayProbabilityTable table = ray_table(values, grid);
  const std::vector<RayProbabilityTable> stages{table, table, table};
  OrderTestOptions opts;
  opts.slack_floor = 0.0;
  const OrderTestResult res = order_convergence_test(stages, table, opts);
  CHECK(res.right_pass);
  CHECK(res.left_pass);
  CHECK(res.combined_pass);
  CHECK(res.worst_right_margin >= 0);
}

TEST_CASE("grid mismatch is rejected") {
  const RayProbabilityTable a = point_mass_table(0.0, {0.0, 1.0});
  const RayProbabilityTable b = point_mass_table(0.0, {0.0, 2.0});
  const std::vector<RayProbabilityTable> stages{a};
  CHECK_THROWS_AS(order_convergence_test(stages, b, {}), GridMismatch);
}

TEST_CASE("uniform LAD passes both one-sided tests against its point-mass limit") {
  const ProcessModel m = ProcessModel::empirical_lad();
  const std::vector<int> stage_ns{25, 100, 400};
  const int paths = 500;
  std::vector<double> grid{0.1, 0.2, 0.3, 0.7, 0.8, 0.9};
  std::vector<RayProbabilityTable> sigma_tables;
  for (std::size_t s = 0; s < stage_ns.size(); ++s) {
    const PathEnsemble e = simulate(m, paths, stage_ns[s], 31337,
                                    SelectionPolicy::midpoint(), 100 + s);
    sigma_tables.push_back(ray_table(e.sigma_d, grid));
  }
  const RayProbabilityTable limit = point_mass_table(0.5, grid);
  OrderTestOptions opts;
  opts.slack_floor = 3.0 / paths;
  const OrderTestResult res = order_convergence_test(sigma_tables, limit, opts);
  CHECK(res.right_pass);
  CHECK(res.left_pass);
  CHECK(res.combined_pass);
}

TEST_CASE("sandwich test combines the one-sided limits") {
  const ProcessModel m = ProcessModel::bernoulli_lad();
  const std::vector<int> stage_ns{20, 80, 320};
  const int paths = 600;
  std::vector<double> grid{-0.5, -0.1, 0.25, 0.5, 0.75, 1.1, 1.5};
  std::vector<RayProbabilityTable> xi_tables;
  for (std::size_t s = 0; s < stage_ns.size(); ++s) {
    const PathEnsemble e = simulate(m, paths, stage_ns[s], 4242,
                                    SelectionPolicy::midpoint(), 200 + s);
    xi_tables.push_back(ray_table(e.xi_d, grid));
  }
  const RayProbabilityTable limit_sigma = point_mass_table(0.0, grid);
  const RayProbabilityTable limit_tau = point_mass_table(1.0, grid);
  OrderTestOptions opts;
  opts.slack_floor = 3.0 / paths;
  const SandwichTestResult res = selection_sandwich_test(
      xi_tables, limit_sigma, limit_tau, /*limit_sigma_tau_ks=*/1.0,
      /*ks_equality_threshold=*/0.0, opts);
  CHECK(res.sigma_right_pass);
  CHECK(res.tau_left_pass);
  CHECK_FALSE(res.natural_topology_pass.has_value());  // laws differ: no claim
}

TEST_CASE("fidi probe: identical stages have zero distance, larger gaps shrink") {
  const ProcessModel m = ProcessModel::empirical_lad();
  const std::vector<double> t_grid{0.25, 0.5};
  const FidiTable self = fidi_convergence_probe(m, t_grid, 200, 200, 300, 11);
  for (double d : self.ks_per_t) CHECK(d == 0.0);
  REQUIRE(self.pairs.size() == 1);
  CHECK(self.pairs[0].distance == 0.0);

  const FidiTable far = fidi_convergence_probe(m, t_grid, 25, 800, 300, 11);
  const FidiTable near = fidi_convergence_probe(m, t_grid, 400, 800, 300, 11);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    CHECK(near.ks_per_t[k] <= far.ks_per_t[k]);
  }
}
