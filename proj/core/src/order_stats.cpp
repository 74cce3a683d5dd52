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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "convexmin/errors.hpp"

namespace convexmin {

RayProbabilityTable ray_table(std::span<const double> values,
                              std::vector<double> x_grid) {
  if (values.empty()) throw std::invalid_argument("ray_table: empty sample");
  if (!std::is_sorted(x_grid.begin(), x_grid.end())) {
    throw std::invalid_argument("ray_table: x_grid must be sorted");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  RayProbabilityTable table;
  table.paths = sorted.size();
  const double m = static_cast<double>(sorted.size());
  table.x_grid = std::move(x_grid);
  table.p_gt.reserve(table.x_grid.size());
  table.p_lt.reserve(table.x_grid.size());
  table.ci_halfwidth.reserve(table.x_grid.size());
  for (double x : table.x_grid) {
    const auto gt = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    const auto lt = std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    const double p_gt = static_cast<double>(gt) / m;
    const double p_lt = static_cast<double>(lt) / m;
    table.p_gt.push_back(p_gt);
    table.p_lt.push_back(p_lt);
    const double p_worst = std::max(p_gt * (1 - p_gt), p_lt * (1 - p_lt));
    table.ci_halfwidth.push_back(3.0 * std::sqrt(p_worst / m));
  }
  return table;
}

RayProbabilityTable point_mass_table(double atom, std::vector<double> x_grid) {
  if (!std::is_sorted(x_grid.begin(), x_grid.end())) {
    throw std::invalid_argument("point_mass_table: x_grid must be sorted");
  }
  RayProbabilityTable table;
  table.paths = 0;  // analytic
  table.x_grid = std::move(x_grid);
  for (double x : table.x_grid) {
    table.p_gt.push_back(atom > x ? 1.0 : 0.0);
    table.p_lt.push_back(atom < x ? 1.0 : 0.0);
    table.ci_halfwidth.push_back(0.0);
  }
  return table;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

void require_same_grid(const RayProbabilityTable& a, const RayProbabilityTable& b) {
  if (a.x_grid != b.x_grid) {
    throw GridMismatch("order test: tables disagree on the x grid");
  }
}

}  // namespace

OrderTestResult order_convergence_test(std::span<const RayProbabilityTable> stages,
                                       const RayProbabilityTable& limit,
                                       const OrderTestOptions& opts) {
  if (stages.empty()) throw std::invalid_argument("order test: no stages");
  for (const auto& s : stages) require_same_grid(s, limit);

  const std::size_t n_stages = stages.size();
  const auto late_count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(n_stages * opts.late_fraction)));
  const std::size_t first_late = n_stages - late_count;

  OrderTestResult out;
  const std::size_t nx = limit.x_grid.size();
  out.right_pass_at_x.assign(nx, 1);
  out.left_pass_at_x.assign(nx, 1);
  out.worst_right_margin = std::numeric_limits<double>::infinity();
  out.worst_left_margin = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < nx; ++k) {
    double tail_gt = std::numeric_limits<double>::infinity();
    double tail_lt = std::numeric_limits<double>::infinity();
    for (std::size_t s = first_late; s < n_stages; ++s) {
      tail_gt = std::min(tail_gt, stages[s].p_gt[k]);
      tail_lt = std::min(tail_lt, stages[s].p_lt[k]);
    }
    const double tol = limit.ci_halfwidth[k] + opts.slack_floor;
    const double right_margin = tail_gt - (limit.p_gt[k] - tol);
    const double left_margin = tail_lt - (limit.p_lt[k] - tol);
    out.right_pass_at_x[k] = right_margin >= 0 ? 1 : 0;
    out.left_pass_at_x[k] = left_margin >= 0 ? 1 : 0;
    out.worst_right_margin = std::min(out.worst_right_margin, right_margin);
    out.worst_left_margin = std::min(out.worst_left_margin, left_margin);
  }
  out.right_pass = std::all_of(out.right_pass_at_x.begin(), out.right_pass_at_x.end(),
                               [](std::uint8_t v) { return v != 0; });
  out.left_pass = std::all_of(out.left_pass_at_x.begin(), out.left_pass_at_x.end(),
                              [](std::uint8_t v) { return v != 0; });
  out.combined_pass = out.right_pass && out.left_pass;
  return out;
}

SandwichTestResult selection_sandwich_test(std::span<const RayProbabilityTable> xi_stages,
                                           const RayProbabilityTable& limit_sigma,
                                           const RayProbabilityTable& limit_tau,
                                           double limit_sigma_tau_ks,
                                           double ks_equality_threshold,
                                           const OrderTestOptions& opts) {
  SandwichTestResult out;
  out.xi_vs_sigma = order_convergence_test(xi_stages, limit_sigma, opts);
  out.xi_vs_tau = order_convergence_test(xi_stages, limit_tau, opts);
  out.sigma_right_pass = out.xi_vs_sigma.right_pass;
  out.tau_left_pass = out.xi_vs_tau.left_pass;
  out.limit_sigma_tau_ks = limit_sigma_tau_ks;
  if (limit_sigma_tau_ks <= ks_equality_threshold) {
    // sigma(Z) and tau(Z) agree in law: both one-sided limits hold against
    // the same law, which is natural-topology convergence.
    out.natural_topology_pass =
        out.sigma_right_pass && out.xi_vs_sigma.left_pass && out.tau_left_pass;
  }
  return out;
}

namespace {

// Joint ECDF distance of two bivariate samples over the corners of a
// bin grid spanning both samples.
double joint_ecdf_distance(std::span<const double> ax, std::span<const double> ay,
                           std::span<const double> bx, std::span<const double> by,
                           int bins) {
  double lo_x = ax.front(), hi_x = ax.front();
  double lo_y = ay.front(), hi_y = ay.front();
  for (double v : ax) lo_x = std::min(lo_x, v), hi_x = std::max(hi_x, v);
  for (double v : bx) lo_x = std::min(lo_x, v), hi_x = std::max(hi_x, v);
  for (double v : ay) lo_y = std::min(lo_y, v), hi_y = std::max(hi_y, v);
  for (double v : by) lo_y = std::min(lo_y, v), hi_y = std::max(hi_y, v);

  auto joint_cdf = [](std::span<const double> xs, std::span<const double> ys,
                      double cx, double cy) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] <= cx && ys[i] <= cy) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(xs.size());
  };

  double d = 0;
  for (int i = 0; i <= bins; ++i) {
    const double cx = lo_x + (hi_x - lo_x) * i / bins;
    for (int j = 0; j <= bins; ++j) {
      const double cy = lo_y + (hi_y - lo_y) * j / bins;
      d = std::max(d, std::fabs(joint_cdf(ax, ay, cx, cy) - joint_cdf(bx, by, cx, cy)));
    }
  }
  return d;
}

}  // namespace

FidiTable fidi_convergence_probe(const ProcessModel& model,
                                 std::span<const double> t_grid, int stage_n,
                                 int limit_stage_n, int paths,
                                 std::uint64_t seed) {
  if (t_grid.empty()) throw std::invalid_argument("fidi probe: empty t grid");

  // values[t][path] for both ensembles; streams 1 and 2 keep them
  // independent unless the stages coincide, in which case they share the
  // stream and the distance is exactly zero.
  const bool same = stage_n == limit_stage_n;
  std::vector<std::vector<double>> stage_vals(t_grid.size()),
      limit_vals(t_grid.size());
  for (auto& v : stage_vals) v.reserve(paths);
  for (auto& v : limit_vals) v.reserve(paths);

  for (int p = 0; p < paths; ++p) {
    SeededRng rng1(derive_seed(seed, 1, static_cast<std::uint64_t>(p)));
    const PwlConvex z1 = sample_trajectory(model, stage_n, rng1);
    SeededRng rng2(derive_seed(seed, same ? 1 : 2, static_cast<std::uint64_t>(p)));
    const PwlConvex z2 = sample_trajectory(model, limit_stage_n, rng2);
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      stage_vals[k].push_back(z1(t_grid[k]));
      limit_vals[k].push_back(z2(t_grid[k]));
    }
  }

  FidiTable table;
  table.t_grid.assign(t_grid.begin(), t_grid.end());
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    table.ks_per_t.push_back(ks_statistic(stage_vals[k], limit_vals[k]));
  }
  constexpr int kBins = 16;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = i + 1; j < t_grid.size(); ++j) {
      table.pairs.push_back({t_grid[i], t_grid[j],
                             joint_ecdf_distance(stage_vals[i], stage_vals[j],
                                                 limit_vals[i], limit_vals[j], kBins)});
    }
  }
  return table;
}

}  // namespace convexmin
