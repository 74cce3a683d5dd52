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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "convexmin/errors.hpp"
#include "convexmin/lipschitz.hpp"

namespace convexmin {

SigmaTau stage_sigma_tau(const StageFunction& f, const BisectOptions& opts) {
  if (const auto* pwl = std::get_if<PwlConvex>(&f)) {
    const MinSet a = min_set(*pwl);
    if (!a.is_compact()) {
      throw StageFailure("stage has non-compact min set: " + to_string(a.kind));
    }
    return {a.sigma(), a.tau(), true};
  }
  const auto& oracle = std::get<ConvexOracle>(f);
  const BisectResult s = bisect_smallest(oracle, opts);
  const BisectResult t = bisect_largest(oracle, opts);
  return {rational_from_double(s.enclosure.mid()),
          rational_from_double(t.enclosure.mid()), false};
}

DiscontinuityPair discontinuity_family(int n) {
  if (n < 1) throw std::invalid_argument("discontinuity_family: n must be >= 1");
  const Rational one(1);
  PwlConvex limit(Rational(0), Rational(0), {Rational(-1), Rational(1)},
                  {Rational(-1), Rational(0), Rational(1)});
  PwlConvex stage(Rational(0), Rational(0),
                  {Rational(-1), Rational(0), one + Rational(1, n)},
                  {Rational(-1), Rational(0), Rational(1, n + 1), Rational(1)});
  return {std::move(stage), std::move(limit)};
}

std::vector<Rational> default_dense_grid() {
  std::vector<Rational> grid;
  grid.reserve(97);
  for (int k = -48; k <= 48; ++k) grid.push_back(Rational(k, 16));
  return grid;
}

namespace {

Rational eval_stage(const StageFunction& f, const Rational& t) {
  if (const auto* pwl = std::get_if<PwlConvex>(&f)) return (*pwl)(t);
  return rational_from_double(std::get<ConvexOracle>(f)(to_double(t)));
}

// Least-squares slope of log10(err) against log10(stage); stages with zero
// error are already converged and excluded.
double log_error_trend(const std::vector<Rational>& errors) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double e = std::fabs(to_double(errors[i]));
    if (e > 0) {
      xs.push_back(std::log10(static_cast<double>(i + 1)));
      ys.push_back(std::log10(e));
    }
  }
  if (xs.size() < 2) return -1.0;  // (near-)exact convergence
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

}  // namespace

SemicontinuityReport check_semicontinuity(const FunctionSequence& seq, int stages,
                                          const Rational& tol,
                                          const Rational& unique_stage_tol,
                                          const BisectOptions& oracle_opts) {
  if (stages < 1) throw std::invalid_argument("check_semicontinuity: stages >= 1");

  SemicontinuityReport report;
  const SigmaTau lim = stage_sigma_tau(seq.limit, oracle_opts);
  report.limit_sigma = lim.sigma;
  report.limit_tau = lim.tau;
  // Oracle enclosures of smooth functions carry a quotient-noise floor of
  // about sqrt(eps) around the minimizer, whatever the bisection width.
  const Rational oracle_resolution =
      rational_from_double(std::max(4 * oracle_opts.tol, 1e-6));
  report.limit_unique = lim.exact ? (lim.sigma == lim.tau)
                                  : (abs(lim.tau - lim.sigma) < oracle_resolution);
  report.all_exact = lim.exact;

  report.sigma.reserve(stages);
  report.tau.reserve(stages);
  std::vector<Rational> sigma_err, tau_err;
  for (int n = 1; n <= stages; ++n) {
    StageFunction f = seq.stage(n);
    const SigmaTau st = stage_sigma_tau(f, oracle_opts);
    report.sigma.push_back(st.sigma);
    report.tau.push_back(st.tau);
    report.all_exact = report.all_exact && st.exact;
    sigma_err.push_back(abs(st.sigma - lim.sigma));
    tau_err.push_back(abs(st.tau - lim.tau));

    Rational gap(0);
    for (const auto& d : seq.dense_grid) {
      Rational g = abs(eval_stage(f, d) - eval_stage(seq.limit, d));
      if (g > gap) gap = g;
    }
    report.pointwise_gap.push_back(std::move(gap));
  }

  report.tail_inf_sigma.resize(report.sigma.size());
  report.tail_sup_tau.resize(report.tau.size());
  Rational run_inf = report.sigma.back(), run_sup = report.tau.back();
  for (std::size_t i = report.sigma.size(); i-- > 0;) {
    if (report.sigma[i] < run_inf) run_inf = report.sigma[i];
    if (report.tau[i] > run_sup) run_sup = report.tau[i];
    report.tail_inf_sigma[i] = run_inf;
    report.tail_sup_tau[i] = run_sup;
  }

  // Flat (non-unique) limits are approached from inside the min set, so the
  // one-sided inequalities hold at strict tolerance. A unique limit is
  // straddled at the family's convergence rate; there the one-sided clauses
  // only make sense at the declared per-family tolerance.
  const Rational& one_sided_tol = report.limit_unique ? unique_stage_tol : tol;
  report.sigma_clause_pass = report.tail_inf_sigma.back() >= lim.sigma - one_sided_tol;
  report.tau_clause_pass = report.tail_sup_tau.back() <= lim.tau + one_sided_tol;
  if (report.limit_unique) {
    report.sigma_trend_slope = log_error_trend(sigma_err);
    report.tau_trend_slope = log_error_trend(tau_err);
    report.unique_clause_pass = sigma_err.back() <= unique_stage_tol &&
                                tau_err.back() <= unique_stage_tol &&
                                report.sigma_trend_slope <= 0 &&
                                report.tau_trend_slope <= 0;
  }
  return report;
}

UniformConvergenceReport check_uniform_from_pointwise(const FunctionSequence& seq,
                                                      double k_lo, double k_hi,
                                                      int stages, int probe_points) {
  if (seq.dense_grid.size() < 5) {
    throw GridTooSparse("check_uniform_from_pointwise: dense grid too small");
  }
  std::vector<double> grid_d(seq.dense_grid.size());
  for (std::size_t i = 0; i < grid_d.size(); ++i) grid_d[i] = to_double(seq.dense_grid[i]);

  auto limit_eval = [&](double t) {
    if (const auto* pwl = std::get_if<PwlConvex>(&seq.limit)) return (*pwl)(t);
    return std::get<ConvexOracle>(seq.limit)(t);
  };
  const LipschitzCertificate limit_cert = lipschitz_bound(limit_eval, k_lo, k_hi, grid_d);

  UniformConvergenceReport report;
  report.l_limit = limit_cert.bound;

  // Radius of the dense-grid cover of K within [a, b]: every point of K is
  // within this distance of a grid point.
  double radius = 0;
  for (std::size_t i = 1; i < grid_d.size(); ++i) {
    const double lo = grid_d[i - 1], hi = grid_d[i];
    if (hi < k_lo || lo > k_hi) continue;
    radius = std::max(radius, 0.5 * (hi - lo));
  }
  report.cover_radius = radius;

  for (int n = 1; n <= stages; ++n) {
    StageFunction f = seq.stage(n);
    auto stage_eval = [&](double t) {
      if (const auto* pwl = std::get_if<PwlConvex>(&f)) return (*pwl)(t);
      return std::get<ConvexOracle>(f)(t);
    };
    const LipschitzCertificate stage_cert = lipschitz_bound(stage_eval, k_lo, k_hi, grid_d);

    double grid_gap = 0;
    for (double d : grid_d) {
      if (d < limit_cert.a || d > limit_cert.b) continue;
      grid_gap = std::max(grid_gap, std::fabs(stage_eval(d) - limit_eval(d)));
    }
    report.grid_gap.push_back(grid_gap);
    report.bound.push_back(grid_gap + (stage_cert.bound + limit_cert.bound) * radius);

    double observed = 0;
    const auto* stage_pwl = std::get_if<PwlConvex>(&f);
    const auto* limit_pwl = std::get_if<PwlConvex>(&seq.limit);
    if (stage_pwl && limit_pwl) {
      observed = to_double(sup_abs_diff(*stage_pwl, *limit_pwl,
                                        rational_from_double(k_lo),
                                        rational_from_double(k_hi)));
    } else {
      for (int i = 0; i <= probe_points; ++i) {
        const double t = k_lo + (k_hi - k_lo) * i / probe_points;
        observed = std::max(observed, std::fabs(stage_eval(t) - limit_eval(t)));
      }
    }
    report.observed.push_back(observed);
  }
  const double slack = 1e-12 * std::max(1.0, report.bound.back());
  report.pass = report.observed.back() <= report.bound.back() + slack;
  return report;
}

NetGrid::NetGrid(std::vector<int> shape) : shape_(std::move(shape)) {
  if (shape_.empty()) throw std::invalid_argument("NetGrid: empty shape");
  long total = 1;
  for (int s : shape_) {
    if (s < 1) throw std::invalid_argument("NetGrid: shape entries must be >= 1");
    total *= s;
    if (total > 1000000) throw std::invalid_argument("NetGrid: grid too large");
  }
  std::vector<int> cur(shape_.size(), 1);
  indices_.reserve(static_cast<std::size_t>(total));
  for (;;) {
    indices_.push_back(cur);
    std::size_t d = shape_.size();
    while (d-- > 0) {
      if (cur[d] < shape_[d]) {
        ++cur[d];
        std::fill(cur.begin() + static_cast<long>(d) + 1, cur.end(), 1);
        break;
      }
      if (d == 0) return;
    }
  }
}

bool NetGrid::leq(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("NetGrid::leq: rank mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::vector<std::vector<int>> NetGrid::cofinal_chain() const {
  const int top = *std::max_element(shape_.begin(), shape_.end());
  std::vector<std::vector<int>> chain;
  chain.reserve(static_cast<std::size_t>(top));
  for (int k = 1; k <= top; ++k) {
    std::vector<int> idx(shape_.size());
    for (std::size_t i = 0; i < shape_.size(); ++i) idx[i] = std::min(k, shape_[i]);
    chain.push_back(std::move(idx));
  }
  return chain;
}

Rational NetGrid::tail_inf(const std::function<Rational(std::span<const int>)>& stat,
                           std::span<const int> from) const {
  std::optional<Rational> best;
  for (const auto& idx : indices_) {
    if (!leq(from, idx)) continue;
    Rational v = stat(idx);
    if (!best || v < *best) best = std::move(v);
  }
  if (!best) throw std::invalid_argument("NetGrid::tail_inf: empty upper set");
  return *best;
}

Rational NetGrid::tail_sup(const std::function<Rational(std::span<const int>)>& stat,
                           std::span<const int> from) const {
  std::optional<Rational> best;
  for (const auto& idx : indices_) {
    if (!leq(from, idx)) continue;
    Rational v = stat(idx);
    if (!best || v > *best) best = std::move(v);
  }
  if (!best) throw std::invalid_argument("NetGrid::tail_sup: empty upper set");
  return *best;
}

}  // namespace convexmin
