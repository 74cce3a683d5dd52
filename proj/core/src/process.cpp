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

#include <algorithm>
#include <cstring>

#include "convexmin/errors.hpp"

namespace convexmin {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) { return mix64(x + kGolden); }

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  return splitmix64(master ^ splitmix64(stream ^ splitmix64(index)));
}

std::uint64_t SeededRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

Rational SeededRng::next_dyadic01() {
  return Rational(BigInt(next_u32()), BigInt(1) << 32);
}

ProcessModel ProcessModel::empirical_lad(DataLaw law) {
  ProcessModel m;
  m.kind = Kind::kEmpiricalLad;
  m.data_law = law;
  return m;
}

ProcessModel ProcessModel::bernoulli_lad() {
  ProcessModel m;
  m.kind = Kind::kBernoulliLad;
  m.data_law = DataLaw::kBernoulliHalf;
  return m;
}

ProcessModel ProcessModel::random_pwl() {
  ProcessModel m;
  m.kind = Kind::kRandomPwl;
  return m;
}

ProcessModel ProcessModel::tilted_flat(Rational tilt, std::optional<Rational> fixed_width) {
  ProcessModel m;
  m.kind = Kind::kTiltedFlat;
  m.tilt = std::move(tilt);
  m.fixed_width = std::move(fixed_width);
  m.validate();
  return m;
}

void ProcessModel::validate() const {
  if (kind == Kind::kRandomPwl) {
    if (!(slope_min > 0 && slope_min <= slope_max)) {
      throw ModelInvalid("random_pwl: need 0 < slope_min <= slope_max");
    }
  }
  if (fixed_width && *fixed_width < 0) {
    throw ModelInvalid("flat models: width must be >= 0");
  }
  if (kind == Kind::kTiltedFlat && abs(tilt) >= 1) {
    // Outer slopes are -1 and 1; a tilt of magnitude >= 1 would destroy the
    // compact min set.
    throw ModelInvalid("tilted_flat: |tilt| must be < 1");
  }
}

std::optional<MinSet> ProcessModel::population_min_set() const {
  switch (kind) {
    case Kind::kEmpiricalLad:
      if (data_law == DataLaw::kUniform01) {
        // E|X - t| is minimized exactly at the population median.
        return MinSet{MinSetKind::kCompact, Rational(1, 2), Rational(1, 2)};
      }
      return MinSet{MinSetKind::kCompact, Rational(0), Rational(1)};
    case Kind::kBernoulliLad:
      // Population risk (|t| + |1-t|)/2 is flat on [0, 1].
      return MinSet{MinSetKind::kCompact, Rational(0), Rational(1)};
    case Kind::kRandomPwl:
    case Kind::kTiltedFlat:
      return std::nullopt;  // stage-free; the model is its own limit
  }
  return std::nullopt;
}

std::string ProcessModel::name() const {
  switch (kind) {
    case Kind::kEmpiricalLad:
      return data_law == DataLaw::kUniform01 ? "empirical_lad(uniform01)"
                                             : "empirical_lad(bernoulli)";
    case Kind::kBernoulliLad: return "bernoulli_lad";
    case Kind::kRandomPwl: return "random_pwl";
    case Kind::kTiltedFlat: return "tilted_flat";
  }
  return "?";
}

namespace {

// Risk from sorted distinct values with multiplicities: slope left of all
// data is -1 and increases by 2*count/n across each breakpoint.
PwlConvex lad_from_distinct(const std::vector<Rational>& values,
                            const std::vector<long>& counts, long n,
                            const Rational& mean) {
  std::vector<Rational> slopes;
  slopes.reserve(values.size() + 1);
  slopes.emplace_back(-1);
  long cum = 0;
  for (long c : counts) {
    cum += c;
    slopes.emplace_back(BigInt(2 * cum - n), BigInt(n));
  }
  // Value at the smallest data point: mean distance = mean - v_min.
  Rational anchor_y = mean - values.front();
  Rational anchor_x = values.front();
  return PwlConvex(std::move(anchor_x), std::move(anchor_y), values,
                   std::move(slopes));
}

PwlConvex flat_bottom(const Rational& left, const Rational& width,
                      const Rational& neg_slope, const Rational& pos_slope,
                      const Rational& tilt) {
  std::vector<Rational> bps;
  std::vector<Rational> slopes;
  if (width == 0) {
    bps = {left};
    slopes = {neg_slope, pos_slope};
  } else {
    bps = {left, left + width};
    slopes = {neg_slope, Rational(0), pos_slope};
  }
  PwlConvex base(left, Rational(0), std::move(bps), std::move(slopes));
  if (tilt == 0) return base;
  return base.plus_linear(tilt, Rational(0));
}

}  // namespace

PwlConvex lad_risk(std::span<const Rational> data) {
  if (data.empty()) throw ModelInvalid("lad_risk: empty sample");
  std::vector<Rational> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<Rational> values;
  std::vector<long> counts;
  Rational sum(0);
  for (const auto& x : sorted) {
    sum += x;
    if (values.empty() || values.back() != x) {
      values.push_back(x);
      counts.push_back(1);
    } else {
      ++counts.back();
    }
  }
  const long n = static_cast<long>(sorted.size());
  return lad_from_distinct(values, counts, n, sum / n);
}

namespace {

// Uniform(0,1) LAD fast path: data are dyadics k/2^32, sorted as integers.
PwlConvex lad_risk_dyadic(std::vector<std::uint32_t> raw) {
  const long n = static_cast<long>(raw.size());
  std::sort(raw.begin(), raw.end());

  std::vector<Rational> values;
  std::vector<long> counts;
  values.reserve(raw.size());
  counts.reserve(raw.size());
  const BigInt two32 = BigInt(1) << 32;
  std::uint64_t sum = 0;
  std::uint32_t prev = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    sum += raw[i];
    if (i == 0 || raw[i] != prev) {
      values.emplace_back(BigInt(raw[i]), two32);
      counts.push_back(1);
      prev = raw[i];
    } else {
      ++counts.back();
    }
  }
  const Rational mean = Rational(BigInt(sum), two32) / n;
  return lad_from_distinct(values, counts, n, mean);
}

}  // namespace

PwlConvex sample_trajectory(const ProcessModel& model, int stage_n, SeededRng& rng) {
  model.validate();
  switch (model.kind) {
    case ProcessModel::Kind::kEmpiricalLad:
    case ProcessModel::Kind::kBernoulliLad: {
      if (stage_n < 1) throw ModelInvalid("LAD trajectory: need sample size >= 1");
      if (model.data_law == DataLaw::kUniform01) {
        std::vector<std::uint32_t> raw(static_cast<std::size_t>(stage_n));
        for (auto& r : raw) r = rng.next_u32();
        return lad_risk_dyadic(std::move(raw));
      }
      long ones = 0;
      for (int i = 0; i < stage_n; ++i) ones += rng.next_bit() ? 1 : 0;
      const long zeros = stage_n - ones;
      std::vector<Rational> values;
      std::vector<long> counts;
      if (zeros > 0) {
        values.emplace_back(0);
        counts.push_back(zeros);
      }
      if (ones > 0) {
        values.emplace_back(1);
        counts.push_back(ones);
      }
      const Rational mean = Rational(BigInt(ones), BigInt(stage_n));
      return lad_from_distinct(values, counts, stage_n, mean);
    }
    case ProcessModel::Kind::kRandomPwl: {
      const Rational jitter = rng.next_dyadic01() - Rational(1, 2);
      const Rational width = model.fixed_width ? *model.fixed_width : rng.next_dyadic01();
      const Rational span = model.slope_max - model.slope_min;
      const Rational neg = -(model.slope_min + rng.next_dyadic01() * span);
      const Rational pos = model.slope_min + rng.next_dyadic01() * span;
      return flat_bottom(model.flat_left + jitter, width, neg, pos, Rational(0));
    }
    case ProcessModel::Kind::kTiltedFlat: {
      const Rational width = model.fixed_width ? *model.fixed_width : rng.next_dyadic01();
      return flat_bottom(model.flat_left, width, Rational(-1), Rational(1), model.tilt);
    }
  }
  throw ModelInvalid("sample_trajectory: unknown model kind");
}

namespace {

void push_path_stats(PathEnsemble& out, const PwlConvex& traj,
                     const SelectionPolicy& policy) {
  const MinSet a = min_set(traj);
  if (!a.is_compact()) {
    throw ModelInvalid("simulated trajectory has non-compact min set");
  }
  const Rational x = select(a, policy);
  out.sigma.push_back(a.sigma());
  out.tau.push_back(a.tau());
  out.xi.push_back(x);
  out.sigma_d.push_back(to_double(a.sigma()));
  out.tau_d.push_back(to_double(a.tau()));
  out.xi_d.push_back(to_double(x));
}

}  // namespace

PathEnsemble simulate(const ProcessModel& model, int paths, int stage_n,
                      std::uint64_t master_seed, const SelectionPolicy& policy,
                      std::uint64_t stream) {
  if (paths < 1) throw ModelInvalid("simulate: need at least one path");
  model.validate();
  PathEnsemble out;
  out.master_seed = master_seed;
  out.stage = stage_n;
  out.sigma.reserve(paths);
  out.tau.reserve(paths);
  out.xi.reserve(paths);
  for (int p = 0; p < paths; ++p) {
    SeededRng rng(derive_seed(master_seed, stream, static_cast<std::uint64_t>(p)));
    push_path_stats(out, sample_trajectory(model, stage_n, rng), policy);
  }
  return out;
}

PwlConvex random_compact_pwl(SeededRng& rng, int max_breakpoints) {
  const int m = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_breakpoints));

  std::vector<long> lattice;
  while (static_cast<int>(lattice.size()) < m) {
    const long k = static_cast<long>(rng.next_u64() % 8192) - 4096;
    if (std::find(lattice.begin(), lattice.end(), k) == lattice.end()) lattice.push_back(k);
  }
  std::sort(lattice.begin(), lattice.end());
  std::vector<Rational> bps;
  bps.reserve(lattice.size());
  for (long k : lattice) bps.emplace_back(BigInt(k), BigInt(1024));

  auto nonzero_slope = [&](int sign) {
    const long k = 1 + static_cast<long>(rng.next_u64() % 256);
    return Rational(BigInt(sign * k), BigInt(64));
  };
  std::vector<Rational> slopes(static_cast<std::size_t>(m) + 1);
  slopes.front() = nonzero_slope(-1);
  slopes.back() = nonzero_slope(+1);
  if (m > 1) {
    std::vector<Rational> middle;
    for (int i = 0; i < m - 1; ++i) {
      if (rng.next_u64() % 3 == 0) {
        middle.emplace_back(0);
      } else {
        Rational s = nonzero_slope(rng.next_bit() ? 1 : -1);
        if (s < slopes.front()) s = slopes.front();
        if (s > slopes.back()) s = slopes.back();
        middle.push_back(std::move(s));
      }
    }
    std::sort(middle.begin(), middle.end());
    for (int i = 0; i < m - 1; ++i) slopes[static_cast<std::size_t>(i) + 1] = middle[i];
  }

  const Rational ax(BigInt(static_cast<long>(rng.next_u64() % 8192) - 4096), BigInt(1024));
  const Rational ay(BigInt(static_cast<long>(rng.next_u64() % 8192) - 4096), BigInt(1024));
  return PwlConvex(ax, ay, std::move(bps), std::move(slopes));
}

PwlConvex random_convex_pwl(SeededRng& rng, int max_breakpoints) {
  const int m = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_breakpoints));
  std::vector<long> lattice;
  while (static_cast<int>(lattice.size()) < m) {
    const long k = static_cast<long>(rng.next_u64() % 8192) - 4096;
    if (std::find(lattice.begin(), lattice.end(), k) == lattice.end()) lattice.push_back(k);
  }
  std::sort(lattice.begin(), lattice.end());
  std::vector<Rational> bps;
  bps.reserve(lattice.size());
  for (long k : lattice) bps.emplace_back(BigInt(k), BigInt(1024));

  std::vector<Rational> slopes;
  slopes.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    const long k = static_cast<long>(rng.next_u64() % 513) - 256;
    slopes.emplace_back(BigInt(k), BigInt(64));
  }
  std::sort(slopes.begin(), slopes.end());

  const Rational ax(BigInt(static_cast<long>(rng.next_u64() % 8192) - 4096), BigInt(1024));
  const Rational ay(BigInt(static_cast<long>(rng.next_u64() % 8192) - 4096), BigInt(1024));
  return PwlConvex(ax, ay, std::move(bps), std::move(slopes));
}

std::vector<PathEnsemble> simulate_coupled(const ProcessModel& model, int paths,
                                           std::span<const int> stages,
                                           std::uint64_t master_seed,
                                           const SelectionPolicy& policy) {
  if (!model.stage_dependent()) {
    throw ModelInvalid("simulate_coupled: model has no stage parameter");
  }
  if (stages.empty() || !std::is_sorted(stages.begin(), stages.end()) || stages.front() < 1) {
    throw ModelInvalid("simulate_coupled: stages must be sorted and >= 1");
  }
  const int max_n = stages.back();

  std::vector<PathEnsemble> out(stages.size());
  for (std::size_t s = 0; s < stages.size(); ++s) {
    out[s].master_seed = master_seed;
    out[s].stage = stages[s];
  }

  std::vector<Rational> data(static_cast<std::size_t>(max_n));
  for (int p = 0; p < paths; ++p) {
    SeededRng rng(derive_seed(master_seed, 0, static_cast<std::uint64_t>(p)));
    for (auto& x : data) {
      x = model.data_law == DataLaw::kUniform01 ? rng.next_dyadic01()
                                                : Rational(rng.next_bit() ? 1 : 0);
    }
    for (std::size_t s = 0; s < stages.size(); ++s) {
      const auto n = static_cast<std::size_t>(stages[s]);
      push_path_stats(out[s], lad_risk({data.data(), n}), policy);
    }
  }
  return out;
}

}  // namespace convexmin
