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

#ifndef CONVEXMIN_PROCESS_HPP_
#define CONVEXMIN_PROCESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convexmin/min_set.hpp"
#include "convexmin/pwl.hpp"
#include "convexmin/selection.hpp"

namespace convexmin {

std::uint64_t splitmix64(std::uint64_t x);

// Per-path seed, a pure function of (master, stream, index): parallel path
// evaluation can never change results, whatever the scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

// Deterministic xorshift-based generator; stable across platforms, unlike
// the distributions in <random>.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(splitmix64(seed ^ 0x1b6e5a3c9d2f8e47ULL)) {}
  std::uint64_t next_u64();
  // Dyadic rational k/2^32 in [0, 1); exactly representable as a double.
  Rational next_dyadic01();
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(next_u64() >> 32); }
  bool next_bit() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

enum class DataLaw { kUniform01, kBernoulliHalf };

// The process zoo. Every realized trajectory is a valid PwlConvex with a
// compact min set, so the per-path argmin statistics are exact.
//
//   kEmpiricalLad: Z_n(t) = (1/n) sum |X_i - t|; min set = sample median
//     interval. Hits the unique regime (odd n, continuous data) and the
//     non-unique one (even n or atomic data).
//   kBernoulliLad: empirical LAD with Bernoulli(1/2) data; the canonical
//     non-unique limit, population min set [0, 1].
//   kRandomPwl: flat bottom with random endpoints and random outer slopes;
//     the gap law is directly controllable.
//   kTiltedFlat: flat bottom of random (or fixed) width plus a linear tilt.
struct ProcessModel {
  enum class Kind { kEmpiricalLad, kBernoulliLad, kRandomPwl, kTiltedFlat };

  Kind kind = Kind::kEmpiricalLad;
  DataLaw data_law = DataLaw::kUniform01;  // LAD kinds

  // random_pwl / tilted_flat parameters
  Rational flat_left = Rational(0);
  std::optional<Rational> fixed_width;  // width ~ U(0,1) dyadic when absent
  Rational tilt = Rational(0);          // tilted_flat only
  Rational slope_min = Rational(1, 2);  // random_pwl outer slopes
  Rational slope_max = Rational(2);

  static ProcessModel empirical_lad(DataLaw law = DataLaw::kUniform01);
  static ProcessModel bernoulli_lad();
  static ProcessModel random_pwl();
  static ProcessModel tilted_flat(Rational tilt, std::optional<Rational> fixed_width = {});

  // LAD trajectories depend on the sample size n (the net stage); the flat
  // models are stage-free.
  bool stage_dependent() const {
    return kind == Kind::kEmpiricalLad || kind == Kind::kBernoulliLad;
  }

  // Min set of the population risk, when analytically known.
  std::optional<MinSet> population_min_set() const;

  std::string name() const;
  void validate() const;  // throws ModelInvalid
};

// One trajectory of the model. For LAD kinds `stage_n` is the sample size;
// data are the first `stage_n` draws of the path's stream, so trajectories
// with the same (seed, path) but growing n are coupled.
PwlConvex sample_trajectory(const ProcessModel& model, int stage_n, SeededRng& rng);

// Exact empirical LAD risk of arbitrary rational data.
PwlConvex lad_risk(std::span<const Rational> data);

// Per-path argmin statistics of M simulated trajectories.
struct PathEnsemble {
  std::uint64_t master_seed = 0;
  int stage = 0;
  std::vector<Rational> sigma, tau, xi;
  std::vector<double> sigma_d, tau_d, xi_d;  // exact dyadic mirrors
  std::size_t size() const { return sigma.size(); }
};

// `stream` separates independent ensembles drawn from one master seed
// (e.g. one per stage for the distributional experiments). Regeneration
// with the same arguments is bit-identical.
PathEnsemble simulate(const ProcessModel& model, int paths, int stage_n,
                      std::uint64_t master_seed,
                      const SelectionPolicy& policy = SelectionPolicy::midpoint(),
                      std::uint64_t stream = 0);

// Coupled ensembles: one data stream per path, shared across all stages
// (stage n sees the first n draws). Returns one ensemble per stage.
std::vector<PathEnsemble> simulate_coupled(const ProcessModel& model, int paths,
                                           std::span<const int> stages,
                                           std::uint64_t master_seed,
                                           const SelectionPolicy& policy =
                                               SelectionPolicy::midpoint());

// Random PWL with a compact min set: outer slopes bounded away from zero
// (quantized to k/64 with |k| >= 1), breakpoints on the 1/1024 lattice in
// [-4, 4]. Flat bottoms occur with sizeable probability.
PwlConvex random_compact_pwl(SeededRng& rng, int max_breakpoints = 8);

// Random convex PWL without min-set constraints; perturbation shapes.
PwlConvex random_convex_pwl(SeededRng& rng, int max_breakpoints = 8);

}  // namespace convexmin

#endif  // CONVEXMIN_PROCESS_HPP_
