// Copyright 2026 The bosonfft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bosonfft/error.hpp"
#include "bosonfft/fock_state.hpp"
#include "bosonfft/fourier.hpp"
#include "bosonfft/frequency_plan.hpp"
#include "bosonfft/unitary.hpp"

namespace bosonfft {

/// Abstract operation count for one single-state query with a method-2 plan
/// at the reduced rate: K N^2 (evaluating g) + K ceil(log2 K) (the
/// transform), K = f_target + 1. Both constants are 1, so values compare
/// shapes, not timings.
inline std::int64_t cost_single_state(const FockState& l) {
  const FrequencyPlan plan = q_method2(l, SampleRate::reduced);
  const std::int64_t k = plan.samples;
  const auto n = static_cast<std::int64_t>(l.modes());
  const auto log2k = static_cast<std::int64_t>(std::bit_width(static_cast<std::uint64_t>(k - 1)));
  const std::int64_t eval = detail::checked_mul(k, detail::checked_mul(n, n, "cost"), "cost");
  return detail::checked_add(eval, detail::checked_mul(k, log2k, "cost"), "cost");
}

/// M / N photons in every mode; only defined when N divides M.
inline FockState even_spread_state(int modes, int photons) {
  if (modes < 1 || photons % modes != 0) throw ValidationError("even spread needs N to divide M");
  return FockState(std::vector<int>(static_cast<std::size_t>(modes), photons / modes));
}

/// Largest single-state cost over every M-photon output state. When N
/// divides M this is the even-spread state; otherwise the states are
/// enumerated.
inline std::pair<FockState, std::int64_t> maximum_cost(int modes, int photons) {
  if (photons % modes == 0) {
    FockState s = even_spread_state(modes, photons);
    const std::int64_t c = cost_single_state(s);
    return {std::move(s), c};
  }
  std::pair<FockState, std::int64_t> best{FockState{}, -1};
  for (auto& s : enumerate_output_states(modes, photons)) {
    const std::int64_t c = cost_single_state(s);
    if (c > best.second) best = {std::move(s), c};
  }
  return best;
}

struct CostReport {
  std::map<FockState, std::int64_t, ColexLess> per_state;
  double weighted_average = 0.0;
  double maximum = 0.0;
  double ratio = 0.0;
  FockState maximum_state;
};

/// sum_i p_i C_i with exact probabilities from the full spectrum.
inline CostReport weighted_average_complexity(const UnitaryMatrix& u, const FockState& in,
                                              const EngineOptions& opts = {}) {
  const OutcomeDistribution dist = full_distribution(u, in, SampleRate::reduced, opts);
  CostReport report;
  for (const auto& [state, p] : dist.entries) {
    const std::int64_t c = cost_single_state(state);
    report.per_state.emplace(state, c);
    report.weighted_average += p * static_cast<double>(c);
  }
  auto [max_state, max_cost] = maximum_cost(static_cast<int>(u.size()), in.photons());
  report.maximum_state = std::move(max_state);
  report.maximum = static_cast<double>(max_cost);
  report.ratio = report.weighted_average / report.maximum;
  return report;
}

struct RatioRow {
  int modes = 0;
  bool skipped = false;
  double weighted_average = 0.0;
  double maximum = 0.0;
  double ratio = 0.0;
};

/// Seed of the j-th Haar matrix used for N modes in the ratio study.
inline std::uint64_t ratio_study_seed(std::uint64_t base_seed, int modes, int index) {
  return base_seed + 1000 * static_cast<std::uint64_t>(modes) + static_cast<std::uint64_t>(index);
}

/// Weighted-average-to-maximum cost ratio with M = N and k = (1, ..., 1),
/// averaged over `matrices` seeded Haar interferometers per N. Rows whose
/// method-1 spectrum does not fit are marked skipped.
inline std::vector<RatioRow> ratio_curve(int n_min, int n_max, std::uint64_t base_seed, int matrices = 1,
                                         const EngineOptions& opts = {}) {
  if (matrices < 1) throw ValidationError("need at least one matrix per N");
  std::vector<RatioRow> rows;
  for (int n = n_min; n <= n_max; ++n) {
    RatioRow row;
    row.modes = n;
    try {
      const FockState in(std::vector<int>(static_cast<std::size_t>(n), 1));
      for (int j = 0; j < matrices; ++j) {
        const UnitaryMatrix u = haar_random_unitary(static_cast<std::size_t>(n), ratio_study_seed(base_seed, n, j));
        const CostReport r = weighted_average_complexity(u, in, opts);
        row.weighted_average += r.weighted_average / matrices;
        row.maximum = r.maximum;
      }
      row.ratio = row.weighted_average / row.maximum;
    } catch (const CapacityError&) {
      row = RatioRow{n, true};
    }
    rows.push_back(row);
  }
  return rows;
}

/// M = N photons with two photons in each of the first half of the modes
/// (for odd N, the leftover photon sits alone in the next mode).
inline FockState half_filled_state(int modes) {
  if (modes < 1) throw DimensionError("need at least one mode");
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  for (int i = 0; i < modes / 2; ++i) occ[static_cast<std::size_t>(i)] = 2;
  if (modes % 2) occ[static_cast<std::size_t>(modes / 2)] = 1;
  return FockState(std::move(occ));
}

struct SpeedupRow {
  int modes = 0;
  std::int64_t engine_cost = 0;
  std::int64_t clifford_cost = 0;          // N 2^N
  std::int64_t clifford_general_cost = 0;  // M 2^M + N M^2 at M = N
};

/// Analytic comparison of the half-filled collision case against the
/// Clifford-Clifford scaling; no sampling.
inline std::vector<SpeedupRow> speedup_table(std::span<const int> modes_range) {
  std::vector<SpeedupRow> rows;
  for (int n : modes_range) {
    if (n < 1 || n > 60) throw ValidationError("speedup table supports 1 <= N <= 60");
    SpeedupRow row;
    row.modes = n;
    row.engine_cost = cost_single_state(half_filled_state(n));
    const std::int64_t pow2 = std::int64_t{1} << n;
    row.clifford_cost = detail::checked_mul(n, pow2, "clifford cost");
    row.clifford_general_cost = detail::checked_add(row.clifford_cost, std::int64_t{n} * n * n, "clifford cost");
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bosonfft
