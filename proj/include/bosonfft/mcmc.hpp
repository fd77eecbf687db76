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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bosonfft/distribution.hpp"
#include "bosonfft/error.hpp"
#include "bosonfft/fock_state.hpp"
#include "bosonfft/fourier.hpp"
#include "bosonfft/unitary.hpp"

namespace bosonfft {

/// Chain random stream. A single 64-bit Mersenne Twister seeded with the
/// chain seed; every step draws, in order, the source index, the
/// destination index and the acceptance uniform.
using ChainRng = std::mt19937_64;

inline constexpr double kZeroProbability = 1e-300;

struct ChainConfig {
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
  std::optional<FockState> initial_state;
  /// Step counts at which the cosine distance to a reference is recorded.
  std::vector<std::uint64_t> checkpoints;

  /// burn_in defaults to steps / 10.
  static ChainConfig with_default_burn_in(std::uint64_t steps, std::uint64_t seed) {
    return ChainConfig{steps, steps / 10, seed, std::nullopt, {}};
  }
};

struct Checkpoint {
  std::uint64_t step = 0;
  double cosine_distance = 0.0;
};

struct ChainStats {
  std::map<FockState, std::uint64_t, ColexLess> visit_counts;
  std::uint64_t accepted = 0;
  std::uint64_t proposed = 0;
  FockState initial_state;
  OutcomeDistribution empirical;
  std::vector<Checkpoint> checkpoints;

  double acceptance_rate() const { return proposed ? static_cast<double>(accepted) / static_cast<double>(proposed) : 0.0; }
};

/// Moves one photon: a uniformly chosen occupied mode loses a photon and a
/// uniformly chosen different mode gains it.
inline FockState propose(const FockState& l, ChainRng& rng) {
  const std::size_t n = l.modes();
  if (n < 2) throw ValidationError("a single-mode state has no photon moves");
  const int occupied = l.occupied_modes();
  if (occupied == 0) throw ValidationError("cannot move a photon out of the vacuum");

  std::uniform_int_distribution<int> pick_source(0, occupied - 1);
  int r = pick_source(rng);
  std::size_t src = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (l[i] > 0 && r-- == 0) {
      src = i;
      break;
    }
  }
  std::uniform_int_distribution<std::size_t> pick_dest(0, n - 2);
  std::size_t dst = pick_dest(rng);
  if (dst >= src) ++dst;

  FockState next = l;
  next[src] -= 1;
  next[dst] += 1;
  return next;
}

/// Probability that propose(l) returns `next`: 1 / (K(l) (N - 1)) when the
/// two differ by one photon moved between two modes, otherwise 0.
inline double transition_prob(const FockState& l, const FockState& next) {
  if (l.modes() != next.modes() || l.modes() < 2) return 0.0;
  int down = 0, up = 0, changed = 0;
  for (std::size_t i = 0; i < l.modes(); ++i) {
    const int d = next[i] - l[i];
    if (d == 0) continue;
    ++changed;
    if (d == -1) ++down;
    else if (d == 1) ++up;
  }
  if (changed != 2 || down != 1 || up != 1) return 0.0;
  return 1.0 / (static_cast<double>(l.occupied_modes()) * static_cast<double>(l.modes() - 1));
}

/// min(1, (P_next / P_curr) * K(l) / K(next)). A zero-probability current
/// state always accepts.
inline double acceptance_prob(double p_next, double p_curr, const FockState& l, const FockState& next) {
  if (p_curr <= 0.0) return 1.0;
  if (p_next <= 0.0) return 0.0;
  const double ratio = (p_next / p_curr) * static_cast<double>(l.occupied_modes()) /
                       static_cast<double>(next.occupied_modes());
  return std::min(1.0, ratio);
}

/// S_C(p, q) = p.q / (|p| |q|), over the union of both supports.
inline double cosine_similarity(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  double dot = 0.0, pp = 0.0, qq = 0.0;
  for (const auto& [s, v] : p.entries) {
    pp += v * v;
    dot += v * q.probability(s);
  }
  for (const auto& [s, v] : q.entries) qq += v * v;
  if (pp <= 0.0 || qq <= 0.0) throw UndefinedSimilarityError("cosine similarity of an all-zero distribution");
  return dot / (std::sqrt(pp) * std::sqrt(qq));
}

/// Memoised state probabilities. Holds at most one entry per output state,
/// i.e. C(M+N-1, N-1) doubles.
class ProbabilityCache {
 public:
  using Backend = std::function<double(const FockState&)>;

  explicit ProbabilityCache(Backend backend) : backend_(std::move(backend)) {}

  double operator()(const FockState& l) {
    const auto it = cache_.find(l);
    if (it != cache_.end()) return it->second;
    const double p = backend_(l);
    cache_.emplace(l, p);
    return p;
  }

  std::size_t size() const noexcept { return cache_.size(); }

 private:
  Backend backend_;
  std::map<FockState, double, ColexLess> cache_;
};

inline OutcomeDistribution empirical_from_counts(const std::map<FockState, std::uint64_t, ColexLess>& counts) {
  std::uint64_t total = 0;
  for (const auto& [s, c] : counts) total += c;
  OutcomeDistribution d;
  d.kind = DistributionKind::empirical;
  if (total == 0) return d;
  for (const auto& [s, c] : counts) d.entries.emplace(s, static_cast<double>(c) / static_cast<double>(total));
  return d;
}

/// Adds visit counts of independent chains together.
inline std::map<FockState, std::uint64_t, ColexLess> merge_visit_counts(std::span<const ChainStats> chains) {
  std::map<FockState, std::uint64_t, ColexLess> merged;
  for (const auto& c : chains)
    for (const auto& [s, n] : c.visit_counts) merged[s] += n;
  return merged;
}

/// Metropolis-Hastings over M-photon output states with the photon-move
/// proposal. `reference`, when given, is compared against the post-burn-in
/// visits at every configured checkpoint.
inline ChainStats run_chain(const FockState& input, const ChainConfig& cfg, ProbabilityCache& probability,
                            const OutcomeDistribution* reference = nullptr) {
  if (cfg.steps == 0) throw ValidationError("chain needs at least one step");
  if (cfg.burn_in >= cfg.steps) throw ValidationError("burn_in must be smaller than steps");
  const int modes = static_cast<int>(input.modes());
  const int photons = input.photons();
  if (photons < 1) throw ValidationError("input state must hold at least one photon");

  FockState current = cfg.initial_state.value_or(input);
  if (current.modes() != input.modes() || current.photons() != photons)
    throw MismatchError("initial state must match the input's modes and photon count");
  double p_current = probability(current);
  if (p_current < kZeroProbability) {
    bool found = false;
    for (const auto& s : enumerate_output_states(modes, photons)) {
      const double p = probability(s);
      if (p >= kZeroProbability) {
        current = s;
        p_current = p;
        found = true;
        break;
      }
    }
    if (!found) throw InitializationError("no output state has nonzero probability");
  }

  ChainStats stats;
  stats.initial_state = current;
  std::vector<std::uint64_t> checkpoints = cfg.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  auto next_checkpoint = checkpoints.begin();

  ChainRng rng(cfg.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::uint64_t step = 1; step <= cfg.steps; ++step) {
    if (modes >= 2) {
      FockState candidate = propose(current, rng);
      const double p_candidate = probability(candidate);
      const double a = acceptance_prob(p_candidate, p_current, current, candidate);
      ++stats.proposed;
      if (uniform(rng) < a) {
        current = std::move(candidate);
        p_current = p_candidate;
        ++stats.accepted;
      }
    }
    if (step > cfg.burn_in) ++stats.visit_counts[current];

    while (next_checkpoint != checkpoints.end() && *next_checkpoint <= step) {
      if (reference && *next_checkpoint == step && step > cfg.burn_in)
        stats.checkpoints.push_back({step, 1.0 - cosine_similarity(empirical_from_counts(stats.visit_counts), *reference)});
      ++next_checkpoint;
    }
  }
  stats.empirical = empirical_from_counts(stats.visit_counts);
  return stats;
}

/// run_chain with the Fourier engine as probability backend (method 2,
/// reduced rate), using a fresh per-chain cache.
inline ChainStats run_chain(const UnitaryMatrix& u, const FockState& input, const ChainConfig& cfg,
                            const OutcomeDistribution* reference = nullptr, const EngineOptions& opts = {}) {
  if (input.modes() != u.size()) throw DimensionError("input state length does not match interferometer");
  ProbabilityCache cache([&](const FockState& l) { return single_state_probability(u, input, l, SampleRate::reduced, opts); });
  return run_chain(input, cfg, cache, reference);
}

}  // namespace bosonfft
