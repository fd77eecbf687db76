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
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bosonfft/error.hpp"
#include "bosonfft/fock_state.hpp"

namespace bosonfft {

/// Integer frequency in cycles per unit t. Every value is kept below 2^63.
using Frequency = std::int64_t;

namespace detail {
inline Frequency checked_mul(Frequency a, Frequency b, const char* what) {
  Frequency r;
  if (__builtin_mul_overflow(a, b, &r)) throw CapacityError(std::string(what) + ": frequency overflows 63 bits");
  return r;
}
inline Frequency checked_add(Frequency a, Frequency b, const char* what) {
  Frequency r;
  if (__builtin_add_overflow(a, b, &r)) throw CapacityError(std::string(what) + ": frequency overflows 63 bits");
  return r;
}
}  // namespace detail

enum class PlanMethod { method1, method2 };

/// How many samples of g are taken over t in [0, 1).
///  - reduced: K = f_target + 1. For method 1 f_target is the largest
///    frequency in the spectrum, so no bin aliases; for method 2 aliasing is
///    allowed but never lands on the target bin.
///  - nyquist: K = 2 f_max, the classical choice.
enum class SampleRate { reduced, nyquist };

struct FrequencyPlan {
  std::vector<Frequency> q;  // per-mode harmonic frequency
  PlanMethod method = PlanMethod::method1;
  std::optional<FockState> target;  // method 2 only
  int photons = 0;                  // M
  Frequency f_target = 0;
  Frequency f_max = 0;    // largest frequency any M-photon state can reach
  Frequency samples = 0;  // K = f_s

  std::size_t modes() const noexcept { return q.size(); }
};

/// Exact l . Q, overflow-checked.
inline Frequency state_frequency(const FockState& l, std::span<const Frequency> q) {
  if (l.modes() != q.size()) throw DimensionError("state length does not match the frequency plan");
  Frequency f = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    f = detail::checked_add(f, detail::checked_mul(l[i], q[i], "state_frequency"), "state_frequency");
  return f;
}

inline Frequency state_frequency(const FockState& l, const FrequencyPlan& plan) { return state_frequency(l, plan.q); }

namespace detail {
inline Frequency sample_count(Frequency f_target, Frequency f_max, SampleRate rate) {
  if (rate == SampleRate::nyquist) return std::max<Frequency>(2, checked_mul(2, f_max, "nyquist sample count"));
  return checked_add(f_target, 1, "sample count");
}

inline bool method1_fits(int modes, int photons) {
  try {
    Frequency q = 1;
    for (int i = 1; i < modes; ++i) q = checked_mul(q, photons + 1, "");
    const Frequency f = checked_mul(q, photons, "");
    checked_mul(2, f, "");  // leave room for the nyquist rate
    return true;
  } catch (const CapacityError&) {
    return false;
  }
}
}  // namespace detail

/// Largest mode count N for which a method-1 plan with M photons fits.
inline int method1_max_modes(int photons) {
  int n = 1;
  while (n < 4096 && detail::method1_fits(n + 1, photons)) ++n;
  return n;
}

/// Largest photon count M for which a method-1 plan over N modes fits.
inline int method1_max_photons(int modes) {
  int m = 1;
  while (m < (1 << 20) && detail::method1_fits(modes, m + 1)) ++m;
  return m;
}

/// Method 1: Q_i = (M+1)^(i-1). Every output state gets a distinct
/// frequency, its radix-(M+1) reading with l_N as the leading digit.
inline FrequencyPlan q_method1(int photons, int modes, SampleRate rate = SampleRate::reduced) {
  if (photons < 1) throw ValidationError("method 1 needs at least one photon");
  if (modes < 1) throw DimensionError("method 1 needs at least one mode");
  if (!detail::method1_fits(modes, photons))
    throw CapacityError("method-1 plan for N=" + std::to_string(modes) + ", M=" + std::to_string(photons) +
                        " overflows 63 bits; largest feasible is N=" + std::to_string(method1_max_modes(photons)) +
                        " at this M, or M=" + std::to_string(method1_max_photons(modes)) + " at this N");
  FrequencyPlan plan;
  plan.method = PlanMethod::method1;
  plan.photons = photons;
  plan.q.resize(static_cast<std::size_t>(modes));
  Frequency q = 1;
  for (int i = 0; i < modes; ++i) {
    plan.q[static_cast<std::size_t>(i)] = q;
    if (i + 1 < modes) q = detail::checked_mul(q, photons + 1, "q_method1");
  }
  plan.f_target = detail::checked_mul(photons, plan.q.back(), "q_method1");
  plan.f_max = plan.f_target;
  plan.samples = detail::sample_count(plan.f_target, plan.f_max, rate);
  return plan;
}

/// Method 2: Q_i = prod_{j<i} (l_j + 1) where l_i > 0, and Q_i = 0 where
/// l_i = 0. Only the target's frequency is guaranteed unique, but it stays
/// unique modulo f_target + 1, which permits the reduced rate.
inline FrequencyPlan q_method2(const FockState& target, SampleRate rate = SampleRate::reduced) {
  if (target.modes() < 1) throw DimensionError("method 2 needs at least one mode");
  if (target.photons() < 1) throw ValidationError("method 2 target must hold at least one photon");
  FrequencyPlan plan;
  plan.method = PlanMethod::method2;
  plan.target = target;
  plan.photons = target.photons();
  plan.q.resize(target.modes());
  Frequency running = 1;
  for (std::size_t i = 0; i < target.modes(); ++i) {
    plan.q[i] = target[i] == 0 ? 0 : running;
    if (i + 1 < target.modes()) running = detail::checked_mul(running, target[i] + 1, "q_method2");
  }
  plan.f_target = state_frequency(target, plan.q);
  plan.f_max = detail::checked_mul(plan.photons, *std::max_element(plan.q.begin(), plan.q.end()), "q_method2");
  plan.samples = detail::sample_count(plan.f_target, plan.f_max, rate);
  return plan;
}

/// True iff every state has a distinct frequency under `q`, compared modulo
/// `modulo` when one is given.
inline bool check_collision_free(std::span<const FockState> states, std::span<const Frequency> q,
                                 std::optional<Frequency> modulo = std::nullopt) {
  if (modulo && *modulo <= 0) throw ValidationError("collision modulus must be positive");
  std::set<Frequency> seen;
  for (const auto& s : states) {
    Frequency f = state_frequency(s, q);
    if (modulo) f %= *modulo;
    if (!seen.insert(f).second) return false;
  }
  return true;
}

/// True iff no state other than `target` shares the target's frequency,
/// compared modulo `modulo` when one is given.
inline bool check_target_unique(std::span<const FockState> states, const FockState& target,
                                std::span<const Frequency> q, std::optional<Frequency> modulo = std::nullopt) {
  if (modulo && *modulo <= 0) throw ValidationError("collision modulus must be positive");
  Frequency ft = state_frequency(target, q);
  if (modulo) ft %= *modulo;
  for (const auto& s : states) {
    if (s == target) continue;
    Frequency f = state_frequency(s, q);
    if (modulo) f %= *modulo;
    if (f == ft) return false;
  }
  return true;
}

/// Plan-aware collision check. A method-1 plan promises pairwise-distinct
/// frequencies; a method-2 plan only promises that its target's bin is not
/// shared, so that is what gets checked.
inline bool check_collision_free(std::span<const FockState> states, const FrequencyPlan& plan,
                                 std::optional<Frequency> modulo = std::nullopt) {
  if (plan.method == PlanMethod::method2 && plan.target)
    return check_target_unique(states, *plan.target, plan.q, modulo);
  return check_collision_free(states, plan.q, modulo);
}

}  // namespace bosonfft
