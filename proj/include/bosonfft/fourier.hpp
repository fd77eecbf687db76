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

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bosonfft/detail/parallel.hpp"
#include "bosonfft/distribution.hpp"
#include "bosonfft/error.hpp"
#include "bosonfft/fock_state.hpp"
#include "bosonfft/frequency_plan.hpp"
#include "bosonfft/unitary.hpp"

namespace bosonfft {

inline constexpr Frequency kDefaultMaxStoredSamples = Frequency{1} << 26;
inline constexpr Frequency kDefaultMaxStreamedSamples = Frequency{1} << 32;

struct EngineOptions {
  Frequency max_stored_samples = kDefaultMaxStoredSamples;
  Frequency max_streamed_samples = kDefaultMaxStreamedSamples;
  unsigned threads = detail::default_threads();
};

/// DFT of g over K samples: bins[b] = (1/K) sum_n g(n/K) e^{-i 2 pi b n / K}.
struct Spectrum {
  std::vector<cdouble> bins;
  FrequencyPlan plan;

  Frequency sample_count() const noexcept { return static_cast<Frequency>(bins.size()); }
  /// Amplitude at integer frequency f, folded into [0, K).
  cdouble at(Frequency f) const { return bins[static_cast<std::size_t>(f % sample_count())]; }
};

namespace detail {

inline void check_input(const UnitaryMatrix& u, const FockState& in, std::size_t plan_modes) {
  if (in.modes() != u.size() || plan_modes != u.size())
    throw DimensionError("state, plan and interferometer must share " + std::to_string(u.size()) + " modes");
}

/// Unit phasor e^{i 2 pi r / K} for an exactly reduced residue r in [0, K).
inline cdouble phasor(Frequency residue, Frequency k) {
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(residue) / static_cast<double>(k));
  return {std::cos(angle), std::sin(angle)};
}

inline Frequency mul_mod(Frequency a, Frequency b, Frequency m) {
  return static_cast<Frequency>((static_cast<__int128>(a) * b) % m);
}

inline cdouble ipow(cdouble base, int exp) {
  cdouble r = 1.0;
  while (exp > 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

/// Evaluates g at the grid points t_n = n / K with exact integer phase
/// reduction, so large frequencies lose no precision.
class GridSampler {
 public:
  GridSampler(const UnitaryMatrix& u, const FockState& in, std::span<const Frequency> q, Frequency k)
      : n_(u.size()), k_(k) {
    check_input(u, in, q.size());
    for (std::size_t i = 0; i < n_; ++i) {
      q_mod_.push_back(q[i] % k);
    }
    for (std::size_t p = 0; p < n_; ++p) {
      if (in[p] == 0) continue;
      powers_.push_back(in[p]);
      for (std::size_t r = 0; r < n_; ++r) conj_cols_.push_back(std::conj(u(r, p)));
    }
  }

  cdouble operator()(Frequency n, std::vector<cdouble>& scratch) const {
    scratch.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) scratch[i] = q_mod_[i] == 0 ? cdouble{1.0} : phasor(mul_mod(q_mod_[i], n, k_), k_);
    cdouble g = 1.0;
    for (std::size_t f = 0; f < powers_.size(); ++f) {
      const cdouble* col = conj_cols_.data() + f * n_;
      cdouble s = 0.0;
      for (std::size_t r = 0; r < n_; ++r) s += scratch[r] * col[r];
      g *= ipow(s, powers_[f]);
    }
    return g;
  }

 private:
  std::size_t n_;
  Frequency k_;
  std::vector<Frequency> q_mod_;
  std::vector<int> powers_;
  std::vector<cdouble> conj_cols_;
};

inline constexpr std::size_t kChunk = 4096;

inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

/// g(t; Q) = prod_p (sum_q e^{i 2 pi Q_q t} conj(u_qp))^{k_p}, skipping
/// inputs with k_p = 0.
inline cdouble eval_g(double t, const UnitaryMatrix& u, const FockState& in, std::span<const Frequency> q) {
  detail::check_input(u, in, q.size());
  if (!(t >= 0.0 && t < 1.0)) throw ValidationError("g is sampled on t in [0, 1)");
  const std::size_t n = u.size();
  std::vector<cdouble> phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    // reduce Q t modulo 1 before scaling by 2 pi
    const double x = static_cast<double>(q[i]) * t;
    const double angle = 2.0 * std::numbers::pi * (x - std::floor(x));
    phase[i] = {std::cos(angle), std::sin(angle)};
  }
  cdouble g = 1.0;
  for (std::size_t p = 0; p < n; ++p) {
    if (in[p] == 0) continue;
    cdouble s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += phase[r] * std::conj(u(r, p));
    g *= detail::ipow(s, in[p]);
  }
  return g;
}

inline cdouble eval_g(double t, const UnitaryMatrix& u, const FockState& in, const FrequencyPlan& plan) {
  return eval_g(t, u, in, plan.q);
}

/// All K samples g(n/K), n in [0, K).
inline std::vector<cdouble> sample_g(const UnitaryMatrix& u, const FockState& in, std::span<const Frequency> q,
                                     Frequency k, unsigned threads = detail::default_threads()) {
  if (k < 1) throw ValidationError("sample count must be positive");
  const detail::GridSampler sampler(u, in, q, k);
  std::vector<cdouble> out(static_cast<std::size_t>(k));
  detail::for_each_chunk(out.size(), detail::kChunk, threads, [&](std::size_t, std::size_t b, std::size_t e) {
    std::vector<cdouble> scratch;
    for (std::size_t n = b; n < e; ++n) out[n] = sampler(static_cast<Frequency>(n), scratch);
  });
  return out;
}

/// Exact-length DFT normalised by 1/K. FFTW handles any K, not just powers
/// of two, so bins line up with integer frequencies.
inline std::vector<cdouble> dft(std::span<const cdouble> samples) {
  const std::size_t k = samples.size();
  if (k == 0) return {};
  std::vector<cdouble> in(samples.begin(), samples.end());
  std::vector<cdouble> out(k);
  fftw_plan plan;
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(k), reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(k);
  for (auto& v : out) v *= scale;
  return out;
}

/// One DFT bin by direct projection, (1/K) sum_n x_n e^{-i 2 pi f n / K}.
inline cdouble dft_bin(std::span<const cdouble> samples, Frequency f) {
  const auto k = static_cast<Frequency>(samples.size());
  if (k == 0) throw ValidationError("empty sample sequence");
  const Frequency fr = ((f % k) + k) % k;
  detail::CompensatedSum acc;
  for (Frequency n = 0; n < k; ++n) acc.add(samples[static_cast<std::size_t>(n)] * std::conj(detail::phasor(detail::mul_mod(fr, n, k), k)));
  return acc.value() / static_cast<double>(k);
}

/// Streams g over K grid points and projects onto frequency f without
/// storing samples. Chunks are reduced in a fixed order, so the result does
/// not depend on the thread count.
inline cdouble project_coefficient(const UnitaryMatrix& u, const FockState& in, std::span<const Frequency> q,
                                   Frequency k, Frequency f, const EngineOptions& opts = {}) {
  if (k < 1) throw ValidationError("sample count must be positive");
  if (k > opts.max_streamed_samples)
    throw CapacityError("projection needs " + std::to_string(k) + " samples, above the streaming limit of " +
                        std::to_string(opts.max_streamed_samples));
  const detail::GridSampler sampler(u, in, q, k);
  const Frequency fr = ((f % k) + k) % k;
  const std::size_t count = static_cast<std::size_t>(k);
  std::vector<cdouble> partial((count + detail::kChunk - 1) / detail::kChunk);
  detail::for_each_chunk(count, detail::kChunk, opts.threads, [&](std::size_t c, std::size_t b, std::size_t e) {
    std::vector<cdouble> scratch;
    detail::CompensatedSum acc;
    for (std::size_t n = b; n < e; ++n) {
      const auto nn = static_cast<Frequency>(n);
      acc.add(sampler(nn, scratch) * std::conj(detail::phasor(detail::mul_mod(fr, nn, k), k)));
    }
    partial[c] = acc.value();
  });
  detail::CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value() / static_cast<double>(k);
}

/// Samples g at plan.samples grid points and returns every DFT bin.
inline Spectrum full_spectrum(const UnitaryMatrix& u, const FockState& in, const FrequencyPlan& plan,
                              const EngineOptions& opts = {}) {
  if (plan.samples > opts.max_stored_samples)
    throw CapacityError("spectrum needs " + std::to_string(plan.samples) + " stored samples, above the limit of " +
                        std::to_string(opts.max_stored_samples) +
                        "; use single-state (streamed projection) mode instead");
  const auto samples = sample_g(u, in, plan.q, plan.samples, opts.threads);
  return Spectrum{dft(samples), plan};
}

/// Probability of output `out` under an arbitrary plan whose sample count
/// keeps the target bin unaliased: |alpha|^2 prod l_i!/k_i!.
inline double probability_from_plan(const UnitaryMatrix& u, const FockState& in, const FockState& out,
                                    const FrequencyPlan& plan, const EngineOptions& opts = {}) {
  detail::check_input(u, in, plan.modes());
  if (out.modes() != u.size()) throw DimensionError("output state length does not match interferometer");
  if (in.photons() != out.photons())
    throw MismatchError("input carries " + std::to_string(in.photons()) + " photons but output carries " +
                        std::to_string(out.photons()));
  const cdouble alpha = project_coefficient(u, in, plan.q, plan.samples, state_frequency(out, plan), opts);
  return std::norm(alpha) * factorial_ratio(out, in);
}

/// Probability of one output state via a method-2 plan built from it. The
/// reduced rate uses K = f_target + 1 samples; nyquist uses K = 2 f_max.
inline double single_state_probability(const UnitaryMatrix& u, const FockState& in, const FockState& out,
                                       SampleRate rate = SampleRate::reduced, const EngineOptions& opts = {}) {
  if (in.photons() != out.photons())
    throw MismatchError("input carries " + std::to_string(in.photons()) + " photons but output carries " +
                        std::to_string(out.photons()));
  return probability_from_plan(u, in, out, q_method2(out, rate), opts);
}

/// Exact distribution over every output state from a single method-1
/// spectrum.
inline OutcomeDistribution full_distribution(const UnitaryMatrix& u, const FockState& in,
                                             SampleRate rate = SampleRate::reduced, const EngineOptions& opts = {}) {
  const int m = in.photons();
  if (m < 1) throw ValidationError("input state must hold at least one photon");
  const FrequencyPlan plan = q_method1(m, static_cast<int>(u.size()), rate);
  const Spectrum spec = full_spectrum(u, in, plan, opts);
  OutcomeDistribution dist;
  dist.kind = DistributionKind::exact;
  for (auto& l : enumerate_output_states(static_cast<int>(u.size()), m)) {
    const double p = std::norm(spec.at(state_frequency(l, plan))) * factorial_ratio(l, in);
    dist.entries.emplace(std::move(l), p);
  }
  return dist;
}

}  // namespace bosonfft
