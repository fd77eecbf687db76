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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bosonfft/error.hpp"

namespace bosonfft {

/// Photon occupation numbers |l_1, ..., l_N> over N modes.
class FockState {
 public:
  FockState() = default;
  FockState(std::initializer_list<int> occupations) : occ_(occupations) { check(); }
  explicit FockState(std::vector<int> occupations) : occ_(std::move(occupations)) { check(); }

  std::size_t modes() const noexcept { return occ_.size(); }
  int photons() const noexcept { return std::accumulate(occ_.begin(), occ_.end(), 0); }

  /// Number of modes holding at least one photon.
  int occupied_modes() const noexcept {
    return static_cast<int>(std::count_if(occ_.begin(), occ_.end(), [](int v) { return v > 0; }));
  }

  int operator[](std::size_t i) const { return occ_[i]; }
  int& operator[](std::size_t i) { return occ_[i]; }
  std::span<const int> occupations() const noexcept { return occ_; }
  auto begin() const noexcept { return occ_.begin(); }
  auto end() const noexcept { return occ_.end(); }

  bool operator==(const FockState&) const = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < occ_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(occ_[i]);
    }
    return s;
  }

 private:
  void check() const {
    for (int v : occ_)
      if (v < 0) throw ValidationError("negative occupation in Fock state");
  }

  std::vector<int> occ_;
};

inline std::ostream& operator<<(std::ostream& os, const FockState& s) { return os << '(' << s.str() << ')'; }

/// Colexicographic order: the last mode is the most significant digit. For
/// states of equal photon count this matches ascending radix-(M+1) frequency.
struct ColexLess {
  bool operator()(const FockState& a, const FockState& b) const {
    if (a.modes() != b.modes()) return a.modes() < b.modes();
    for (std::size_t i = a.modes(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Exact n! for n <= 20.
inline std::uint64_t factorial_exact(int n) {
  if (n < 0 || n > 20) throw SizeError("exact factorial is limited to 0 <= n <= 20");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

/// n! as a double; exact integer arithmetic up to 20, floating point above.
inline double factorial(int n) {
  if (n < 0) throw SizeError("factorial of a negative number");
  if (n <= 20) return static_cast<double>(factorial_exact(n));
  double r = static_cast<double>(factorial_exact(20));
  for (int i = 21; i <= n; ++i) r *= i;
  return r;
}

/// prod_i l_i! / prod_i k_i!, the bosonic normalisation of an amplitude.
inline double factorial_ratio(const FockState& out, const FockState& in) {
  double r = 1.0;
  for (int v : out) r *= factorial(v);
  for (int v : in) r /= factorial(v);
  return r;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step
    r = r / i * (n - k + i) + r % i * (n - k + i) / i;
  }
  return r;
}

/// Number of ways to place M photons in N modes, C(M+N-1, N-1).
inline std::uint64_t outcome_count(int modes, int photons) {
  return binomial(static_cast<std::uint64_t>(photons + modes - 1), static_cast<std::uint64_t>(modes - 1));
}

namespace detail {
inline void enumerate_rec(std::vector<int>& cur, int pos, int remaining, std::vector<FockState>& out) {
  if (pos == 0) {
    cur[0] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[pos] = v;
    enumerate_rec(cur, pos - 1, remaining - v, out);
  }
  cur[pos] = 0;
}
}  // namespace detail

/// Every occupation vector of length `modes` summing to `photons`, in
/// ascending colexicographic order.
inline std::vector<FockState> enumerate_output_states(int modes, int photons) {
  if (modes < 1) throw DimensionError("enumerate_output_states needs at least one mode");
  if (photons < 0) throw ValidationError("photon count must be nonnegative");
  std::vector<FockState> out;
  out.reserve(outcome_count(modes, photons));
  std::vector<int> cur(static_cast<std::size_t>(modes), 0);
  detail::enumerate_rec(cur, modes - 1, photons, out);
  return out;
}

}  // namespace bosonfft
