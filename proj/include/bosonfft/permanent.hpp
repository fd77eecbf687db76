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
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "bosonfft/error.hpp"
#include "bosonfft/unitary.hpp"

namespace bosonfft {

inline constexpr std::size_t kNaivePermanentLimit = 8;
inline constexpr std::size_t kRyserPermanentLimit = 30;

/// Permanent by direct summation over all n! permutations. Test oracle only.
inline cdouble permanent_naive(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  if (n > kNaivePermanentLimit)
    throw SizeError("permanent_naive is limited to n <= " + std::to_string(kNaivePermanentLimit));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  cdouble total = 0.0;
  do {
    cdouble term = 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Ryser inclusion-exclusion over column subsets, visited in Gray-code order
/// so each step adds or removes one column from the running row sums.
inline cdouble permanent_ryser(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  if (n > kRyserPermanentLimit)
    throw SizeError("permanent_ryser is limited to n <= " + std::to_string(kRyserPermanentLimit));
  if (n == 0) return 1.0;

  std::vector<cdouble> row_sums(n, 0.0);
  cdouble total = 0.0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < subsets; ++step) {
    const int col = std::countr_zero(step);
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    const double dir = (gray & bit) ? 1.0 : -1.0;
    cdouble prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      row_sums[i] += dir * a(i, static_cast<std::size_t>(col));
      prod *= row_sums[i];
    }
    total += (std::popcount(gray) & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

}  // namespace bosonfft
