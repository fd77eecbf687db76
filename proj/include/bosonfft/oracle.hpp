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

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "bosonfft/error.hpp"
#include "bosonfft/fock_state.hpp"
#include "bosonfft/permanent.hpp"
#include "bosonfft/unitary.hpp"

namespace bosonfft {

namespace detail {
inline void check_transition(const UnitaryMatrix& u, const FockState& in, const FockState& out) {
  if (in.modes() != u.size() || out.modes() != u.size())
    throw DimensionError("state length does not match the " + std::to_string(u.size()) + "-mode interferometer");
  if (in.photons() != out.photons())
    throw MismatchError("input carries " + std::to_string(in.photons()) + " photons but output carries " +
                        std::to_string(out.photons()));
}
}  // namespace detail

/// U_{k,l}: column i of U repeated in[i] times, then row j repeated out[j]
/// times.
inline ComplexMatrix transition_submatrix(const UnitaryMatrix& u, const FockState& in, const FockState& out) {
  detail::check_transition(u, in, out);
  std::vector<std::size_t> cols, rows;
  for (std::size_t i = 0; i < in.modes(); ++i) cols.insert(cols.end(), static_cast<std::size_t>(in[i]), i);
  for (std::size_t j = 0; j < out.modes(); ++j) rows.insert(rows.end(), static_cast<std::size_t>(out[j]), j);
  const std::size_t m = cols.size();
  std::vector<cdouble> entries(m * m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) entries[r * m + c] = u(rows[r], cols[c]);
  if (m == 0) return {};
  return ComplexMatrix(m, std::move(entries));
}

/// |Per(U_{k,l})|^2 / (prod k_i! prod l_i!).
inline double probability_via_permanent(const UnitaryMatrix& u, const FockState& in, const FockState& out) {
  const ComplexMatrix sub = transition_submatrix(u, in, out);
  const cdouble per = sub.size() == 0 ? cdouble{1.0} : permanent_ryser(sub);
  double denom = 1.0;
  for (int v : in) denom *= factorial(v);
  for (int v : out) denom *= factorial(v);
  return std::norm(per) / denom;
}

inline constexpr int kExpansionModeLimit = 5;
inline constexpr int kExpansionPhotonLimit = 5;

/// Expands prod_i (sum_j conj(u_ji) x_j)^{k_i} as a polynomial in N
/// commuting variables and returns every coefficient, keyed by exponent
/// vector. Coefficient of x^l is the amplitude alpha(l).
inline std::map<FockState, cdouble, ColexLess> expand_creation_product(const UnitaryMatrix& u, const FockState& in) {
  const int n = static_cast<int>(u.size());
  if (static_cast<int>(in.modes()) != n) throw DimensionError("state length does not match interferometer");
  if (n > kExpansionModeLimit || in.photons() > kExpansionPhotonLimit)
    throw SizeError("expansion oracle is limited to N <= 5 and M <= 5");

  std::map<FockState, cdouble, ColexLess> poly;
  poly.emplace(FockState(std::vector<int>(static_cast<std::size_t>(n), 0)), 1.0);
  for (int i = 0; i < n; ++i) {
    for (int rep = 0; rep < in[static_cast<std::size_t>(i)]; ++rep) {
      std::map<FockState, cdouble, ColexLess> next;
      for (const auto& [mono, coef] : poly) {
        for (int j = 0; j < n; ++j) {
          FockState m = mono;
          m[static_cast<std::size_t>(j)] += 1;
          next[m] += coef * std::conj(u(static_cast<std::size_t>(j), static_cast<std::size_t>(i)));
        }
      }
      poly = std::move(next);
    }
  }
  return poly;
}

/// |alpha(l)|^2 prod l_i!/k_i!, with alpha read off the symbolic expansion.
inline double probability_via_expansion(const UnitaryMatrix& u, const FockState& in, const FockState& out) {
  detail::check_transition(u, in, out);
  const auto poly = expand_creation_product(u, in);
  const auto it = poly.find(out);
  const cdouble alpha = it == poly.end() ? cdouble{0.0} : it->second;
  return std::norm(alpha) * factorial_ratio(out, in);
}

}  // namespace bosonfft
