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
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "bosonfft/error.hpp"

namespace bosonfft {

using cdouble = std::complex<double>;

inline constexpr double kDefaultUnitaryTolerance = 1e-10;

/// Dense square complex matrix, row-major. As an interferometer, element
/// (i, j) is u_ij of
/// b_i^dagger = sum_j u_ij a_j^dagger; rows index output modes and columns
/// index input modes.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {
    if (n == 0) throw DimensionError("matrix dimension must be at least 1");
  }

  /// Builds from row-major entries; throws if the entry count is not n*n.
  ComplexMatrix(std::size_t n, std::vector<cdouble> entries) : n_(n), data_(std::move(entries)) {
    if (n == 0) throw DimensionError("matrix dimension must be at least 1");
    if (data_.size() != n * n) throw DimensionError("matrix is not square");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix u(n);
    for (std::size_t i = 0; i < n; ++i) u(i, i) = 1.0;
    return u;
  }

  /// The balanced 50:50 beam splitter (1/sqrt2)[[1,1],[1,-1]].
  static ComplexMatrix balanced_beam_splitter() {
    const double s = 1.0 / std::sqrt(2.0);
    return ComplexMatrix(2, {s, s, s, -s});
  }

  std::size_t size() const noexcept { return n_; }
  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<cdouble>& data() const noexcept { return data_; }

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<cdouble> data_;
};

/// An interferometer matrix. Unitarity is checked by validate_unitary, not
/// enforced by the type, so that ingested matrices can be rejected cleanly.
using UnitaryMatrix = ComplexMatrix;

/// Max-norm of U^dagger U - I. Rectangular input (entries != n*n) cannot be
/// represented, so this only guards against an empty matrix.
inline double unitarity_deviation(const UnitaryMatrix& u) {
  const std::size_t n = u.size();
  if (n == 0) throw DimensionError("empty matrix");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cdouble acc = 0.0;
      for (std::size_t r = 0; r < n; ++r) acc += std::conj(u(r, i)) * u(r, j);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::max(std::abs(acc.real()), std::abs(acc.imag())));
    }
  }
  return worst;
}

inline bool validate_unitary(const UnitaryMatrix& u, double tol = kDefaultUnitaryTolerance) {
  return unitarity_deviation(u) <= tol;
}

/// Haar-distributed unitary: complex Gaussian matrix, QR by modified
/// Gram-Schmidt over columns. Gram-Schmidt leaves R with a positive real
/// diagonal, which is the phase normalisation that makes Q Haar-distributed.
inline UnitaryMatrix haar_random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DimensionError("haar_random_unitary needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));

  // column-major working copy
  std::vector<std::vector<cdouble>> cols(n, std::vector<cdouble>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      cols[j][i] = {re, im};
    }

  // two passes of orthogonalisation keep the result unitary to ~1e-15
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        cdouble proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(cols[p][i]) * cols[j][i];
        for (std::size_t i = 0; i < n; ++i) cols[j][i] -= proj * cols[p][i];
      }
    }
    double norm = 0.0;
    for (const auto& v : cols[j]) norm += std::norm(v);
    norm = std::sqrt(norm);
    for (auto& v : cols[j]) v /= norm;
  }

  UnitaryMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = cols[j][i];
  return u;
}

}  // namespace bosonfft
