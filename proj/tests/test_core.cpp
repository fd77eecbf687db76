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

#include <cmath>
#include <complex>
#include <random>
#include <set>

#include "gtest/gtest.h"

#include "bosonfft/fock_state.hpp"
#include "bosonfft/oracle.hpp"
#include "bosonfft/permanent.hpp"
#include "bosonfft/unitary.hpp"
#include "test_util.hpp"

using namespace bosonfft;

TEST(unitary, identity_and_non_unitary) {
  EXPECT_TRUE(validate_unitary(UnitaryMatrix::identity(3), 1e-10));
  EXPECT_FALSE(validate_unitary(ComplexMatrix(2, {1.0, 0.0, 0.0, 2.0}), 1e-10));
}

TEST(unitary, non_square_rejected) {
  EXPECT_THROW(ComplexMatrix(2, {1.0, 0.0, 0.0}), DimensionError);
  EXPECT_THROW(ComplexMatrix(0), DimensionError);
}

TEST(unitary, haar_passes_explicit_product_check) {
  const auto u = haar_random_unitary(5, 7);
  // U^dagger U computed here independently of unitarity_deviation
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      cdouble s = 0.0;
      for (std::size_t r = 0; r < 5; ++r) s += std::conj(u(r, i)) * u(r, j);
      EXPECT_NEAR(std::abs(s - (i == j ? 1.0 : 0.0)), 0.0, 1e-10);
    }
  EXPECT_TRUE(validate_unitary(u, 1e-10));
}

TEST(unitary, haar_single_mode_is_phase) {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    const auto u = haar_random_unitary(1, seed);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-15);
  }
}

TEST(unitary, haar_deterministic_and_seed_dependent) {
  EXPECT_EQ(haar_random_unitary(4, 42), haar_random_unitary(4, 42));
  EXPECT_NE(haar_random_unitary(4, 42), haar_random_unitary(4, 43));
  EXPECT_THROW(haar_random_unitary(0, 1), DimensionError);
}

TEST(unitary, haar_property_many_sizes) {
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_TRUE(validate_unitary(haar_random_unitary(n, seed), 1e-10));
}

TEST(unitary, haar_first_moment) {
  // E|u_11|^2 = 1/n under the Haar measure
  const std::size_t n = 4;
  double acc = 0.0;
  const int trials = 4000;
  for (int s = 0; s < trials; ++s) acc += std::norm(haar_random_unitary(n, static_cast<std::uint64_t>(s))(0, 0));
  EXPECT_NEAR(acc / trials, 0.25, 0.01);
}

TEST(fock_state, enumeration_counts) {
  EXPECT_EQ(enumerate_output_states(3, 3).size(), 10u);
  const auto single = enumerate_output_states(1, 5);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], FockState({5}));
  const auto four = enumerate_output_states(4, 2);
  EXPECT_EQ(four.size(), 10u);
  for (const auto& s : four) EXPECT_EQ(s.photons(), 2);
}

TEST(fock_state, enumeration_is_complete_colex_and_unique) {
  for (int n = 1; n <= 5; ++n)
    for (int m = 0; m <= 6; ++m) {
      const auto states = enumerate_output_states(n, m);
      EXPECT_EQ(states.size(), outcome_count(n, m)) << n << "," << m;
      EXPECT_EQ(states.size(), test::brute_force_count(n, m));
      std::set<FockState, ColexLess> uniq(states.begin(), states.end());
      EXPECT_EQ(uniq.size(), states.size());
      for (std::size_t i = 1; i < states.size(); ++i) EXPECT_TRUE(ColexLess{}(states[i - 1], states[i]));
    }
  EXPECT_EQ(enumerate_output_states(3, 3).front(), FockState({3, 0, 0}));
  EXPECT_EQ(enumerate_output_states(3, 3).back(), FockState({0, 0, 3}));
}

TEST(fock_state, factorials) {
  EXPECT_EQ(factorial_exact(0), 1u);
  EXPECT_EQ(factorial_exact(20), 2432902008176640000ull);
  EXPECT_THROW(factorial_exact(21), SizeError);
  EXPECT_DOUBLE_EQ(factorial(21), 51090942171709440000.0);
  EXPECT_EQ(binomial(19, 9), 92378u);
  EXPECT_EQ(outcome_count(10, 10), 92378u);
}

TEST(fock_state, negative_rejected) { EXPECT_THROW(FockState({1, -1}), ValidationError); }

TEST(permanent, small_cases) {
  const ComplexMatrix a(2, {1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(permanent_naive(a), cdouble(10.0));
  EXPECT_EQ(permanent_ryser(a), cdouble(10.0));
  ComplexMatrix ones(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) ones(i, j) = 1.0;
  EXPECT_EQ(permanent_naive(ones), cdouble(6.0));
  const cdouble z(0.3, -1.7);
  EXPECT_EQ(permanent_naive(ComplexMatrix(1, {z})), z);
  EXPECT_EQ(permanent_ryser(ComplexMatrix(1, {z})), z);
  EXPECT_EQ(permanent_ryser(ComplexMatrix::identity(4)), cdouble(1.0));
}

TEST(permanent, ryser_matches_naive_random) {
  const auto a = test::random_complex_matrix(6, 3);
  const cdouble naive = permanent_naive(a);
  EXPECT_LE(std::abs(permanent_ryser(a) - naive), 1e-10 * std::abs(naive));
  for (std::size_t n = 1; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto b = test::random_complex_matrix(n, 100 * n + seed);
      const cdouble ref = permanent_naive(b);
      EXPECT_LE(std::abs(permanent_ryser(b) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << n;
    }
}

TEST(permanent, guards) {
  EXPECT_THROW(permanent_naive(ComplexMatrix::identity(9)), SizeError);
  EXPECT_THROW(permanent_ryser(ComplexMatrix::identity(31)), SizeError);
}

TEST(oracle, permanent_probability_examples) {
  EXPECT_NEAR(probability_via_permanent(UnitaryMatrix::identity(3), {1, 0, 1}, {1, 0, 1}), 1.0, 1e-15);
  const auto bs = UnitaryMatrix::balanced_beam_splitter();
  EXPECT_NEAR(probability_via_permanent(bs, {1, 1}, {1, 1}), 0.0, 1e-15);
  EXPECT_NEAR(probability_via_permanent(bs, {1, 1}, {2, 0}), 0.5, 1e-15);
  EXPECT_NEAR(probability_via_permanent(bs, {1, 1}, {0, 2}), 0.5, 1e-15);
  // HOM cross-check through the naive permanent of the repeated-index matrix
  const auto sub = transition_submatrix(bs, {1, 1}, {2, 0});
  EXPECT_NEAR(std::norm(permanent_naive(sub)) / 2.0, 0.5, 1e-15);
}

TEST(oracle, mismatch_errors) {
  const auto u = UnitaryMatrix::identity(2);
  EXPECT_THROW(probability_via_permanent(u, {1, 1}, {1, 0}), MismatchError);
  EXPECT_THROW(probability_via_expansion(u, {1, 1}, {1, 0}), MismatchError);
  EXPECT_THROW(probability_via_permanent(u, {1, 1, 0}, {1, 1, 0}), DimensionError);
  EXPECT_THROW(probability_via_expansion(UnitaryMatrix::identity(6), {1, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0}),
               SizeError);
}

TEST(oracle, expansion_examples) {
  EXPECT_NEAR(probability_via_expansion(UnitaryMatrix::identity(2), {2, 1}, {2, 1}), 1.0, 1e-15);
  EXPECT_NEAR(probability_via_expansion(UnitaryMatrix::balanced_beam_splitter(), {1, 1}, {1, 1}), 0.0, 1e-15);
  const auto u = haar_random_unitary(3, 1);
  for (const auto& l : enumerate_output_states(3, 3))
    EXPECT_NEAR(probability_via_expansion(u, {1, 1, 1}, l), probability_via_permanent(u, {1, 1, 1}, l), 1e-10);
}

TEST(oracle, dual_oracle_and_normalisation_property) {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 5; ++n)
    for (int m = 1; m <= 5; ++m) {
      const auto u = haar_random_unitary(static_cast<std::size_t>(n), rng());
      const auto in = test::random_state(n, m, rng);
      double mass = 0.0;
      for (const auto& l : enumerate_output_states(n, m)) {
        const double pp = probability_via_permanent(u, in, l);
        EXPECT_NEAR(probability_via_expansion(u, in, l), pp, 1e-10);
        EXPECT_GE(pp, 0.0);
        EXPECT_LE(pp, 1.0 + 1e-12);
        mass += pp;
      }
      EXPECT_NEAR(mass, 1.0, 1e-8) << "N=" << n << " M=" << m;
    }
}
