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
#include <deque>
#include <map>
#include <random>
#include <set>

#include "gtest/gtest.h"

#include "bosonfft/fourier.hpp"
#include "bosonfft/mcmc.hpp"
#include "bosonfft/oracle.hpp"
#include "test_util.hpp"

using namespace bosonfft;

TEST(mcmc, propose_reaches_all_single_moves) {
  const FockState l{2, 0, 1};
  const std::set<FockState, ColexLess> expected{{1, 1, 1}, {1, 0, 2}, {3, 0, 0}, {2, 1, 0}};
  std::map<FockState, int, ColexLess> seen;
  ChainRng rng(1);
  const int draws = 40000;
  for (int i = 0; i < draws; ++i) ++seen[propose(l, rng)];
  ASSERT_EQ(seen.size(), expected.size());
  for (const auto& [s, c] : seen) {
    EXPECT_TRUE(expected.count(s)) << s;
    // each branch has probability 1/(K (N-1)) = 1/4
    EXPECT_NEAR(static_cast<double>(c) / draws, transition_prob(l, s), 0.01) << s;
  }
}

TEST(mcmc, propose_two_modes_forced) {
  ChainRng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(propose({4, 0}, rng), FockState({3, 1}));
}

TEST(mcmc, propose_deterministic_per_seed) {
  ChainRng a(99), b(99);
  FockState x{1, 2, 0, 1}, y{1, 2, 0, 1};
  for (int i = 0; i < 200; ++i) {
    x = propose(x, a);
    y = propose(y, b);
    ASSERT_EQ(x, y);
  }
}

TEST(mcmc, propose_validity_property) {
  std::mt19937_64 gen(5);
  ChainRng rng(6);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 6);
    const int m = 1 + static_cast<int>(gen() % 8);
    const auto l = test::random_state(n, m, gen);
    const auto next = propose(l, rng);
    EXPECT_EQ(next.photons(), m);
    int diffs = 0;
    for (std::size_t i = 0; i < l.modes(); ++i) {
      EXPECT_GE(next[i], 0);
      diffs += next[i] != l[i];
    }
    EXPECT_EQ(diffs, 2);
    EXPECT_GT(transition_prob(l, next), 0.0);
  }
}

TEST(mcmc, propose_single_mode_errors) {
  ChainRng rng(0);
  EXPECT_THROW(propose({3}, rng), ValidationError);
}

TEST(mcmc, transition_probabilities) {
  EXPECT_DOUBLE_EQ(transition_prob({2, 0, 1}, {1, 1, 1}), 0.25);
  EXPECT_DOUBLE_EQ(transition_prob({1, 1, 1}, {2, 0, 1}), 1.0 / 6.0);
  EXPECT_EQ(transition_prob({2, 0, 1}, {2, 0, 1}), 0.0);
  EXPECT_EQ(transition_prob({2, 0, 1}, {0, 1, 2}), 0.0);
  EXPECT_EQ(transition_prob({2, 0, 1}, {0, 2, 1}), 0.0);
}

TEST(mcmc, acceptance_examples) {
  EXPECT_DOUBLE_EQ(acceptance_prob(0.3, 0.3, {1, 0, 1}, {0, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(acceptance_prob(0.2, 0.2, {2, 0, 1}, {1, 1, 1}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(acceptance_prob(0.2, 0.2, {2, 0, 1}, {1, 1, 1}),
                   0.2 / 0.2 * transition_prob({1, 1, 1}, {2, 0, 1}) / transition_prob({2, 0, 1}, {1, 1, 1}));
  EXPECT_EQ(acceptance_prob(0.0, 0.4, {2, 0, 1}, {1, 1, 1}), 0.0);
  EXPECT_EQ(acceptance_prob(0.1, 0.0, {2, 0, 1}, {1, 1, 1}), 1.0);
  EXPECT_EQ(acceptance_prob(0.0, 0.0, {2, 0, 1}, {1, 1, 1}), 1.0);
}

TEST(mcmc, cosine_similarity_examples) {
  OutcomeDistribution p, q;
  p.entries = {{FockState{2, 0}, 0.5}, {FockState{1, 1}, 0.5}, {FockState{0, 2}, 0.0}};
  q.entries = {{FockState{2, 0}, 1.0}};
  EXPECT_NEAR(cosine_similarity(p, q), 0.5 / std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(cosine_similarity(p, q), 0.7071067811865476, 1e-15);
  EXPECT_NEAR(cosine_similarity(p, p), 1.0, 1e-15);
  OutcomeDistribution r;
  r.entries = {{FockState{0, 2}, 1.0}};
  EXPECT_EQ(cosine_similarity(q, r), 0.0);
  OutcomeDistribution zero;
  zero.entries = {{FockState{0, 2}, 0.0}};
  EXPECT_THROW(cosine_similarity(p, zero), UndefinedSimilarityError);
}

TEST(mcmc, proposal_graph_irreducible) {
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      const auto all = enumerate_output_states(n, m);
      std::set<FockState, ColexLess> reached{all.front()};
      std::deque<FockState> frontier{all.front()};
      while (!frontier.empty()) {
        const FockState s = frontier.front();
        frontier.pop_front();
        for (const auto& t : all)
          if (transition_prob(s, t) > 0.0 && reached.insert(t).second) frontier.push_back(t);
      }
      EXPECT_EQ(reached.size(), all.size()) << n << "," << m;
    }
}

TEST(mcmc, transition_prob_sums_to_one) {
  for (const auto& l : enumerate_output_states(4, 3)) {
    double total = 0.0;
    for (const auto& t : enumerate_output_states(4, 3)) total += transition_prob(l, t);
    EXPECT_NEAR(total, 1.0, 1e-14);
  }
}

TEST(mcmc, detailed_balance_kernel) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      const auto u = haar_random_unitary(static_cast<std::size_t>(n), rng());
      const auto in = test::random_state(n, m, rng);
      const auto states = enumerate_output_states(n, m);
      std::vector<double> p;
      for (const auto& s : states) p.push_back(probability_via_permanent(u, in, s));
      for (std::size_t a = 0; a < states.size(); ++a)
        for (std::size_t b = 0; b < states.size(); ++b) {
          if (a == b || p[a] <= 0.0 || p[b] <= 0.0) continue;
          const double forward = p[a] * transition_prob(states[a], states[b]) *
                                 acceptance_prob(p[b], p[a], states[a], states[b]);
          const double backward = p[b] * transition_prob(states[b], states[a]) *
                                  acceptance_prob(p[a], p[b], states[b], states[a]);
          EXPECT_NEAR(forward, backward, 1e-10);
        }
    }
}

TEST(mcmc, identity_chain_never_moves) {
  const FockState k{1, 0, 2};
  const auto stats = run_chain(UnitaryMatrix::identity(3), k, ChainConfig{2000, 100, 7, std::nullopt, {}});
  ASSERT_EQ(stats.visit_counts.size(), 1u);
  EXPECT_EQ(stats.visit_counts.begin()->first, k);
  EXPECT_EQ(stats.visit_counts.begin()->second, 1900u);
  EXPECT_EQ(stats.accepted, 0u);
}

TEST(mcmc, visit_count_invariants_and_determinism) {
  const auto u = haar_random_unitary(4, 12);
  const ChainConfig cfg{5000, 500, 42, std::nullopt, {}};
  const auto a = run_chain(u, {1, 1, 1, 1}, cfg);
  const auto b = run_chain(u, {1, 1, 1, 1}, cfg);
  EXPECT_EQ(a.visit_counts, b.visit_counts);
  EXPECT_EQ(a.accepted, b.accepted);
  std::uint64_t total = 0;
  for (const auto& [s, c] : a.visit_counts) total += c;
  EXPECT_EQ(total, cfg.steps - cfg.burn_in);
  for (const auto& [s, c] : a.visit_counts)
    EXPECT_DOUBLE_EQ(a.empirical.probability(s), static_cast<double>(c) / static_cast<double>(total));
  EXPECT_EQ(a.empirical.kind, DistributionKind::empirical);
  const auto c = run_chain(u, {1, 1, 1, 1}, ChainConfig{5000, 500, 43, std::nullopt, {}});
  EXPECT_NE(a.visit_counts, c.visit_counts);
}

TEST(mcmc, config_validation) {
  const auto u = UnitaryMatrix::identity(2);
  EXPECT_THROW(run_chain(u, {1, 1}, ChainConfig{10, 10, 0, std::nullopt, {}}), ValidationError);
  EXPECT_THROW(run_chain(u, {1, 1}, ChainConfig{0, 0, 0, std::nullopt, {}}), ValidationError);
  EXPECT_EQ(ChainConfig::with_default_burn_in(1000, 1).burn_in, 100u);
}

TEST(mcmc, zero_probability_start_falls_back) {
  // (1,1) carries no weight; the first canonical state with weight is (2,0)
  ProbabilityCache cache([](const FockState& l) { return l == FockState({1, 1}) ? 0.0 : 0.5; });
  const auto stats = run_chain({1, 1}, ChainConfig{100, 0, 1, std::nullopt, {}}, cache);
  EXPECT_EQ(stats.initial_state, FockState({2, 0}));
  EXPECT_EQ(stats.visit_counts.count(FockState({1, 1})), 0u);

  ProbabilityCache nothing([](const FockState&) { return 0.0; });
  EXPECT_THROW(run_chain({1, 1}, ChainConfig{100, 0, 1, std::nullopt, {}}, nothing), InitializationError);
}

TEST(mcmc, cache_memoises) {
  int calls = 0;
  ProbabilityCache cache([&](const FockState&) {
    ++calls;
    return 0.25;
  });
  cache({1, 0});
  cache({1, 0});
  cache({0, 1});
  EXPECT_EQ(calls, 2);
  EXPECT_EQ(cache.size(), 2u);
}

TEST(mcmc, converges_to_exact_distribution) {
  const auto u = haar_random_unitary(5, 11);
  const FockState k{1, 1, 1, 1, 1};
  const auto exact = full_distribution(u, k);
  ChainConfig cfg = ChainConfig::with_default_burn_in(200000, 2024);
  cfg.checkpoints = {1000, 10000, 100000, 200000};
  const auto stats = run_chain(u, k, cfg, &exact);
  ASSERT_EQ(stats.checkpoints.size(), 2u);  // 1000 and 10000 fall inside the burn-in
  const double distance = 1.0 - cosine_similarity(stats.empirical, exact);
  EXPECT_LE(distance, 0.01);
  EXPECT_NEAR(stats.checkpoints.back().cosine_distance, distance, 1e-12);
}

TEST(mcmc, merged_chains_add_counts) {
  const auto u = haar_random_unitary(3, 2);
  std::vector<ChainStats> chains;
  for (std::uint64_t s = 0; s < 3; ++s) chains.push_back(run_chain(u, {1, 1, 1}, ChainConfig{1000, 0, s, std::nullopt, {}}));
  const auto merged = merge_visit_counts(chains);
  std::uint64_t total = 0;
  for (const auto& [st, c] : merged) total += c;
  EXPECT_EQ(total, 3000u);
}
