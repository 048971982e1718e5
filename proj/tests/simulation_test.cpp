// Copyright 2026 The meanking Authors
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

#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "meanking/json_io.hpp"
#include "meanking/simulation.hpp"
#include "oracle.hpp"

namespace {

using namespace meanking;

TEST(Sampling, SplitMixReferenceOutput) {
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFull);
  EXPECT_NE(round_seed(42, 0), round_seed(42, 1));
  EXPECT_NE(round_seed(42, 0), round_seed(43, 0));
}

TEST(Sampling, UniformBelowStaysInRangeAndHitsEveryValue) {
  std::mt19937_64 rng(1);
  std::vector<int> hits(7);
  for (int i = 0; i < 7000; ++i) {
    const auto x = uniform_below(rng, 7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}

TEST(Sampling, ExactDistributionFollowsItsWeights) {
  const auto d = DiscreteDistribution::exact({Rational(1, 6), Rational(0), Rational(1, 2), Rational(1, 3)});
  EXPECT_TRUE(d.exact_form());
  EXPECT_DOUBLE_EQ(d.probability(2), 0.5);
  std::mt19937_64 rng(3);
  std::vector<int> hits(4);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++hits[d.sample(rng)];
  EXPECT_EQ(hits[1], 0);
  EXPECT_NEAR(hits[0] / double(n), 1.0 / 6, 0.01);
  EXPECT_NEAR(hits[2] / double(n), 0.5, 0.01);
  EXPECT_THROW(DiscreteDistribution::exact({Rational(1, 2), Rational(1, 3)}), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution::exact({Rational(3, 2), Rational(-1, 2)}), std::invalid_argument);
}

TEST(Game, EveryRoundIsAnsweredCorrectly) {
  for (int p : {2, 3, 5, 7}) {
    const MeanKingGame game{PrimeDim(p)};
    for (int m = 0; m <= p; ++m) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) EXPECT_TRUE(game.play(m, seed).correct) << p << " " << m;
    }
  }
  EXPECT_TRUE(run_round(PrimeDim(3), std::nullopt, 99).correct);
}

TEST(Game, FloatTablesAlsoNeverFail) {
  for (int p : {3, 5}) {
    const MeanKingGame game(PrimeDim(p), false);
    EXPECT_STREQ(game.backend(), "float");
    const auto s = game.simulate_range(0, 2000, KingStrategy::uniform(), 8);
    EXPECT_EQ(s.successes, s.rounds);
  }
  const auto big = simulate(PrimeDim(17), 300, KingStrategy::uniform(), 4);
  EXPECT_EQ(big.backend, "float");
  EXPECT_EQ(big.successes, 300u);
}

TEST(Game, KingOutcomesAreUniform) {
  const int p = 5;
  const MeanKingGame game{PrimeDim(p)};
  for (int m = 0; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) EXPECT_DOUBLE_EQ(game.king_distribution(m).probability(k - 1), 1.0 / p);
  }
  const int rounds = 30000;
  const auto s = game.simulate_range(0, rounds, KingStrategy::fixed(2), 11);
  std::vector<double> counts(p);
  for (const auto& [key, row] : s.histogram) {
    for (const auto& [n, c] : row) counts[static_cast<std::size_t>(key.second - 1)] += static_cast<double>(c);
  }
  double chi2 = 0;
  for (double c : counts) chi2 += (c - rounds / double(p)) * (c - rounds / double(p)) / (rounds / double(p));
  // 4 degrees of freedom; 18.47 is the 0.999 quantile.
  EXPECT_LT(chi2, 18.47);
}

TEST(Game, PhysicistTablesMatchBruteForceBornRule) {
  for (int p : {2, 3, 5}) {
    const MeanKingGame game{PrimeDim(p)};
    for (int m = 0; m <= p; ++m) {
      for (int k = 1; k <= p; ++k) {
        const auto& d = game.physicist_distribution(m, k);
        ASSERT_EQ(d.size(), static_cast<std::size_t>(p * p));
        const auto v = oracle::ket(p, m, k);
        const auto post = oracle::kron(v, v.conjugate());
        for (std::size_t n = 0; n < d.size(); ++n) {
          const auto& l = game.labels()[n];
          EXPECT_NEAR(d.probability(n), std::norm(oracle::bracket(p, l.k).dot(post)), 1e-12);
          EXPECT_DOUBLE_EQ(d.probability(n), l[m] == k ? 1.0 / p : 0.0);
        }
      }
    }
  }
}

TEST(Simulate, CertaintyOverTenThousandRounds) {
  const auto s = simulate(PrimeDim(3), 10000, KingStrategy::uniform(), 42);
  EXPECT_EQ(s.successes, 10000u);
  EXPECT_EQ(s.success_rate(), 1.0);
}

TEST(Simulate, FixedStrategyPopulatesOnlyThatRow) {
  const auto s = simulate(PrimeDim(5), 500, KingStrategy::fixed(0), 1);
  for (const auto& [key, row] : s.histogram) EXPECT_EQ(key.first, 0);
  EXPECT_THROW(simulate(PrimeDim(5), 10, KingStrategy::fixed(6), 1), std::out_of_range);
  EXPECT_THROW(simulate(PrimeDim(5), 0, KingStrategy::uniform(), 1), std::invalid_argument);
}

TEST(Simulate, SameSeedGivesIdenticalOutput) {
  const auto a = simulate(PrimeDim(3), 400, KingStrategy::uniform(), 77, true);
  const auto b = simulate(PrimeDim(3), 400, KingStrategy::uniform(), 77, true);
  const auto c = simulate(PrimeDim(3), 400, KingStrategy::uniform(), 78, true);
  EXPECT_EQ(json_io::to_json(a, true).dump(), json_io::to_json(b, true).dump());
  EXPECT_NE(json_io::to_json(a, true).dump(), json_io::to_json(c, true).dump());
}

TEST(Simulate, MergingChunksReproducesTheSingleRun) {
  const MeanKingGame game{PrimeDim(5)};
  const auto whole = game.simulate_range(0, 900, KingStrategy::uniform(), 5, true);
  const auto x = game.simulate_range(0, 200, KingStrategy::uniform(), 5, true);
  const auto y = game.simulate_range(200, 300, KingStrategy::uniform(), 5, true);
  const auto z = game.simulate_range(500, 400, KingStrategy::uniform(), 5, true);
  auto left = x;
  left.merge(y);
  left.merge(z);
  auto right = y;
  right.merge(z);
  auto other = z;
  other.merge(x);
  other.merge(y);
  auto assoc = x;
  assoc.merge(right);
  const auto ref = json_io::to_json(whole, true).dump();
  EXPECT_EQ(json_io::to_json(left, true).dump(), ref);
  EXPECT_EQ(json_io::to_json(assoc, true).dump(), ref);
  EXPECT_EQ(json_io::to_json(other, true).dump(), ref);
  auto wrong = simulate(PrimeDim(3), 5, KingStrategy::uniform(), 5);
  EXPECT_THROW(wrong.merge(whole), std::invalid_argument);
}

TEST(Strategy, ParsesAndRejects) {
  EXPECT_EQ(KingStrategy::parse("uniform").kind, KingStrategy::Kind::uniform);
  const auto f = KingStrategy::parse("fixed:3");
  EXPECT_EQ(f.kind, KingStrategy::Kind::fixed);
  EXPECT_EQ(f.m, 3);
  EXPECT_EQ(f.str(), "fixed:3");
  for (const char* bad : {"", "fixed:", "fixed:x", "fixed:2x", "random"}) {
    EXPECT_THROW(KingStrategy::parse(bad), std::invalid_argument) << bad;
  }
}

}  // namespace
