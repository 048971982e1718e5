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

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "meanking/protocol.hpp"

namespace meanking {

/// Default master seed when none is given.
inline constexpr std::uint64_t kDefaultSeed = 42;

/// Largest p whose Born probabilities are computed exactly; above it the float backend is used.
inline constexpr int kExactSamplingCeiling = 13;

inline constexpr const char* kPrngName = "mt19937_64 (per-round seeds via splitmix64)";

/// SplitMix64 finalizer; derives independent per-round seeds from the master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t round_seed(std::uint64_t master, std::uint64_t round) {
  return splitmix64(master ^ splitmix64(round));
}

/// Uniform integer in [0, n) by rejection; exact for any n <= 2^64 - 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % n;
}

/// Inverse-CDF sampler over a finite outcome set.
///
/// The exact form holds integer weights over a common denominator and samples without
/// rounding; the float form walks a cumulative sum of doubles.
class DiscreteDistribution {
 public:
  static DiscreteDistribution exact(const std::vector<Rational>& probs) {
    BigInt denom = 1;
    for (const auto& r : probs) {
      if (r < 0) throw std::invalid_argument("negative probability");
      denom = boost::multiprecision::lcm(denom, boost::multiprecision::denominator(r));
    }
    if (denom > std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("probability denominator exceeds 64 bits");
    }
    DiscreteDistribution d;
    d.denom_ = denom.convert_to<std::uint64_t>();
    BigInt total = 0;
    for (const auto& r : probs) {
      const BigInt w = boost::multiprecision::numerator(r) * (denom / boost::multiprecision::denominator(r));
      total += w;
      d.weights_.push_back(w.convert_to<std::uint64_t>());
    }
    if (total != denom) throw std::invalid_argument("probabilities do not sum to one");
    return d;
  }

  static DiscreteDistribution floating(std::vector<double> probs) {
    DiscreteDistribution d;
    d.probs_ = std::move(probs);
    return d;
  }

  std::size_t size() const { return exact_form() ? weights_.size() : probs_.size(); }
  bool exact_form() const { return denom_ != 0; }

  std::size_t sample(std::mt19937_64& rng) const {
    if (exact_form()) {
      std::uint64_t r = uniform_below(rng, denom_);
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (r < weights_[i]) return i;
        r -= weights_[i];
      }
      throw std::logic_error("exact sampler ran past the last outcome");
    }
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (probs_[i] <= 0.0) continue;
      last = i;
      acc += probs_[i];
      if (u < acc) return i;
    }
    return last;
  }

  double probability(std::size_t i) const {
    if (exact_form()) return static_cast<double>(weights_.at(i)) / static_cast<double>(denom_);
    return probs_.at(i);
  }

 private:
  std::uint64_t denom_ = 0;
  std::vector<std::uint64_t> weights_;
  std::vector<double> probs_;
};

struct KingStrategy {
  enum class Kind { uniform, fixed };
  Kind kind = Kind::uniform;
  int m = 0;

  static KingStrategy uniform() { return {}; }
  static KingStrategy fixed(int m) { return {Kind::fixed, m}; }

  /// "uniform" or "fixed:<m>".
  static KingStrategy parse(const std::string& s) {
    if (s == "uniform") return uniform();
    const std::string prefix = "fixed:";
    if (s.rfind(prefix, 0) == 0) {
      const std::string rest = s.substr(prefix.size());
      std::size_t used = 0;
      int m = 0;
      try {
        m = std::stoi(rest, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == rest.size() && !rest.empty()) return fixed(m);
    }
    throw std::invalid_argument("king strategy must be 'uniform' or 'fixed:<m>', got '" + s + "'");
  }

  std::string str() const { return kind == Kind::uniform ? "uniform" : "fixed:" + std::to_string(m); }
};

struct RoundRecord {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  int king_choice = 0;
  int king_outcome = 0;
  BracketLabel physicist_outcome;
  int announced_answer = 0;
  bool correct = false;
};

/// Aggregate over rounds. `merge` is associative and commutative, so disjoint round ranges
/// can be simulated independently and combined in any order.
struct SimulationSummary {
  int p = 0;
  std::uint64_t seed = 0;
  std::string strategy;
  std::string backend;
  std::uint64_t rounds = 0;
  std::uint64_t successes = 0;
  // (m, k) -> measurement_index -> count
  std::map<std::pair<int, int>, std::map<int, std::uint64_t>> histogram;
  std::vector<RoundRecord> records;

  double success_rate() const {
    return rounds == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(rounds);
  }

  void add(const RoundRecord& r, bool keep_record) {
    ++rounds;
    if (r.correct) ++successes;
    ++histogram[{r.king_choice, r.king_outcome}][measurement_index(r.physicist_outcome)];
    if (keep_record) records.push_back(r);
  }

  void merge(const SimulationSummary& o) {
    if (o.p != p) throw std::invalid_argument("merging summaries of different p");
    rounds += o.rounds;
    successes += o.successes;
    for (const auto& [key, row] : o.histogram) {
      auto& dst = histogram[key];
      for (const auto& [n, c] : row) dst[n] += c;
    }
    records.insert(records.end(), o.records.begin(), o.records.end());
    std::sort(records.begin(), records.end(),
              [](const RoundRecord& a, const RoundRecord& b) { return a.index < b.index; });
  }
};

/// Born-rule tables for one dimension: king outcomes per choice m, and physicist outcomes
/// over the measurement basis per post-measurement state (m, k).
class MeanKingGame {
 public:
  explicit MeanKingGame(PrimeDim dim) : MeanKingGame(dim, dim.value() <= kExactSamplingCeiling) {}

  MeanKingGame(PrimeDim dim, bool exact) : p_(dim.value()), exact_(exact) {
    if (exact_) {
      build<ExactBackend>();
    } else {
      build<FloatBackend>();
    }
  }

  int p() const { return p_; }
  const char* backend() const { return exact_ ? "exact" : "float"; }
  const std::vector<BracketLabel>& labels() const { return labels_; }
  const DiscreteDistribution& king_distribution(int m) const {
    return king_.at(static_cast<std::size_t>(m));
  }
  const DiscreteDistribution& physicist_distribution(int m, int k) const {
    return physicist_.at(static_cast<std::size_t>(m)).at(static_cast<std::size_t>(k - 1));
  }

  /// One round. `king_choice` empty means the king picks m uniformly from {0..p}.
  RoundRecord play(std::optional<int> king_choice, std::uint64_t seed, std::uint64_t index = 0) const {
    if (king_choice) detail::check_label(p_, *king_choice);
    std::mt19937_64 rng(seed);
    RoundRecord r;
    r.index = index;
    r.seed = seed;
    r.king_choice = king_choice ? *king_choice : static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(p_ + 1)));
    r.king_outcome = static_cast<int>(king_distribution(r.king_choice).sample(rng)) + 1;
    const auto n = physicist_distribution(r.king_choice, r.king_outcome).sample(rng);
    r.physicist_outcome = labels_.at(n);
    // Told m, the physicist announces entry k_m of the measured label.
    r.announced_answer = r.physicist_outcome[r.king_choice];
    r.correct = r.announced_answer == r.king_outcome;
    return r;
  }

  /// Rounds [first, first + count) of the run seeded by `master_seed`.
  SimulationSummary simulate_range(std::uint64_t first, std::uint64_t count, KingStrategy strategy,
                                   std::uint64_t master_seed, bool keep_records = false) const {
    SimulationSummary s;
    s.p = p_;
    s.seed = master_seed;
    s.strategy = strategy.str();
    s.backend = backend();
    std::optional<int> choice;
    if (strategy.kind == KingStrategy::Kind::fixed) choice = strategy.m;
    for (std::uint64_t i = first; i < first + count; ++i) {
      s.add(play(choice, round_seed(master_seed, i), i), keep_records);
    }
    return s;
  }

 private:
  static Rational exact_probability(const Amplitude& z) {
    auto r = norm2(z).as_rational();
    if (!r) throw std::logic_error("Born weight is not rational: " + std::to_string(std::norm(z.to_complex())));
    return *r;
  }

  template <Backend B>
  void build() {
    const ProtocolBasis<B> pb(p_);
    const auto mb = pb.measurement_basis();
    for (const auto& [label, s] : mb) labels_.push_back(label);
    const auto psi0 = pb.psi0(0);
    for (int m = 0; m <= p_; ++m) {
      std::vector<Rational> king_exact;
      std::vector<double> king_float;
      std::vector<DiscreteDistribution> rows;
      for (int k = 1; k <= p_; ++k) {
        const auto post = pb.post_measurement_state(m, k);
        const auto z = inner(post, psi0);
        std::vector<Rational> row_exact;
        std::vector<double> row_float;
        for (const auto& [label, s] : mb) {
          const auto w = inner(s, post);
          if constexpr (std::is_same_v<B, ExactBackend>) {
            row_exact.push_back(exact_probability(w));
          } else {
            row_float.push_back(std::norm(w));
          }
        }
        if constexpr (std::is_same_v<B, ExactBackend>) {
          king_exact.push_back(exact_probability(z));
          rows.push_back(DiscreteDistribution::exact(row_exact));
        } else {
          king_float.push_back(std::norm(z));
          rows.push_back(DiscreteDistribution::floating(std::move(row_float)));
        }
      }
      if constexpr (std::is_same_v<B, ExactBackend>) {
        king_.push_back(DiscreteDistribution::exact(king_exact));
      } else {
        king_.push_back(DiscreteDistribution::floating(std::move(king_float)));
      }
      physicist_.push_back(std::move(rows));
    }
  }

  int p_;
  bool exact_;
  std::vector<BracketLabel> labels_;
  std::vector<DiscreteDistribution> king_;
  std::vector<std::vector<DiscreteDistribution>> physicist_;
};

/// A single round with its own tables; prefer MeanKingGame::play for repeated rounds.
inline RoundRecord run_round(PrimeDim dim, std::optional<int> king_choice, std::uint64_t seed) {
  return MeanKingGame(dim).play(king_choice, seed);
}

inline SimulationSummary simulate(PrimeDim dim, std::uint64_t rounds, KingStrategy strategy,
                                  std::uint64_t seed = kDefaultSeed, bool keep_records = false) {
  if (rounds < 1) throw std::invalid_argument("simulate: rounds must be >= 1");
  if (strategy.kind == KingStrategy::Kind::fixed) detail::check_label(dim.value(), strategy.m);
  return MeanKingGame(dim).simulate_range(0, rounds, strategy, seed, keep_records);
}

}  // namespace meanking
