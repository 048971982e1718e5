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

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "meanking/mub.hpp"
#include "meanking/protocol.hpp"

namespace meanking {

struct VerifyOptions {
  // Bracket closed-form pairs are enumerated exhaustively up to this p, sampled above it.
  int exhaustive_bracket_ceiling = 3;
  std::size_t random_bracket_pairs = 2000;
  std::uint64_t seed = 42;
};

/// Random label pair whose agreement count is spread over 0..p+1: b copies a, then each
/// slot is resampled with a probability drawn per pair.
inline std::pair<BracketLabel, BracketLabel> random_label_pair(int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> value(1, p);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BracketLabel a, b;
  for (int m = 0; m <= p; ++m) a.k.push_back(value(rng));
  const double resample = unit(rng);
  b = a;
  for (int m = 0; m <= p; ++m) {
    if (unit(rng) < resample) b.k[static_cast<std::size_t>(m)] = value(rng);
  }
  return {std::move(a), std::move(b)};
}

inline std::vector<BracketLabel> all_labels(int p) {
  std::vector<BracketLabel> out;
  BracketLabel l;
  l.k.assign(static_cast<std::size_t>(p + 1), 1);
  while (true) {
    out.push_back(l);
    std::size_t i = 0;
    while (i < l.k.size() && l.k[i] == p) l.k[i++] = 1;
    if (i == l.k.size()) break;
    ++l.k[i];
  }
  return out;
}

template <Backend B>
Report bracket_closed_form(const ProtocolBasis<B>& pb, const VerifyOptions& opt) {
  const int p = pb.p();
  Report rep{"bracket_closed_form", "<[k]|[k']> = (1/p) sum_m d(k_m, k'_m) - 1/p"};
  if (p <= opt.exhaustive_bracket_ceiling) {
    const auto labels = all_labels(p);
    std::vector<BipartiteState<B>> states;
    for (const auto& l : labels) states.push_back(pb.bracket_state(l));
    for (std::size_t a = 0; a < labels.size(); ++a) {
      for (std::size_t b = 0; b < labels.size(); ++b) {
        detail::check_bracket_pair(labels[a], states[a], labels[b], states[b], rep);
      }
    }
    return rep;
  }
  std::mt19937_64 rng(opt.seed);
  for (std::size_t i = 0; i < opt.random_bracket_pairs; ++i) {
    auto [a, b] = random_label_pair(p, rng);
    detail::check_bracket_pair(a, pb.bracket_state(a), b, pb.bracket_state(b), rep);
  }
  return rep;
}

/// Every identity family for prime p, in one backend. Report names are stable identifiers.
template <Backend B>
std::vector<Report> run_verification(PrimeDim dim, const VerifyOptions& opt = {}) {
  const int p = dim.value();
  std::vector<Report> out;
  auto named = [](Report r, std::string name) {
    r.name = std::move(name);
    return r;
  };

  out.push_back(detail::period<B>(p));
  out.push_back(detail::weyl_commutation<B>(p));
  out.push_back(detail::trace_table<B>(p));
  out.push_back(detail::operator_basis<B>(p));

  const ProtocolBasis<B> pb(p);
  const auto& obj = pb.object();
  const auto& anc = pb.ancilla();
  out.push_back(detail::unbiasedness(obj));
  out.push_back(detail::eigenbases(obj));
  out.push_back(named(detail::eigenbases(anc), "ancilla_eigenbases"));
  out.push_back(detail::cyclic_permutation(obj));
  out.push_back(named(detail::cyclic_permutation(anc), "ancilla_cyclic_permutation"));
  out.push_back(detail::projector_power_sums(obj));
  out.push_back(detail::amplitude_recurrence(obj));
  out.push_back(named(detail::amplitude_recurrence(anc), "ancilla_amplitude_recurrence"));
  out.push_back(detail::phase_convention(obj, anc));

  out.push_back(detail::psi0_independence(pb));
  out.push_back(detail::post_state_overlaps(pb));
  out.push_back(detail::psi_orthonormality(pb));
  out.push_back(bracket_closed_form(pb, opt));

  const auto mb = pb.measurement_basis();
  Report defining{"bracket_orthogonality", "<[k_0..k_p]|m_k' anc m_k'> = 0 for k' != k_m"};
  for (const auto& [label, s] : mb) {
    auto r = detail::bracket_defining_property(pb, label, s);
    defining.checked += r.checked;
    for (auto& v : r.violations) defining.violations.push_back(std::move(v));
  }
  out.push_back(std::move(defining));
  out.push_back(detail::measurement_basis_orthonormality(mb));
  out.push_back(detail::resolution_of_identity(p, mb));
  out.push_back(detail::retrodiction_soundness(pb, mb));
  return out;
}

inline bool all_passed(const std::vector<Report>& reports) {
  for (const auto& r : reports) {
    if (!r.passed()) return false;
  }
  return true;
}

}  // namespace meanking
