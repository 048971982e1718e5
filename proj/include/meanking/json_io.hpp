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

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "meanking/diagnose.hpp"
#include "meanking/mub.hpp"
#include "meanking/simulation.hpp"
#include "meanking/tomography.hpp"

namespace meanking::json_io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Coefficients that fit in 64 bits are JSON integers; larger ones are decimal strings.
inline json big_to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return x.convert_to<std::int64_t>();
  }
  return x.str();
}

inline BigInt big_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument("coefficient must be an integer or a decimal string");
}

/// {"scale_pow": t, "coeffs": [c_0, ..., c_{N-1}]} in canonical form.
inline json to_json(const Amplitude& a) {
  const Amplitude c = a.canonical();
  json coeffs = json::array();
  for (const auto& x : c.value().coeffs()) coeffs.push_back(big_to_json(x));
  return {{"scale_pow", c.scale_pow()}, {"coeffs", std::move(coeffs)}};
}

inline Amplitude amplitude_from_json(int p, const json& j) {
  std::vector<BigInt> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(big_from_json(c));
  return Amplitude(CyclotomicInt::from_coeffs(p, std::move(coeffs)), j.at("scale_pow").get<int>());
}

inline json to_json(const std::complex<double>& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

template <Backend B>
json to_json(const MubFamily<B>& fam) {
  json bases = json::array();
  for (const auto& basis : fam.bases) {
    json kets = json::array();
    for (const auto& ket : basis) {
      json comps = json::array();
      for (const auto& x : ket) comps.push_back(to_json(x));
      kets.push_back(std::move(comps));
    }
    bases.push_back(std::move(kets));
  }
  return {{"schema_version", kSchemaVersion},
          {"p", fam.p},
          {"side", to_string(fam.side)},
          {"backend", std::string(B::name)},
          {"bases", std::move(bases)}};
}

inline json to_json(const Report& r, std::size_t max_violations = 32) {
  json v = json::array();
  for (std::size_t i = 0; i < r.violations.size() && i < max_violations; ++i) {
    const auto& x = r.violations[i];
    v.push_back({{"where", x.where}, {"what", x.what}, {"observed", to_json(x.observed)}});
  }
  return {{"name", r.name},
          {"relation", r.relation},
          {"checked", r.checked},
          {"passed", r.passed()},
          {"violation_count", r.violations.size()},
          {"violations", std::move(v)}};
}

inline json to_json(const RoundRecord& r) {
  return {{"index", r.index},
          {"seed", r.seed},
          {"king_choice", r.king_choice},
          {"king_outcome", r.king_outcome},
          {"physicist_outcome", r.physicist_outcome.k},
          {"announced_answer", r.announced_answer},
          {"correct", r.correct}};
}

/// Histogram keys are "m,k"; each row maps measurement_index -> count.
inline json to_json(const SimulationSummary& s, bool include_records) {
  json hist = json::object();
  for (const auto& [key, row] : s.histogram) {
    json r = json::object();
    for (const auto& [n, c] : row) r[std::to_string(n)] = c;
    hist[std::to_string(key.first) + "," + std::to_string(key.second)] = std::move(r);
  }
  json out = {{"schema_version", kSchemaVersion},
              {"p", s.p},
              {"rounds", s.rounds},
              {"successes", s.successes},
              {"success_rate", s.success_rate()},
              {"seed", s.seed},
              {"prng", kPrngName},
              {"king_strategy", s.strategy},
              {"backend", s.backend},
              {"histogram", std::move(hist)}};
  if (include_records) {
    json recs = json::array();
    for (const auto& r : s.records) recs.push_back(to_json(r));
    out["records"] = std::move(recs);
  }
  return out;
}

inline json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(std::complex<double>(m(i, j))));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const ProbabilityTable& t) {
  json rows = json::array();
  for (int m = 0; m <= t.p; ++m) {
    json row = json::array();
    for (int k = 0; k < t.p; ++k) row.push_back(t.w(m, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const DiagnosticReport& d) {
  json checks = json::array();
  for (const auto& c : d.checks) checks.push_back(to_json(c));
  json unreachable = json::array();
  for (const auto& [a, b] : d.unreachable) unreachable.push_back({a, b});
  return {{"schema_version", kSchemaVersion},
          {"n", d.n},
          {"first_failure", d.first_failure},
          {"unreachable_clock_shift_pairs", std::move(unreachable)},
          {"checks", std::move(checks)}};
}

}  // namespace meanking::json_io
