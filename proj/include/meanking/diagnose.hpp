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

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meanking/mub.hpp"
#include "meanking/protocol.hpp"

namespace meanking {

/// Largest composite dimension accepted by diagnose_composite.
inline constexpr int kDiagnoseCeiling = 16;

struct DiagnosticReport {
  int n = 0;
  std::vector<Report> checks;
  // Clock-shift exponent pairs (a, b) that no power U_m^r is proportional to.
  std::vector<std::pair<int, int>> unreachable;
  std::string first_failure;

  bool found_violation() const { return !first_failure.empty(); }
};

namespace detail {

// Which U_0^a U_p^b (up to phase) each U_m^r lands on; pairs never hit are reported.
inline Report operator_reach(int n, std::vector<std::pair<int, int>>& unreachable) {
  using B = FloatBackend;
  Report rep{"operator_reach", "the powers U_m^r cover every U_0^a U_p^b, (a,b) != (0,0)"};
  auto [u0, up] = weyl_pair<B>(n);
  std::vector<std::vector<Matrix<B>>> weyl(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) weyl[static_cast<std::size_t>(a)].push_back((u0.pow(a) * up.pow(b)).adjoint());
  }
  std::set<std::pair<int, int>> hit;
  const auto pw = observable_powers<B>(n);
  for (int m = 0; m <= n; ++m) {
    for (int r = 1; r < n; ++r) {
      const auto& op = pw[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)];
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const auto t = trace_of_product(weyl[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], op);
          if (std::abs(std::abs(t) - n) <= B::tolerance) hit.insert({a, b});
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == 0 && b == 0) continue;
      ++rep.checked;
      if (!hit.count({a, b})) {
        unreachable.emplace_back(a, b);
        rep.violations.push_back({{a, b}, "U_0^a U_p^b is not proportional to any U_m^r", {}});
      }
    }
  }
  return rep;
}

}  // namespace detail

/// Runs the prime-dimension construction for a composite n with primality enforcement
/// bypassed (float backend) and records which invariants break, with witnesses.
inline DiagnosticReport diagnose_composite(int n) {
  if (n < 4 || n > kDiagnoseCeiling) {
    throw std::invalid_argument("diagnose: n must be a composite in 4.." + std::to_string(kDiagnoseCeiling));
  }
  if (is_prime(n)) {
    throw std::invalid_argument(std::to_string(n) +
                                " is prime; the construction is valid there, use verify instead");
  }
  using B = FloatBackend;
  DiagnosticReport d;
  d.n = n;
  d.checks.push_back(detail::period<B>(n));
  d.checks.push_back(detail::weyl_commutation<B>(n));
  d.checks.push_back(detail::operator_reach(n, d.unreachable));
  d.checks.push_back(detail::operator_basis<B>(n));
  d.checks.push_back(detail::trace_table<B>(n));
  const auto obj = detail::mub_family<B>(n, Side::object);
  d.checks.push_back(detail::unbiasedness(obj));
  d.checks.push_back(detail::eigenbases(obj));
  const ProtocolBasis<B> pb(n);
  d.checks.push_back(detail::psi_orthonormality(pb));
  const auto mb = pb.measurement_basis();
  d.checks.push_back(detail::measurement_basis_orthonormality(mb));
  d.checks.push_back(detail::retrodiction_soundness(pb, mb));
  for (const auto& c : d.checks) {
    if (!c.passed()) {
      d.first_failure = c.name;
      break;
    }
  }
  return d;
}

}  // namespace meanking
