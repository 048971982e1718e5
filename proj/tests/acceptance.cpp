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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "meanking/cli.hpp"
#include "meanking/mub.hpp"
#include "meanking/protocol.hpp"
#include "meanking/tomography.hpp"
#include "meanking/verification.hpp"

namespace {

using namespace meanking;
using Exact = ExactBackend;
using Float = FloatBackend;
using Clock = std::chrono::steady_clock;

const std::vector<int> kStructurePrimes{2, 3, 5, 7, 11, 13};
const std::vector<int> kProtocolPrimes{2, 3, 5, 7};

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "first failure: ";
      else detail << "; ";
      detail << what;
      ok = false;
    }
  }
};

int failures = 0;

template <class F>
void criterion(const std::string& id, const std::string& title, F&& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.ok) ++failures;
  std::string detail = o.detail.str();
  while (!detail.empty() && detail.back() == ' ') detail.pop_back();
  char time_buf[32];
  std::snprintf(time_buf, sizeof time_buf, "%.2fs", secs);
  std::cout << id << " " << (o.ok ? "PASS" : "FAIL") << "  " << title << "  [" << detail << "] "
            << time_buf << std::endl;
}

std::string tag(int p) { return "p=" + std::to_string(p); }

std::pair<int, std::string> run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = meanking::cli::run(args, out, err);
  return {code, out.str()};
}

}  // namespace

int main() {
  criterion("AC1", "unbiasedness, exact (zero tolerance) and float (<= 1e-10), p in {2,3,5,7,11,13}", [](Outcome& o) {
    std::size_t pairs = 0;
    for (int p : kStructurePrimes) {
      const auto ex = verify_unbiasedness(build_mub_family<Exact>(PrimeDim(p)));
      const auto fl = verify_unbiasedness(build_mub_family<Float>(PrimeDim(p)));
      o.require(ex.passed(), "exact " + tag(p));
      o.require(fl.passed(), "float " + tag(p));
      pairs += ex.checked + fl.checked;
    }
    o.detail << pairs << " overlap pairs";
  });

  criterion("AC2", "period p, Weyl commutation and trace table hold exactly, p in {2,3,5,7,11,13}", [](Outcome& o) {
    std::size_t checks = 0;
    for (int p : kStructurePrimes) {
      for (const auto& r : {detail::period<Exact>(p), detail::weyl_commutation<Exact>(p), detail::trace_table<Exact>(p)}) {
        o.require(r.passed(), r.name + " " + tag(p));
        checks += r.checked;
      }
    }
    o.detail << checks << " exact identities";
  });

  criterion("AC3", "Psi basis Gram matrix is the identity exactly, p in {2,3,5,7}", [](Outcome& o) {
    for (int p : kProtocolPrimes) {
      const auto r = detail::psi_orthonormality(make_protocol_basis<Exact>(PrimeDim(p)));
      o.require(r.passed() && r.checked == static_cast<std::size_t>(p * p * (p * p + 1) / 2), tag(p));
    }
    o.detail << "p^2 x p^2 Gram, exact";
  });

  criterion("AC4", "bracket overlap closed form: exhaustive p in {2,3}, 10^4 random pairs p in {5,7}", [](Outcome& o) {
    for (int p : {2, 3, 5, 7}) {
      VerifyOptions opt;
      opt.random_bracket_pairs = 10000;
      opt.seed = kDefaultSeed;
      const auto r = bracket_closed_form(make_protocol_basis<Exact>(PrimeDim(p)), opt);
      const std::size_t labels = [&] {
        std::size_t n = 1;
        for (int m = 0; m <= p; ++m) n *= static_cast<std::size_t>(p);
        return n;
      }();
      const std::size_t expected = p <= 3 ? labels * labels : 10000;
      o.require(r.passed(), tag(p));
      o.require(r.checked == expected, "pair count " + tag(p));
      o.detail << tag(p) << ":" << r.checked << " ";
    }
  });

  criterion("AC5", "measurement basis orthonormal and complete exactly, p in {2,3,5,7}", [](Outcome& o) {
    for (int p : kProtocolPrimes) {
      const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
      const auto mb = pb.measurement_basis();
      o.require(mb.size() == static_cast<std::size_t>(p * p), "size " + tag(p));
      o.require(detail::measurement_basis_orthonormality(mb).passed(), "orthonormality " + tag(p));
      o.require(detail::resolution_of_identity(p, mb).passed(), "resolution " + tag(p));
    }
    o.detail << "p^2 states each";
  });

  criterion("AC6", "certainty: exhaustive exact soundness p in {2,3,5}; simulate p=3,7 x 10^4 rounds at rate 1.0",
            [](Outcome& o) {
              for (int p : {2, 3, 5}) {
                const auto pb = make_protocol_basis<Exact>(PrimeDim(p));
                o.require(detail::retrodiction_soundness(pb, pb.measurement_basis()).passed(), "static " + tag(p));
              }
              for (int p : {3, 7}) {
                const auto [code, out] = run_cli({"simulate", "--p", std::to_string(p), "--rounds", "10000", "--json"});
                const auto j = nlohmann::json::parse(out);
                const double rate = j.at("success_rate").get<double>();
                o.require(code == 0 && rate == 1.0 && j.at("rounds").get<int>() == 10000, "simulate " + tag(p));
                o.detail << tag(p) << " success_rate=" << rate << " ";
              }
            });

  criterion("AC7", "tomography round trip <= 1e-9 (Frobenius), 100 random states per p in {2,3,5,7}", [](Outcome& o) {
    double worst = 0;
    for (int p : kProtocolPrimes) {
      const auto fam = build_mub_family<Float>(PrimeDim(p));
      for (std::uint64_t s = 0; s < 100; ++s) {
        const auto rho = random_density(PrimeDim(p), s);
        const double err = frobenius_distance(rho, reconstruct(probabilities_of(rho, fam), fam));
        worst = std::max(worst, err);
        o.require(err <= 1e-9, tag(p) + " seed " + std::to_string(s));
      }
    }
    o.detail << "worst error " << worst;
  });

  criterion("AC8", "composite p=6: diagnose yields a violated-invariant witness, verify exits 2", [](Outcome& o) {
    const auto [dcode, dout] = run_cli({"diagnose", "--p", "6", "--json"});
    const auto j = nlohmann::json::parse(dout);
    std::size_t witnesses = 0;
    for (const auto& c : j.at("checks")) witnesses += c.at("violation_count").get<std::size_t>();
    o.require(dcode == 0 && witnesses > 0, "diagnose");
    const auto [vcode, vout] = run_cli({"verify", "--p", "6"});
    o.require(vcode == 2, "verify exit code " + std::to_string(vcode));
    o.detail << "first failure " << j.at("first_failure").get<std::string>() << ", " << witnesses << " witnesses";
  });

  criterion("AC9", "float backend re-evaluates every exact identity within 1e-10 and matches exact values",
            [](Outcome& o) {
              double worst = 0;
              for (int p : kStructurePrimes) {
                for (const auto& r : run_verification<Float>(PrimeDim(p))) o.require(r.passed(), r.name + " " + tag(p));
                const auto ex = build_mub_family<Exact>(PrimeDim(p));
                const auto fl = build_mub_family<Float>(PrimeDim(p));
                for (int m = 0; m <= p; ++m) {
                  for (int k = 1; k <= p; ++k) {
                    for (int j = 0; j < p; ++j) {
                      const auto d = std::abs(ex.ket(m, k)[static_cast<std::size_t>(j)].to_complex() -
                                              fl.ket(m, k)[static_cast<std::size_t>(j)]);
                      worst = std::max(worst, d);
                    }
                  }
                }
              }
              for (int p : kProtocolPrimes) {
                const auto pe = make_protocol_basis<Exact>(PrimeDim(p));
                const auto pf = make_protocol_basis<Float>(PrimeDim(p));
                const auto me = pe.measurement_basis();
                const auto mf = pf.measurement_basis();
                for (std::size_t i = 0; i < me.size(); ++i) {
                  for (std::size_t a = 0; a < me[i].second.amps.size(); ++a) {
                    worst = std::max(worst, std::abs(me[i].second.amps[a].to_complex() - mf[i].second.amps[a]));
                  }
                }
              }
              o.require(worst <= 1e-10, "value mismatch");
              o.detail << "max |exact - float| = " << worst;
            });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
