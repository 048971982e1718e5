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

/**
 * @file cli.hpp
 * @brief The `meanking` command line: verify, simulate, bases, tomography, diagnose.
 *
 * Exit codes: 0 success, 1 invariant or protocol failure, 2 invalid input.
 * All randomness comes from --seed (default kDefaultSeed); identical arguments give
 * byte-identical output.
 */

#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meanking/diagnose.hpp"
#include "meanking/json_io.hpp"
#include "meanking/mub.hpp"
#include "meanking/simulation.hpp"
#include "meanking/tomography.hpp"
#include "meanking/verification.hpp"

namespace meanking::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

/// Largest p for exact verification (about 1.5 min at 19); every other command accepts up to kFloatCeiling.
inline constexpr int kExactVerifyCeiling = 19;
inline constexpr int kFloatCeiling = 31;

struct RunConfig {
  std::string subcommand;
  int p = 0;
  std::string backend = "exact";
  std::string side = "object";
  std::uint64_t rounds = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string strategy = "uniform";
  std::string format = "text";
  std::string out_path;
  bool json_flag = false;
  bool records = false;
  std::size_t bracket_pairs = 2000;
  bool color = false;

  bool json() const { return json_flag || format == "json"; }
};

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string paint(bool color, bool ok, const std::string& s) {
  if (!color) return s;
  return (ok ? "\033[32m" : "\033[31m") + s + "\033[0m";
}

inline PrimeDim require_prime(const RunConfig& cfg, int ceiling) {
  if (cfg.p < 2) throw usage_error("--p must be a prime >= 2");
  if (!is_prime(cfg.p)) {
    throw usage_error(std::to_string(cfg.p) +
                      " is composite; the construction needs a prime. Run `diagnose --p " +
                      std::to_string(cfg.p) + "` to see what breaks.");
  }
  if (cfg.p > ceiling) {
    throw usage_error("--p " + std::to_string(cfg.p) + " exceeds the supported ceiling " +
                      std::to_string(ceiling) + " for this command/backend");
  }
  return PrimeDim(cfg.p);
}

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw usage_error("cannot open output file " + cfg.out_path);
  f << text;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline std::string format_complex(const std::complex<double>& z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const bool exact = cfg.backend == "exact";
  const auto dim = detail::require_prime(cfg, exact ? kExactVerifyCeiling : kFloatCeiling);
  VerifyOptions opt;
  opt.random_bracket_pairs = cfg.bracket_pairs;
  opt.seed = cfg.seed;
  const auto reports = exact ? run_verification<ExactBackend>(dim, opt) : run_verification<FloatBackend>(dim, opt);
  const bool ok = all_passed(reports);
  if (cfg.json()) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : reports) checks.push_back(json_io::to_json(r));
    detail::emit(cfg, out,
                 detail::dump({{"schema_version", json_io::kSchemaVersion},
                               {"p", cfg.p},
                               {"backend", cfg.backend},
                               {"passed", ok},
                               {"checks", std::move(checks)}}));
  } else {
    std::ostringstream os;
    os << "verify p=" << cfg.p << " backend=" << cfg.backend << "\n";
    for (const auto& r : reports) {
      os << detail::paint(cfg.color, r.passed(), r.passed() ? "PASS" : "FAIL") << "  " << std::left
         << std::setw(30) << r.name << " " << std::setw(8) << r.checked << " " << r.relation << "\n";
      for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
        os << "      violation " << r.violations[i].what << " at";
        for (int w : r.violations[i].where) os << " " << w;
        os << "\n";
      }
    }
    os << (ok ? "all identities hold\n" : "some identities FAILED\n");
    detail::emit(cfg, out, os.str());
  }
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto dim = detail::require_prime(cfg, kFloatCeiling);
  if (cfg.rounds < 1) throw usage_error("--rounds must be >= 1");
  KingStrategy strategy;
  try {
    strategy = KingStrategy::parse(cfg.strategy);
  } catch (const std::invalid_argument& e) {
    throw usage_error(e.what());
  }
  if (strategy.kind == KingStrategy::Kind::fixed && (strategy.m < 0 || strategy.m > cfg.p)) {
    throw usage_error("fixed king choice must be in 0.." + std::to_string(cfg.p));
  }
  const auto summary = simulate(dim, cfg.rounds, strategy, cfg.seed, cfg.records);
  const bool ok = summary.successes == summary.rounds;
  if (cfg.json()) {
    detail::emit(cfg, out, detail::dump(json_io::to_json(summary, cfg.records)));
  } else {
    std::ostringstream os;
    os << "p=" << summary.p << " rounds=" << summary.rounds << " successes=" << summary.successes
       << " success_rate=" << summary.success_rate() << " seed=" << summary.seed
       << " strategy=" << summary.strategy << " backend=" << summary.backend << "\n";
    for (const auto& r : summary.records) {
      os << "round " << r.index << ": king measured U_" << r.king_choice << " -> k=" << r.king_outcome
         << ", physicist found " << r.physicist_outcome.str() << ", announced " << r.announced_answer
         << (r.correct ? "" : "  WRONG") << "\n";
    }
    detail::emit(cfg, out, os.str());
  }
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_bases(const RunConfig& cfg, std::ostream& out) {
  const bool exact = cfg.backend == "exact";
  const auto dim = detail::require_prime(cfg, kFloatCeiling);
  const Side side = cfg.side == "ancilla" ? Side::ancilla : Side::object;
  if (cfg.json()) {
    const auto j = exact ? json_io::to_json(build_mub_family<ExactBackend>(dim, side))
                         : json_io::to_json(build_mub_family<FloatBackend>(dim, side));
    detail::emit(cfg, out, detail::dump(j));
    return kExitOk;
  }
  const auto fam = build_mub_family<FloatBackend>(dim, side);
  std::ostringstream os;
  os << "p=" << fam.p << " side=" << to_string(side) << " (components <0_j|m_k>, j = 1..p)\n";
  for (int m = 0; m <= fam.p; ++m) {
    for (int k = 1; k <= fam.p; ++k) {
      os << "m=" << m << " k=" << k << ":";
      for (const auto& z : fam.ket(m, k)) os << "  " << detail::format_complex(z);
      os << "\n";
    }
  }
  detail::emit(cfg, out, os.str());
  return kExitOk;
}

inline int cmd_tomography(const RunConfig& cfg, std::ostream& out) {
  constexpr double kRoundTripTolerance = 1e-9;
  const auto dim = detail::require_prime(cfg, kFloatCeiling);
  const auto fam = build_mub_family<FloatBackend>(dim, Side::object);
  const auto rho = random_density(dim, cfg.seed);
  const auto table = probabilities_of(rho, fam);
  const auto rec = reconstruct(table, fam);
  const double err = frobenius_distance(rho, rec);
  const bool ok = err <= kRoundTripTolerance;
  if (cfg.json()) {
    detail::emit(cfg, out,
                 detail::dump({{"schema_version", json_io::kSchemaVersion},
                               {"p", cfg.p},
                               {"seed", cfg.seed},
                               {"rho", json_io::to_json(rho.rho)},
                               {"table", json_io::to_json(table)},
                               {"reconstruction", json_io::to_json(rec.rho)},
                               {"frobenius_error", err}}));
  } else {
    std::ostringstream os;
    os << "p=" << cfg.p << " seed=" << cfg.seed << "\nprobability table (rows m = 0..p):\n";
    os << std::fixed << std::setprecision(6);
    for (int m = 0; m <= cfg.p; ++m) {
      os << "  m=" << m << ":";
      for (int k = 1; k <= cfg.p; ++k) os << " " << table(m, k);
      os << "\n";
    }
    os << std::scientific << std::setprecision(3) << "frobenius_error=" << err << " "
       << detail::paint(cfg.color, ok, ok ? "PASS" : "FAIL") << "\n";
    detail::emit(cfg, out, os.str());
  }
  return ok ? kExitOk : kExitFailure;
}

inline int cmd_diagnose(const RunConfig& cfg, std::ostream& out) {
  if (cfg.p >= 2 && is_prime(cfg.p)) {
    throw usage_error(std::to_string(cfg.p) + " is prime: nothing to diagnose, run `verify --p " +
                      std::to_string(cfg.p) + "`");
  }
  if (cfg.p < 4 || cfg.p > kDiagnoseCeiling) {
    throw usage_error("diagnose needs a composite --p in 4.." + std::to_string(kDiagnoseCeiling));
  }
  const auto d = diagnose_composite(cfg.p);
  if (cfg.json()) {
    detail::emit(cfg, out, detail::dump(json_io::to_json(d)));
  } else {
    std::ostringstream os;
    os << "diagnose n=" << d.n << " (composite; prime-only construction run anyway)\n";
    for (const auto& c : d.checks) {
      os << detail::paint(cfg.color, c.passed(), c.passed() ? "holds   " : "VIOLATED") << "  " << std::left
         << std::setw(26) << c.name << " " << c.violations.size() << " of " << c.checked << "\n";
      for (std::size_t i = 0; i < c.violations.size() && i < 3; ++i) {
        os << "      witness: " << c.violations[i].what << " at";
        for (int w : c.violations[i].where) os << " " << w;
        os << "\n";
      }
    }
    os << "first failure: " << (d.found_violation() ? d.first_failure : "none") << "\n";
    detail::emit(cfg, out, os.str());
  }
  return d.found_violation() ? kExitOk : kExitFailure;
}

/// Parses `args` (without the program name) and runs the subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               bool color = false) {
  RunConfig cfg;
  cfg.color = color;
  CLI::App app{"Complementary observables and the mean king's retrodiction protocol for prime p", "meanking"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub, bool p_required = true) {
    auto* opt = sub->add_option("--p", cfg.p, "dimension (prime, or composite for diagnose)");
    if (p_required) opt->required();
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--json", cfg.json_flag, "shorthand for --format json");
    sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
  };
  auto add_backend = [&cfg](CLI::App* sub) {
    sub->add_option("--backend", cfg.backend, "exact (cyclotomic) or float")
        ->check(CLI::IsMember({"exact", "float"}));
  };

  auto* verify = app.add_subcommand("verify", "check every identity exactly (or in floats)");
  add_common(verify);
  add_backend(verify);
  verify->add_option("--bracket-pairs", cfg.bracket_pairs, "random bracket-state pairs for p > 3");
  verify->add_option("--seed", cfg.seed, "seed for the random bracket pairs");

  auto* sim = app.add_subcommand("simulate", "play rounds of the retrodiction game");
  add_common(sim);
  sim->add_option("--rounds", cfg.rounds, "number of rounds");
  sim->add_option("--seed", cfg.seed, "master seed (u64)");
  sim->add_option("--king-strategy", cfg.strategy, "uniform | fixed:<m>");
  sim->add_flag("--records", cfg.records, "include every round record");

  auto* bases = app.add_subcommand("bases", "print the complementary bases");
  add_common(bases);
  add_backend(bases);
  bases->add_option("--side", cfg.side, "object or ancilla")->check(CLI::IsMember({"object", "ancilla"}));

  auto* tomo = app.add_subcommand("tomography", "probabilities of a random state and its reconstruction");
  add_common(tomo);
  tomo->add_option("--seed", cfg.seed, "seed for the random density matrix");

  auto* diag = app.add_subcommand("diagnose", "run the construction for a composite dimension");
  add_common(diag);

  std::vector<const char*> argv{"meanking"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (verify->parsed()) return cmd_verify(cfg, out);
    if (sim->parsed()) return cmd_simulate(cfg, out);
    if (bases->parsed()) return cmd_bases(cfg, out);
    if (tomo->parsed()) return cmd_tomography(cfg, out);
    if (diag->parsed()) return cmd_diagnose(cfg, out);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace meanking::cli
