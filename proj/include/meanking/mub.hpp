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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meanking/backend.hpp"
#include "meanking/linalg.hpp"

namespace meanking {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

class not_prime : public std::invalid_argument {
 public:
  explicit not_prime(long long n)
      : std::invalid_argument(std::to_string(n) + " is not prime") {}
};

/// A validated prime dimension.
class PrimeDim {
 public:
  explicit PrimeDim(int p) : p_(p) {
    if (!is_prime(p)) throw not_prime(p);
  }
  int value() const { return p_; }
  operator int() const { return p_; }

 private:
  int p_;
};

enum class Side { object, ancilla };

inline const char* to_string(Side s) { return s == Side::object ? "object" : "ancilla"; }

/// One violated instance of an identity. `where` holds the external (1-based k) labels.
struct Violation {
  std::vector<int> where;
  std::string what;
  std::complex<double> observed{};
};

struct Report {
  Report() = default;
  Report(std::string n, std::string rel) : name(std::move(n)), relation(std::move(rel)) {}

  std::string name;
  std::string relation;
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

/// The p+1 bases {|m_k>}; bases[m][k-1] is the ket of label (m, k) in the computational frame.
template <Backend B>
struct MubFamily {
  int p = 0;
  Side side = Side::object;
  std::vector<std::vector<Ket<B>>> bases;

  const Ket<B>& ket(int m, int k) const {
    return bases.at(static_cast<std::size_t>(m)).at(static_cast<std::size_t>(k - 1));
  }
  Ket<B>& ket(int m, int k) {
    return bases.at(static_cast<std::size_t>(m)).at(static_cast<std::size_t>(k - 1));
  }
};

template <Backend B>
struct WeylPair {
  Matrix<B> clock;  // U_0
  Matrix<B> shift;  // U_p
};

namespace detail {

inline long long triangular(long long j) { return j * (j - 1) / 2; }

// Exponent (in units of zeta) of the extra phase on U_m. Only p = 2, m = 1 carries one:
// there U_0 U_p squares to -1, and -i U_0 U_p is the period-2 observable.
inline int observable_phase(int n, int m) { return (n == 2 && m == 1) ? -1 : 0; }

inline void check_label(int n, int m) {
  if (m < 0 || m > n) {
    throw std::out_of_range("observable label m=" + std::to_string(m) + " outside 0.." +
                            std::to_string(n));
  }
}

inline void check_k(int n, int k) {
  if (k < 1 || k > n) {
    throw std::out_of_range("outcome label k=" + std::to_string(k) + " outside 1.." +
                            std::to_string(n));
  }
}

template <Backend B>
WeylPair<B> weyl_pair(int n) {
  Matrix<B> u0(n, n), up(n, n);
  for (int j = 1; j <= n; ++j) u0(j - 1, j - 1) = B::q_power(n, j);
  // <0_k| U_p = <0_{k+1}|
  for (int i = 0; i < n; ++i) up(i, (i + 1) % n) = B::one(n);
  return {std::move(u0), std::move(up)};
}

template <Backend B>
Matrix<B> observable(int n, int m) {
  check_label(n, m);
  auto [u0, up] = weyl_pair<B>(n);
  if (m == 0) return u0;
  if (m == n) return up;
  return B::zeta_power(n, observable_phase(n, m)) * (u0.pow(m) * up);
}

// Ancilla operators with the roles of clock and shift interchanged: U_p shifts the
// computational kets forward, U_0 is the same clock, U_m = U_p U_0^m.
template <Backend B>
Matrix<B> ancilla_observable(int n, int m) {
  check_label(n, m);
  auto [u0, up] = weyl_pair<B>(n);
  Matrix<B> shift(n, n);
  for (int j = 0; j < n; ++j) shift((j + 1) % n, j) = B::one(n);
  if (m == 0) return u0;
  if (m == n) return shift;
  return B::zeta_power(n, observable_phase(n, m)) * (shift * u0.pow(m));
}

// Exponent of zeta in <0_j|m_k> * sqrt(n), m >= 1, object side.
inline long long ket_exponent(int n, int m, int j, int k) {
  const long long per_q = ring_order(n) / n;
  return per_q * (static_cast<long long>(j) * k - triangular(j) * m) -
         static_cast<long long>(observable_phase(n, m)) * (j - 1);
}

template <Backend B>
Ket<B> mub_ket(int n, Side side, int m, int k) {
  check_label(n, m);
  check_k(n, k);
  Ket<B> v(static_cast<std::size_t>(n), B::zero(n));
  if (m == 0) {
    v[static_cast<std::size_t>(k - 1)] = B::one(n);
    return v;
  }
  for (int j = 1; j <= n; ++j) {
    auto c = B::inv_sqrt_p(n, 1) * B::zeta_power(n, ket_exponent(n, m, j, k));
    v[static_cast<std::size_t>(j - 1)] = side == Side::object ? c : B::conj(c);
  }
  return v;
}

template <Backend B>
MubFamily<B> mub_family(int n, Side side) {
  MubFamily<B> fam;
  fam.p = n;
  fam.side = side;
  fam.bases.resize(static_cast<std::size_t>(n + 1));
  for (int m = 0; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) fam.bases[static_cast<std::size_t>(m)].push_back(mub_ket<B>(n, side, m, k));
  }
  return fam;
}

template <Backend B>
Matrix<B> side_observable(int n, Side side, int m) {
  return side == Side::object ? observable<B>(n, m) : ancilla_observable<B>(n, m);
}

template <Backend B>
Report period(int n) {
  Report rep{"period", "U_m^p = 1 and U_m^r != 1 for 0 < r < p"};
  const auto id = Matrix<B>::identity(n, n);
  for (int m = 0; m <= n; ++m) {
    const auto u = observable<B>(n, m);
    auto acc = id;
    for (int r = 1; r <= n; ++r) {
      acc = acc * u;
      ++rep.checked;
      const bool is_id = equal(acc, id);
      if (r < n && is_id) {
        rep.violations.push_back({{m, r}, "U_m^r is the identity before r = p", {}});
      } else if (r == n && !is_id) {
        rep.violations.push_back(
            {{m, r}, "U_m^p is not the identity", B::to_complex(acc(0, 0))});
      }
    }
  }
  return rep;
}

template <Backend B>
Report weyl_commutation(int n) {
  Report rep{"weyl_commutation", "U_0 U_p = q^{-1} U_p U_0"};
  auto [u0, up] = weyl_pair<B>(n);
  const auto diff = u0 * up - B::q_power(n, -1) * (up * u0);
  ++rep.checked;
  if (!diff.is_zero()) rep.violations.push_back({{}, "commutator residue is non-zero", {}});
  return rep;
}

template <Backend B>
std::vector<std::vector<Matrix<B>>> observable_powers(int n) {
  std::vector<std::vector<Matrix<B>>> pw(static_cast<std::size_t>(n + 1));
  for (int m = 0; m <= n; ++m) {
    const auto u = observable<B>(n, m);
    auto acc = Matrix<B>::identity(n, n);
    for (int r = 0; r < n; ++r) {
      pw[static_cast<std::size_t>(m)].push_back(acc);
      acc = acc * u;
    }
  }
  return pw;
}

template <Backend B>
Report trace_table(int n) {
  Report rep{"trace_table",
             "tr(U_m^r U_m'^s)/p = d_mm' d(r,-s) + (1 - d_mm') d(r,0) d(s,0)"};
  const auto pw = observable_powers<B>(n);
  for (int m = 0; m <= n; ++m) {
    for (int m2 = 0; m2 <= n; ++m2) {
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          const bool expect_one =
              m == m2 ? (r + s) % n == 0 : (r == 0 && s == 0);
          const auto t = trace_of_product(pw[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)],
                                          pw[static_cast<std::size_t>(m2)][static_cast<std::size_t>(s)]);
          ++rep.checked;
          if (!B::equal(t, B::integer(n, expect_one ? n : 0))) {
            rep.violations.push_back({{m, m2, r, s},
                                      expect_one ? "expected tr/p = 1" : "expected vanishing trace",
                                      B::to_complex(t) / static_cast<double>(n)});
          }
        }
      }
    }
  }
  return rep;
}

// Gram matrix of a list of operators under <A,B> = tr(A^dagger B), checked against p * identity.
template <Backend B>
void check_gram(int n, const std::vector<Matrix<B>>& ops, const std::vector<std::vector<int>>& tags,
                const char* label, Report& rep) {
  std::vector<Matrix<B>> adj;
  adj.reserve(ops.size());
  for (const auto& o : ops) adj.push_back(o.adjoint());
  for (std::size_t a = 0; a < ops.size(); ++a) {
    for (std::size_t b = a; b < ops.size(); ++b) {
      const auto t = trace_of_product(adj[a], ops[b]);
      ++rep.checked;
      if (!B::equal(t, B::integer(n, a == b ? n : 0))) {
        std::vector<int> where = tags[a];
        where.insert(where.end(), tags[b].begin(), tags[b].end());
        rep.violations.push_back({std::move(where), label, B::to_complex(t)});
      }
    }
  }
}

template <Backend B>
Report operator_basis(int n) {
  Report rep{"operator_basis",
             "{U_0^r U_p^s} and {1} + {U_m^r, 0<r<p} are trace-orthogonal bases (Gram = p 1)"};
  auto [u0, up] = weyl_pair<B>(n);
  std::vector<Matrix<B>> weyl;
  std::vector<std::vector<int>> weyl_tags;
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      weyl.push_back(u0.pow(r) * up.pow(s));
      weyl_tags.push_back({r, s});
    }
  }
  check_gram<B>(n, weyl, weyl_tags, "clock-shift products not orthogonal", rep);

  std::vector<Matrix<B>> powers{Matrix<B>::identity(n, n)};
  std::vector<std::vector<int>> power_tags{{-1, 0}};
  const auto pw = observable_powers<B>(n);
  for (int m = 0; m <= n; ++m) {
    for (int r = 1; r < n; ++r) {
      powers.push_back(pw[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)]);
      power_tags.push_back({m, r});
    }
  }
  check_gram<B>(n, powers, power_tags, "observable powers not orthogonal", rep);
  return rep;
}

template <Backend B>
Report unbiasedness(const MubFamily<B>& fam) {
  const int n = fam.p;
  Report rep{"unbiasedness", "|<m_k|m'_k'>|^2 = d_kk' (m = m'), 1/p (m != m')"};
  for (int m = 0; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) {
      for (int m2 = m; m2 <= n; ++m2) {
        for (int k2 = (m2 == m ? k : 1); k2 <= n; ++k2) {
          const auto z = inner<B>(n, fam.ket(m, k), fam.ket(m2, k2));
          const auto n2 = z * B::conj(z);
          const Rational expected = m == m2 ? Rational(k == k2 ? 1 : 0) : Rational(1, n);
          ++rep.checked;
          if (!B::equals_rational(n2, expected)) {
            rep.violations.push_back({{m, k, m2, k2}, "squared overlap mismatch", B::to_complex(n2)});
          }
        }
      }
    }
  }
  return rep;
}

template <Backend B>
Report eigenbases(const MubFamily<B>& fam) {
  const int n = fam.p;
  Report rep{"eigenbases", "U_m |m_k> = q^k |m_k>"};
  for (int m = 0; m <= n; ++m) {
    const auto u = side_observable<B>(n, fam.side, m);
    for (int k = 1; k <= n; ++k) {
      const auto& v = fam.ket(m, k);
      ++rep.checked;
      if (!kets_equal<B>(u.apply(v), scaled<B>(B::q_power(n, k), v))) {
        rep.violations.push_back({{m, k}, "not an eigenket with eigenvalue q^k", {}});
      }
    }
  }
  return rep;
}

template <Backend B>
Matrix<B> projector_power_sum(const MubFamily<B>& fam, int m, int k) {
  const int n = fam.p;
  check_label(n, m);
  check_k(n, k);
  const auto step = B::q_power(n, -k) * side_observable<B>(n, fam.side, m);
  Matrix<B> sum(n, n);
  auto acc = Matrix<B>::identity(n, n);
  for (int r = 1; r <= n; ++r) {
    acc = acc * step;
    sum = sum + acc;
  }
  return B::inv_sqrt_p(n, 2) * sum;
}

template <Backend B>
Report projector_power_sums(const MubFamily<B>& fam) {
  const int n = fam.p;
  Report rep{"projector_power_sum", "|m_k><m_k| = p^{-1} sum_r (q^{-k} U_m)^r"};
  for (int m = 0; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) {
      ++rep.checked;
      const auto& v = fam.ket(m, k);
      if (!equal(detail::projector_power_sum(fam, m, k), outer<B>(n, v, v))) {
        rep.violations.push_back({{m, k}, "power sum differs from the outer product", {}});
      }
    }
  }
  return rep;
}

// <0_{j+1}|m_k> = eps^{-1} q^{-jm+k} <0_j|m_k> (object; eps = 1 except p = 2, m = 1), cross-multiplied;
// the ancilla side obeys the complex-conjugate recurrence.
template <Backend B>
Report amplitude_recurrence(const MubFamily<B>& fam) {
  const int n = fam.p;
  Report rep{"amplitude_recurrence", "<0_{j+1}|m_k> = q^{-jm+k} <0_j|m_k>"};
  const long long per_q = ring_order(n) / n;
  for (int m = 1; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) {
      const auto& v = fam.ket(m, k);
      for (int j = 1; j < n; ++j) {
        long long e = per_q * (static_cast<long long>(-j) * m + k) - observable_phase(n, m);
        if (fam.side == Side::ancilla) e = -e;
        ++rep.checked;
        const auto lhs = v[static_cast<std::size_t>(j)];
        const auto rhs = B::zeta_power(n, e) * v[static_cast<std::size_t>(j - 1)];
        if (!B::equal(lhs, rhs)) {
          rep.violations.push_back({{m, k, j}, "recurrence broken", B::to_complex(lhs - rhs)});
        }
      }
    }
  }
  return rep;
}

/// <0_j|m_k> = <m~_k|0~_j> for all j, m, k.
template <Backend B>
Report phase_convention(const MubFamily<B>& object, const MubFamily<B>& ancilla) {
  const int n = object.p;
  Report rep{"phase_convention", "<0_j|m_k> = <anc m_k|anc 0_j>"};
  for (int m = 0; m <= n; ++m) {
    for (int k = 1; k <= n; ++k) {
      for (int j = 1; j <= n; ++j) {
        ++rep.checked;
        const auto& a = object.ket(m, k)[static_cast<std::size_t>(j - 1)];
        const auto b = B::conj(ancilla.ket(m, k)[static_cast<std::size_t>(j - 1)]);
        if (!B::equal(a, b)) rep.violations.push_back({{m, k, j}, "phase convention broken", {}});
      }
    }
  }
  return rep;
}

// Reciprocal definition of the Weyl pair: each permutes the other's eigenbasis cyclically.
// Object: <0_k|U_p = <0_{k+1}|, U_0|p_k> = |p_{k+1}>.
// Ancilla: U_p|0_k> = |0_{k+1}>, <p_k|U_0 = <p_{k+1}|.
template <Backend B>
Report cyclic_permutation(const MubFamily<B>& fam) {
  const int n = fam.p;
  Report rep{"cyclic_permutation", "U_0 and U_p cyclically permute each other's eigenkets"};
  const auto u0 = side_observable<B>(n, fam.side, 0);
  const auto up = side_observable<B>(n, fam.side, n);
  for (int k = 1; k <= n; ++k) {
    const int next = k % n + 1;
    // A bra relation <a|X = <b| is X^dagger|a> = |b>.
    const auto on_zero = fam.side == Side::object ? up.adjoint() : up;
    const auto on_p = fam.side == Side::object ? u0 : u0.adjoint();
    rep.checked += 2;
    if (!kets_equal<B>(on_zero.apply(fam.ket(0, k)), fam.ket(0, next))) {
      rep.violations.push_back({{0, k}, "U_p does not advance the U_0 eigenkets", {}});
    }
    if (!kets_equal<B>(on_p.apply(fam.ket(n, k)), fam.ket(n, next))) {
      rep.violations.push_back({{n, k}, "U_0 does not advance the U_p eigenkets", {}});
    }
  }
  return rep;
}

}  // namespace detail

template <Backend B = ExactBackend>
WeylPair<B> build_weyl_pair(PrimeDim dim) {
  return detail::weyl_pair<B>(dim.value());
}

/// U_m = U_0^m U_p (m = 0 gives U_0, m = p gives U_p).
template <Backend B = ExactBackend>
Matrix<B> build_observable(PrimeDim dim, int m) {
  return detail::observable<B>(dim.value(), m);
}

template <Backend B = ExactBackend>
Matrix<B> build_ancilla_observable(PrimeDim dim, int m) {
  return detail::ancilla_observable<B>(dim.value(), m);
}

/// Basis m = 0 is computational; for m >= 1, <0_j|m_k> = p^{-1/2} q^{jk - j(j-1)m/2}.
/// The ancilla family is the entrywise conjugate.
template <Backend B = ExactBackend>
MubFamily<B> build_mub_family(PrimeDim dim, Side side = Side::object) {
  return detail::mub_family<B>(dim.value(), side);
}

template <Backend B>
Report verify_unbiasedness(const MubFamily<B>& fam) {
  return detail::unbiasedness(fam);
}

template <Backend B = ExactBackend>
Report verify_trace_relations(PrimeDim dim) {
  return detail::trace_table<B>(dim.value());
}

template <Backend B>
Matrix<B> projector_power_sum(const MubFamily<B>& fam, int m, int k) {
  return detail::projector_power_sum(fam, m, k);
}

}  // namespace meanking
