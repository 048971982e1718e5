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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "meanking/mub.hpp"

namespace meanking {

/// Maps a residue to the representative in {1..p} (0 -> p).
inline int label_rep(long long r, int p) {
  const long long x = detail::mod(r, p);
  return x == 0 ? p : static_cast<int>(x);
}

/// (k_0, k_1, ..., k_p): the outcome of U_m that a bracket state is compatible with, per m.
struct BracketLabel {
  std::vector<int> k;

  int p() const { return static_cast<int>(k.size()) - 1; }
  int operator[](int m) const { return k.at(static_cast<std::size_t>(m)); }

  friend bool operator==(const BracketLabel&, const BracketLabel&) = default;
  friend auto operator<=>(const BracketLabel&, const BracketLabel&) = default;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(k[i]);
    }
    return s + "]";
  }
};

/// Member of the physicist's basis: k_m = (m-1) k_0 + k_1 mod p for m >= 2.
inline BracketLabel measurement_label(int p, int k0, int k1) {
  BracketLabel l;
  l.k.resize(static_cast<std::size_t>(p + 1));
  l.k[0] = k0;
  l.k[1] = k1;
  for (int m = 2; m <= p; ++m) {
    l.k[static_cast<std::size_t>(m)] = label_rep(static_cast<long long>(m - 1) * k0 + k1, p);
  }
  return l;
}

/// Scalar index of a measurement-basis outcome: n = (k_0 - 1) p + (k_1 - 1).
inline int measurement_index(const BracketLabel& l) { return (l[0] - 1) * l.p() + (l[1] - 1); }

/// (1/p) sum_m d(k_m, k'_m) - 1/p
inline Rational bracket_overlap_closed_form(const BracketLabel& a, const BracketLabel& b) {
  if (a.p() != b.p()) throw std::invalid_argument("bracket labels of different dimension");
  const int p = a.p();
  int agree = 0;
  for (int m = 0; m <= p; ++m) agree += a[m] == b[m] ? 1 : 0;
  return Rational(agree - 1, p);
}

inline int agreements(const BracketLabel& a, const BracketLabel& b) {
  int agree = 0;
  for (int m = 0; m <= a.p(); ++m) agree += a[m] == b[m] ? 1 : 0;
  return agree;
}

/// Object-ancilla state; amps[(j - 1) * p + (jbar - 1)] in the computational product basis.
template <Backend B>
struct BipartiteState {
  int p = 0;
  Ket<B> amps;

  const typename B::Scalar& at(int j, int jbar) const {
    return amps.at(static_cast<std::size_t>((j - 1) * p + (jbar - 1)));
  }
};

template <Backend B>
typename B::Scalar inner(const BipartiteState<B>& a, const BipartiteState<B>& b) {
  return inner<B>(a.p, a.amps, b.amps);
}

template <Backend B>
bool states_equal(const BipartiteState<B>& a, const BipartiteState<B>& b) {
  return a.p == b.p && kets_equal<B>(a.amps, b.amps);
}

template <Backend B>
BipartiteState<B> product_state(int p, const Ket<B>& object, const Ket<B>& ancilla) {
  BipartiteState<B> s{p, Ket<B>(static_cast<std::size_t>(p) * p, B::zero(p))};
  for (int j = 0; j < p; ++j) {
    if (B::is_zero(object[static_cast<std::size_t>(j)])) continue;
    for (int jb = 0; jb < p; ++jb) {
      s.amps[static_cast<std::size_t>(j * p + jb)] =
          object[static_cast<std::size_t>(j)] * ancilla[static_cast<std::size_t>(jb)];
    }
  }
  return s;
}

/// Everything the physicist needs for dimension p: both complementary families, the
/// post-measurement states, the Psi basis and the bracket states.
///
/// Construct through `make_protocol_basis` (validates primality); the raw-int constructor
/// exists for the composite-dimension diagnosis.
template <Backend B>
class ProtocolBasis {
 public:
  using Scalar = typename B::Scalar;

  explicit ProtocolBasis(int n)
      : p_(n),
        object_(detail::mub_family<B>(n, Side::object)),
        ancilla_(detail::mub_family<B>(n, Side::ancilla)) {
    build_psi_basis();
  }

  int p() const { return p_; }
  const MubFamily<B>& object() const { return object_; }
  const MubFamily<B>& ancilla() const { return ancilla_; }

  /// |m_k> (x) |anc m_k>
  BipartiteState<B> post_measurement_state(int m, int k) const {
    detail::check_label(p_, m);
    detail::check_k(p_, k);
    return product_state<B>(p_, object_.ket(m, k), ancilla_.ket(m, k));
  }

  /// p^{-1/2} sum_k |m_k anc m_k>, evaluated with the basis pair of `via_m`.
  BipartiteState<B> psi0(int via_m) const { return correlated_sum(via_m, 0); }

  /// Psi_0 followed by Psi_{(p-1)m + j}, m = 0..p, j = 1..p-1.
  const std::vector<BipartiteState<B>>& psi_basis() const { return psi_; }

  static int psi_index(int p, int m, int j) { return (p - 1) * m + j; }

  /// (1/p) (Psi_0 + sum_m sum_j q^{j k_m} Psi_{(p-1)m+j})
  BipartiteState<B> bracket_state(const BracketLabel& label) const {
    if (label.p() != p_) throw std::invalid_argument("bracket label has wrong length");
    for (int m = 0; m <= p_; ++m) detail::check_k(p_, label[m]);
    BipartiteState<B> s = psi_[0];
    for (int m = 0; m <= p_; ++m) {
      for (int j = 1; j < p_; ++j) {
        const auto c = B::q_power(p_, static_cast<long long>(j) * label[m]);
        const auto& psi = psi_[static_cast<std::size_t>(psi_index(p_, m, j))];
        for (std::size_t i = 0; i < s.amps.size(); ++i) {
          if (B::is_zero(psi.amps[i])) continue;
          s.amps[i] += c * psi.amps[i];
        }
      }
    }
    const auto inv_p = B::inv_sqrt_p(p_, 2);
    for (auto& a : s.amps) a = inv_p * a;
    return s;
  }

  /// The p^2 bracket states with k_m = (m-1) k_0 + k_1, ordered by measurement_index.
  std::vector<std::pair<BracketLabel, BipartiteState<B>>> measurement_basis() const {
    std::vector<std::pair<BracketLabel, BipartiteState<B>>> out;
    out.reserve(static_cast<std::size_t>(p_) * p_);
    for (int k0 = 1; k0 <= p_; ++k0) {
      for (int k1 = 1; k1 <= p_; ++k1) {
        auto l = measurement_label(p_, k0, k1);
        auto s = bracket_state(l);
        out.emplace_back(std::move(l), std::move(s));
      }
    }
    return out;
  }

 private:
  // p^{-1/2} sum_k |m_k anc m_k> q^{-jk}
  BipartiteState<B> correlated_sum(int m, int j) const {
    detail::check_label(p_, m);
    BipartiteState<B> s{p_, Ket<B>(static_cast<std::size_t>(p_) * p_, B::zero(p_))};
    for (int k = 1; k <= p_; ++k) {
      const auto term = post_measurement_state(m, k);
      const auto c = B::q_power(p_, -static_cast<long long>(j) * k);
      for (std::size_t i = 0; i < s.amps.size(); ++i) {
        if (B::is_zero(term.amps[i])) continue;
        s.amps[i] += c * term.amps[i];
      }
    }
    const auto scale = B::inv_sqrt_p(p_, 1);
    for (auto& a : s.amps) a = scale * a;
    return s;
  }

  void build_psi_basis() {
    psi_.reserve(static_cast<std::size_t>(p_) * p_);
    psi_.push_back(correlated_sum(0, 0));
    for (int m = 0; m <= p_; ++m) {
      for (int j = 1; j < p_; ++j) psi_.push_back(correlated_sum(m, j));
    }
  }

  int p_;
  MubFamily<B> object_;
  MubFamily<B> ancilla_;
  std::vector<BipartiteState<B>> psi_;
};

template <Backend B = ExactBackend>
ProtocolBasis<B> make_protocol_basis(PrimeDim dim) {
  return ProtocolBasis<B>(dim.value());
}

template <Backend B = ExactBackend>
BipartiteState<B> build_psi0(PrimeDim dim, int via_m) {
  return make_protocol_basis<B>(dim).psi0(via_m);
}

template <Backend B = ExactBackend>
BipartiteState<B> post_measurement_state(PrimeDim dim, int m, int k) {
  return make_protocol_basis<B>(dim).post_measurement_state(m, k);
}

template <Backend B = ExactBackend>
std::vector<BipartiteState<B>> build_psi_basis(PrimeDim dim) {
  return make_protocol_basis<B>(dim).psi_basis();
}

template <Backend B = ExactBackend>
BipartiteState<B> build_bracket_state(PrimeDim dim, const BracketLabel& label) {
  return make_protocol_basis<B>(dim).bracket_state(label);
}

template <Backend B = ExactBackend>
std::vector<std::pair<BracketLabel, BipartiteState<B>>> build_measurement_basis(PrimeDim dim) {
  return make_protocol_basis<B>(dim).measurement_basis();
}

namespace detail {

template <Backend B>
Report psi0_independence(const ProtocolBasis<B>& pb) {
  Report rep{"psi0_independence", "p^{-1/2} sum_k |m_k anc m_k> is the same state for every m"};
  const auto ref = pb.psi0(0);
  for (int m = 1; m <= pb.p(); ++m) {
    ++rep.checked;
    if (!states_equal(pb.psi0(m), ref)) rep.violations.push_back({{m}, "Psi_0 depends on m", {}});
  }
  return rep;
}

template <Backend B>
Report post_state_overlaps(const ProtocolBasis<B>& pb) {
  const int p = pb.p();
  Report rep{"post_state_overlaps",
             "<m_k anc m_k|m'_k' anc m'_k'> = 1/p (m != m'), <Psi_0|m_k anc m_k> = p^{-1/2}"};
  std::vector<BipartiteState<B>> states;
  std::vector<std::pair<int, int>> tags;
  for (int m = 0; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) {
      states.push_back(pb.post_measurement_state(m, k));
      tags.emplace_back(m, k);
    }
  }
  const auto psi0 = pb.psi0(0);
  const auto root = B::inv_sqrt_p(p, 1);
  for (std::size_t a = 0; a < states.size(); ++a) {
    ++rep.checked;
    const auto z = inner(psi0, states[a]);
    if (!B::equal(z, root)) {
      rep.violations.push_back({{tags[a].first, tags[a].second}, "overlap with Psi_0", B::to_complex(z)});
    }
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      if (tags[a].first == tags[b].first) continue;
      ++rep.checked;
      const auto w = inner(states[a], states[b]);
      if (!B::equals_rational(w, Rational(1, p))) {
        rep.violations.push_back({{tags[a].first, tags[a].second, tags[b].first, tags[b].second},
                                  "cross-basis product overlap", B::to_complex(w)});
      }
    }
  }
  return rep;
}

template <Backend B>
Report psi_orthonormality(const ProtocolBasis<B>& pb) {
  Report rep{"psi_orthonormality", "<Psi_n|Psi_n'> = d_nn' for n, n' = 0..p^2-1"};
  const auto& psi = pb.psi_basis();
  for (std::size_t a = 0; a < psi.size(); ++a) {
    for (std::size_t b = a; b < psi.size(); ++b) {
      ++rep.checked;
      const auto z = inner(psi[a], psi[b]);
      if (!B::equals_rational(z, Rational(a == b ? 1 : 0))) {
        rep.violations.push_back({{static_cast<int>(a), static_cast<int>(b)}, "Gram entry", B::to_complex(z)});
      }
    }
  }
  return rep;
}

// Direct inner products of bracket states against the closed form, over label pairs.
template <Backend B>
void check_bracket_pair(const BracketLabel& a, const BipartiteState<B>& sa, const BracketLabel& b,
                        const BipartiteState<B>& sb, Report& rep) {
  ++rep.checked;
  const auto z = inner(sa, sb);
  if (!B::equals_rational(z, bracket_overlap_closed_form(a, b))) {
    std::vector<int> where = a.k;
    where.insert(where.end(), b.k.begin(), b.k.end());
    rep.violations.push_back({std::move(where), "bracket overlap differs from closed form", B::to_complex(z)});
  }
}

template <Backend B>
Report bracket_defining_property(const ProtocolBasis<B>& pb, const BracketLabel& label,
                                 const BipartiteState<B>& s) {
  const int p = pb.p();
  Report rep{"bracket_orthogonality", "<[k_0..k_p]|m_k' anc m_k'> = 0 for k' != k_m"};
  for (int m = 0; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) {
      if (k == label[m]) continue;
      ++rep.checked;
      const auto z = inner(s, pb.post_measurement_state(m, k));
      if (!B::is_zero(z)) rep.violations.push_back({{m, k}, "leak to incompatible outcome", B::to_complex(z)});
    }
  }
  return rep;
}

template <Backend B>
Report measurement_basis_orthonormality(
    const std::vector<std::pair<BracketLabel, BipartiteState<B>>>& mb) {
  Report rep{"measurement_basis", "bracket states with k_m = (m-1)k_0 + k_1 are orthonormal"};
  for (std::size_t a = 0; a < mb.size(); ++a) {
    for (std::size_t b = a; b < mb.size(); ++b) {
      ++rep.checked;
      const auto z = inner(mb[a].second, mb[b].second);
      if (!B::equals_rational(z, Rational(a == b ? 1 : 0))) {
        std::vector<int> where = mb[a].first.k;
        where.insert(where.end(), mb[b].first.k.begin(), mb[b].first.k.end());
        rep.violations.push_back({std::move(where), "not orthonormal", B::to_complex(z)});
      }
    }
  }
  return rep;
}

template <Backend B>
Report resolution_of_identity(int p,
                              const std::vector<std::pair<BracketLabel, BipartiteState<B>>>& mb) {
  Report rep{"resolution_of_identity", "sum_L |L><L| = 1 on the p^2-dimensional space"};
  const int n = p * p;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      auto acc = B::zero(p);
      for (const auto& [label, s] : mb) {
        const auto& x = s.amps[static_cast<std::size_t>(r)];
        const auto& y = s.amps[static_cast<std::size_t>(c)];
        if (B::is_zero(x) || B::is_zero(y)) continue;
        acc += x * B::conj(y);
      }
      ++rep.checked;
      if (!B::equals_rational(acc, Rational(r == c ? 1 : 0))) {
        rep.violations.push_back({{r, c}, "projector sum entry", B::to_complex(acc)});
      }
    }
  }
  return rep;
}

// Every basis outcome with non-zero Born weight after (m, k) must announce k.
template <Backend B>
Report retrodiction_soundness(const ProtocolBasis<B>& pb,
                              const std::vector<std::pair<BracketLabel, BipartiteState<B>>>& mb) {
  const int p = pb.p();
  Report rep{"retrodiction_soundness", "non-zero Born weight of [k_0..k_p] after (m,k) implies k_m = k"};
  for (int m = 0; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) {
      const auto post = pb.post_measurement_state(m, k);
      for (const auto& [label, s] : mb) {
        ++rep.checked;
        const auto z = inner(s, post);
        if (label[m] != k && !B::is_zero(z)) {
          std::vector<int> where{m, k};
          where.insert(where.end(), label.k.begin(), label.k.end());
          rep.violations.push_back({std::move(where), "probability leaks to a wrong answer", B::to_complex(z)});
        }
      }
    }
  }
  return rep;
}

}  // namespace detail

}  // namespace meanking
