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
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace meanking {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class modulus_mismatch : public std::invalid_argument {
 public:
  modulus_mismatch(int a, int b)
      : std::invalid_argument("cyclotomic modulus mismatch: " + std::to_string(a) + " vs " +
                              std::to_string(b)) {}
};

/// Order N of the root of unity zeta generating the exact ring for prime p.
///
/// For odd p, N = p and q = zeta. For p = 2 the ring is Z[i] (N = 4, q = zeta^2 = -1),
/// since the spin-1/2 complementary bases need the imaginary unit.
inline int ring_order(int p) { return p == 2 ? 4 : p; }

namespace detail {

// Smallest prime factor of a prime power n (n is p or 4 here).
inline int prime_base(int n) {
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

inline long long mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace detail

/// Exact element of Z[zeta], zeta = exp(2 pi i / N), N = ring_order(p).
///
/// Stored as N integer coefficients of zeta^0 .. zeta^{N-1}. The representation is
/// redundant modulo Phi_N(zeta) = 0; it is kept canonical at all times: for each coset
/// {r, r + N/l, ..., r + (l-1)N/l} (l the prime dividing N) the coefficient at the last
/// member is subtracted from the whole coset. For odd p this is the familiar
/// "subtract the last coefficient" normal form, and equality is plain vector comparison.
class CyclotomicInt {
 public:
  CyclotomicInt() = default;

  /// Zero of the ring for prime p.
  explicit CyclotomicInt(int p) : p_(p), c_(static_cast<std::size_t>(ring_order(p))) {
    if (p < 2) throw std::invalid_argument("CyclotomicInt: modulus must be >= 2");
  }

  static CyclotomicInt from_coeffs(int p, std::vector<BigInt> coeffs) {
    CyclotomicInt r(p);
    if (coeffs.size() != r.c_.size()) {
      throw std::invalid_argument("CyclotomicInt: expected " + std::to_string(r.c_.size()) +
                                  " coefficients, got " + std::to_string(coeffs.size()));
    }
    r.c_ = std::move(coeffs);
    r.canonicalize();
    return r;
  }

  static CyclotomicInt integer(int p, const BigInt& n) {
    CyclotomicInt r(p);
    r.c_[0] = n;
    r.canonicalize();
    return r;
  }

  /// zeta^e for the ring's generator.
  static CyclotomicInt zeta_power(int p, long long e) {
    CyclotomicInt r(p);
    r.c_[static_cast<std::size_t>(detail::mod(e, r.order()))] = 1;
    r.canonicalize();
    return r;
  }

  /// q^e with q = exp(2 pi i / p).
  static CyclotomicInt q_power(int p, long long e) {
    return zeta_power(p, detail::mod(e, p) * (ring_order(p) / p));
  }

  /// Quadratic Gauss sum sum_k (k|p) q^k; equals +sqrt(p) for p = 1 mod 4.
  static CyclotomicInt gauss_sum(int p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("gauss_sum: odd prime required");
    CyclotomicInt r(p);
    for (int k = 1; k < p; ++k) {
      // Euler's criterion.
      long long acc = 1, base = k, e = (p - 1) / 2;
      while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      r.c_[static_cast<std::size_t>(k)] = (acc == 1) ? 1 : -1;
    }
    r.canonicalize();
    return r;
  }

  int p() const { return p_; }
  int order() const { return static_cast<int>(c_.size()); }
  const std::vector<BigInt>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  /// Complex conjugation: zeta^e -> zeta^{-e}.
  CyclotomicInt conj() const {
    CyclotomicInt r(p_);
    const long long n = order();
    for (long long e = 0; e < n; ++e) {
      r.c_[static_cast<std::size_t>(detail::mod(-e, n))] = c_[static_cast<std::size_t>(e)];
    }
    r.canonicalize();
    return r;
  }

  /// Multiplication by zeta^e, an index rotation.
  CyclotomicInt rotated(long long e) const {
    CyclotomicInt r(p_);
    const long long n = order();
    for (long long f = 0; f < n; ++f) {
      r.c_[static_cast<std::size_t>(detail::mod(f + e, n))] = c_[static_cast<std::size_t>(f)];
    }
    r.canonicalize();
    return r;
  }

  CyclotomicInt operator-() const {
    CyclotomicInt r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  CyclotomicInt& operator+=(const CyclotomicInt& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    canonicalize();
    return *this;
  }

  CyclotomicInt& operator-=(const CyclotomicInt& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    canonicalize();
    return *this;
  }

  CyclotomicInt& operator*=(const BigInt& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
  friend CyclotomicInt operator*(CyclotomicInt a, const BigInt& s) { return a *= s; }

  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
    a.check_same(b);
    CyclotomicInt r(a.p_);
    const std::size_t n = a.c_.size();
    // Canonical vectors are usually sparse (monomials dominate), so skip zero terms.
    for (std::size_t e = 0; e < n; ++e) {
      if (a.c_[e].is_zero()) continue;
      for (std::size_t f = 0; f < n; ++f) {
        if (b.c_[f].is_zero()) continue;
        r.c_[(e + f) % n] += a.c_[e] * b.c_[f];
      }
    }
    r.canonicalize();
    return r;
  }

  CyclotomicInt& operator*=(const CyclotomicInt& o) { return *this = *this * o; }

  /// True iff the element is d times an element of the ring.
  bool divisible_by(const BigInt& d) const {
    for (const auto& x : c_) {
      if (!BigInt(x % d).is_zero()) return false;
    }
    return true;
  }

  /// Exact division; requires divisible_by(d).
  CyclotomicInt divided_by(const BigInt& d) const {
    CyclotomicInt r = *this;
    for (auto& x : r.c_) x /= d;
    return r;
  }

  std::complex<double> to_complex() const {
    const double n = static_cast<double>(order());
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t e = 0; e < c_.size(); ++e) {
      if (c_[e].is_zero()) continue;
      acc += c_[e].convert_to<double>() * std::polar(1.0, 2.0 * std::numbers::pi * e / n);
    }
    return acc;
  }

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

 private:
  void check_same(const CyclotomicInt& o) const {
    if (p_ != o.p_) throw modulus_mismatch(p_, o.p_);
  }

  void canonicalize() {
    const int n = order();
    const int l = detail::prime_base(n);
    const int block = n / l;
    for (int r = 0; r < block; ++r) {
      const auto last = static_cast<std::size_t>(r + (l - 1) * block);
      if (c_[last].is_zero()) continue;
      const BigInt shift = c_[last];
      for (int i = 0; i < l; ++i) c_[static_cast<std::size_t>(r + i * block)] -= shift;
    }
  }

  int p_ = 0;
  std::vector<BigInt> c_;
};

inline CyclotomicInt cyc_add(const CyclotomicInt& a, const CyclotomicInt& b) { return a + b; }
inline CyclotomicInt cyc_mul(const CyclotomicInt& a, const CyclotomicInt& b) { return a * b; }
inline CyclotomicInt cyc_conj(const CyclotomicInt& a) { return a.conj(); }
inline bool cyc_is_zero(const CyclotomicInt& a) { return a.is_zero(); }

/// value * p^{-scale_pow / 2}: the exact amplitude type.
class Amplitude {
 public:
  Amplitude() = default;
  explicit Amplitude(CyclotomicInt value, int scale_pow = 0)
      : value_(std::move(value)), scale_(scale_pow) {
    if (scale_ < 0) throw std::invalid_argument("Amplitude: scale_pow must be non-negative");
  }

  static Amplitude zero(int p) { return Amplitude(CyclotomicInt(p)); }
  static Amplitude one(int p) { return Amplitude(CyclotomicInt::integer(p, 1)); }

  /// p^{-t/2}.
  static Amplitude inv_sqrt_p(int p, int t = 1) {
    return Amplitude(CyclotomicInt::integer(p, 1), t);
  }

  const CyclotomicInt& value() const { return value_; }
  int scale_pow() const { return scale_; }
  int p() const { return value_.p(); }
  bool is_zero() const { return value_.is_zero(); }

  Amplitude conj() const { return Amplitude(value_.conj(), scale_); }

  Amplitude operator-() const { return Amplitude(-value_, scale_); }

  friend Amplitude operator*(const Amplitude& a, const Amplitude& b) {
    return Amplitude(a.value_ * b.value_, a.scale_ + b.scale_);
  }

  /// Multiplication by zeta^e.
  Amplitude rotated(long long e) const { return Amplitude(value_.rotated(e), scale_); }

  friend Amplitude operator+(const Amplitude& a, const Amplitude& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto [x, y, t] = align(a, b);
    return Amplitude(x + y, t);
  }

  friend Amplitude operator-(const Amplitude& a, const Amplitude& b) { return a + (-b); }

  Amplitude& operator+=(const Amplitude& o) { return *this = *this + o; }
  Amplitude& operator-=(const Amplitude& o) { return *this = *this - o; }
  Amplitude& operator*=(const Amplitude& o) { return *this = *this * o; }

  friend bool operator==(const Amplitude& a, const Amplitude& b) {
    if (a.p() != b.p()) throw modulus_mismatch(a.p(), b.p());
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (!commensurable(a, b)) return false;
    auto [x, y, t] = align(a, b);
    return x == y;
  }

  /// Unique representative: even scale when p = 1 mod 4, then divided by p while possible.
  Amplitude canonical() const {
    const int p = this->p();
    if (is_zero()) return zero(p);
    CyclotomicInt v = value_;
    int t = scale_;
    if (t % 2 == 1 && p % 4 == 1) {
      v *= CyclotomicInt::gauss_sum(p);
      t += 1;
    }
    while (t >= 2 && v.divisible_by(p)) {
      v = v.divided_by(p);
      t -= 2;
    }
    return Amplitude(std::move(v), t);
  }

  /// The rational number this amplitude equals, if it is one.
  std::optional<Rational> as_rational() const {
    const Amplitude c = canonical();
    const auto& k = c.value_.coeffs();
    for (std::size_t e = 1; e < k.size(); ++e) {
      if (!k[e].is_zero()) return std::nullopt;
    }
    if (k[0].is_zero()) return Rational(0);
    if (c.scale_ % 2 != 0) return std::nullopt;
    return Rational(k[0], boost::multiprecision::pow(BigInt(p()), static_cast<unsigned>(c.scale_ / 2)));
  }

  std::complex<double> to_complex() const {
    return value_.to_complex() * std::pow(static_cast<double>(p()), -0.5 * scale_);
  }

 private:
  static bool commensurable(const Amplitude& a, const Amplitude& b) {
    return (a.scale_ - b.scale_) % 2 == 0 || a.p() % 4 == 1;
  }

  // Brings a and b to a common scale; both must be non-zero.
  static std::tuple<CyclotomicInt, CyclotomicInt, int> align(const Amplitude& a,
                                                             const Amplitude& b) {
    if (a.p() != b.p()) throw modulus_mismatch(a.p(), b.p());
    const int p = a.p();
    CyclotomicInt x = a.value_, y = b.value_;
    int ta = a.scale_, tb = b.scale_;
    if ((ta - tb) % 2 != 0) {
      if (p % 4 != 1) {
        throw std::domain_error("amplitudes with scales of different parity are not commensurable for p=" +
                                std::to_string(p));
      }
      // p^{-1/2} = g / p with g the Gauss sum.
      if (ta % 2 == 1) {
        x *= CyclotomicInt::gauss_sum(p);
        ++ta;
      } else {
        y *= CyclotomicInt::gauss_sum(p);
        ++tb;
      }
    }
    const BigInt bp(p);
    if (ta < tb) x *= boost::multiprecision::pow(bp, static_cast<unsigned>((tb - ta) / 2));
    if (tb < ta) y *= boost::multiprecision::pow(bp, static_cast<unsigned>((ta - tb) / 2));
    return {std::move(x), std::move(y), std::max(ta, tb)};
  }

  CyclotomicInt value_;
  int scale_ = 0;
};

/// |a|^2 as an exact amplitude.
inline Amplitude norm2(const Amplitude& a) { return a * a.conj(); }

inline std::complex<double> cyc_to_complex(const Amplitude& a) { return a.to_complex(); }

}  // namespace meanking
