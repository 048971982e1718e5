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
#include <numbers>
#include <string_view>

#include "meanking/cyclotomic.hpp"

namespace meanking {

/// Scalar policies. Every construction in the library is a template over one of these.
///
/// The exact backend is authoritative; the float backend is an independent oracle and
/// the only option where exactness is out of reach (composite dimensions, large p).

struct ExactBackend {
  using Scalar = Amplitude;
  static constexpr std::string_view name = "exact";

  static Scalar zero(int p) { return Amplitude::zero(p); }
  static Scalar one(int p) { return Amplitude::one(p); }
  static Scalar integer(int p, long long n) {
    return Amplitude(CyclotomicInt::integer(p, n));
  }
  static Scalar q_power(int p, long long e) { return Amplitude(CyclotomicInt::q_power(p, e)); }
  static Scalar zeta_power(int p, long long e) {
    return Amplitude(CyclotomicInt::zeta_power(p, e));
  }
  static Scalar inv_sqrt_p(int p, int t = 1) { return Amplitude::inv_sqrt_p(p, t); }

  static Scalar conj(const Scalar& s) { return s.conj(); }
  static bool is_zero(const Scalar& s) { return s.is_zero(); }
  static bool equal(const Scalar& a, const Scalar& b) { return a == b; }
  static bool equals_rational(const Scalar& a, const Rational& r) {
    auto v = a.as_rational();
    return v && *v == r;
  }
  static std::complex<double> to_complex(const Scalar& s) { return s.to_complex(); }
};

struct FloatBackend {
  using Scalar = std::complex<double>;
  static constexpr std::string_view name = "float";
  static constexpr double tolerance = 1e-10;

  static Scalar zero(int) { return {0.0, 0.0}; }
  static Scalar one(int) { return {1.0, 0.0}; }
  static Scalar integer(int, long long n) { return {static_cast<double>(n), 0.0}; }
  static Scalar q_power(int p, long long e) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(detail::mod(e, p)) / p);
  }
  static Scalar zeta_power(int p, long long e) {
    const int n = ring_order(p);
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(detail::mod(e, n)) / n);
  }
  static Scalar inv_sqrt_p(int p, int t = 1) {
    return {std::pow(static_cast<double>(p), -0.5 * t), 0.0};
  }

  static Scalar conj(const Scalar& s) { return std::conj(s); }
  static bool is_zero(const Scalar& s) { return std::abs(s) <= tolerance; }
  static bool equal(const Scalar& a, const Scalar& b) { return std::abs(a - b) <= tolerance; }
  static bool equals_rational(const Scalar& a, const Rational& r) {
    return std::abs(a - Scalar(r.convert_to<double>(), 0.0)) <= tolerance;
  }
  static std::complex<double> to_complex(const Scalar& s) { return s; }
};

template <class B>
concept Backend = requires(const typename B::Scalar& s) {
  { B::zero(2) } -> std::same_as<typename B::Scalar>;
  { B::q_power(2, 1) } -> std::same_as<typename B::Scalar>;
  { B::is_zero(s) } -> std::same_as<bool>;
  { B::to_complex(s) } -> std::same_as<std::complex<double>>;
};

static_assert(Backend<ExactBackend>);
static_assert(Backend<FloatBackend>);

}  // namespace meanking
