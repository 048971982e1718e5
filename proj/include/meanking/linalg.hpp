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
#include <vector>

#include "meanking/backend.hpp"

namespace meanking {

template <Backend B>
using Ket = std::vector<typename B::Scalar>;

/// Dense square matrix over a backend scalar, row-major, 0-based.
///
/// `p` is the ring parameter (needed by the exact backend to build zeros); `n` the
/// dimension. For single-system operators n == p, for bipartite ones n == p * p.
template <Backend B>
class Matrix {
 public:
  using Scalar = typename B::Scalar;

  Matrix() = default;
  Matrix(int p, int n) : p_(p), n_(n), d_(static_cast<std::size_t>(n) * n, B::zero(p)) {}

  static Matrix identity(int p, int n) {
    Matrix m(p, n);
    for (int i = 0; i < n; ++i) m(i, i) = B::one(p);
    return m;
  }

  int p() const { return p_; }
  int size() const { return n_; }

  Scalar& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  const Scalar& operator()(int i, int j) const {
    return d_[static_cast<std::size_t>(i) * n_ + j];
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    check(a, b);
    Matrix r(a.p_, a.n_);
    for (int i = 0; i < a.n_; ++i) {
      for (int l = 0; l < a.n_; ++l) {
        const Scalar& x = a(i, l);
        if (B::is_zero(x)) continue;
        for (int j = 0; j < a.n_; ++j) {
          const Scalar& y = b(l, j);
          if (B::is_zero(y)) continue;
          r(i, j) += x * y;
        }
      }
    }
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
    return r;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.d_) x = s * x;
    return r;
  }

  Ket<B> apply(const Ket<B>& v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("Matrix::apply: size mismatch");
    Ket<B> r(v.size(), B::zero(p_));
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (B::is_zero((*this)(i, j)) || B::is_zero(v[j])) continue;
        r[i] += (*this)(i, j) * v[j];
      }
    }
    return r;
  }

  Matrix adjoint() const {
    Matrix r(p_, n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) r(j, i) = B::conj((*this)(i, j));
    }
    return r;
  }

  Matrix pow(int e) const {
    if (e < 0) throw std::invalid_argument("Matrix::pow: negative exponent");
    Matrix r = identity(p_, n_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return r;
  }

  Scalar trace() const {
    Scalar t = B::zero(p_);
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : d_) {
      if (!B::is_zero(x)) return false;
    }
    return true;
  }

  friend bool equal(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.d_.size(); ++i) {
      if (!B::equal(a.d_[i], b.d_[i])) return false;
    }
    return true;
  }

  const std::vector<Scalar>& data() const { return d_; }

 private:
  static void check(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("Matrix: dimension mismatch");
  }

  int p_ = 0;
  int n_ = 0;
  std::vector<Scalar> d_;
};

/// tr(A B) without forming the product.
template <Backend B>
typename B::Scalar trace_of_product(const Matrix<B>& a, const Matrix<B>& b) {
  auto t = B::zero(a.p());
  for (int i = 0; i < a.size(); ++i) {
    for (int l = 0; l < a.size(); ++l) {
      if (B::is_zero(a(i, l)) || B::is_zero(b(l, i))) continue;
      t += a(i, l) * b(l, i);
    }
  }
  return t;
}

/// <u|v>, antilinear in the first argument.
template <Backend B>
typename B::Scalar inner(int p, const Ket<B>& u, const Ket<B>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("inner: size mismatch");
  auto acc = B::zero(p);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (B::is_zero(u[i]) || B::is_zero(v[i])) continue;
    acc += B::conj(u[i]) * v[i];
  }
  return acc;
}

/// |u><v|
template <Backend B>
Matrix<B> outer(int p, const Ket<B>& u, const Ket<B>& v) {
  const int n = static_cast<int>(u.size());
  Matrix<B> r(p, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(i, j) = u[i] * B::conj(v[j]);
  }
  return r;
}

template <Backend B>
bool kets_equal(const Ket<B>& a, const Ket<B>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!B::equal(a[i], b[i])) return false;
  }
  return true;
}

template <Backend B>
Ket<B> scaled(const typename B::Scalar& s, Ket<B> v) {
  for (auto& x : v) x = s * x;
  return v;
}

}  // namespace meanking
