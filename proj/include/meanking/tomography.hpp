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
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "meanking/mub.hpp"

namespace meanking {

inline constexpr double kDensityTolerance = 1e-12;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kRowSumTolerance = 1e-12;

struct DensityMatrix {
  int p = 0;
  Eigen::MatrixXcd rho;

  bool is_hermitian(double tol = kDensityTolerance) const {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

  bool has_unit_trace(double tol = kDensityTolerance) const {
    return std::abs(rho.trace() - std::complex<double>(1.0, 0.0)) <= tol;
  }

  Eigen::VectorXd eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }

  bool is_valid() const {
    return is_hermitian() && has_unit_trace() && eigenvalues().minCoeff() >= kEigenvalueFloor;
  }
};

/// w(m, k-1) = <m_k|rho|m_k>, rows m = 0..p, columns k = 1..p.
struct ProbabilityTable {
  int p = 0;
  Eigen::MatrixXd w;

  double operator()(int m, int k) const { return w(m, k - 1); }

  /// Empty string when every row sums to one and every entry is a probability.
  std::string validation_error() const {
    if (w.rows() != p + 1 || w.cols() != p) return "table must be (p+1) x p";
    for (int m = 0; m <= p; ++m) {
      const double s = w.row(m).sum();
      if (std::abs(s - 1.0) > kRowSumTolerance) {
        return "row m=" + std::to_string(m) + " sums to " + std::to_string(s);
      }
      for (int k = 0; k < p; ++k) {
        if (w(m, k) < -kRowSumTolerance || w(m, k) > 1.0 + kRowSumTolerance) {
          return "entry (" + std::to_string(m) + "," + std::to_string(k + 1) + ") is not a probability";
        }
      }
    }
    return {};
  }
};

namespace detail {

inline Eigen::VectorXcd to_eigen(const Ket<FloatBackend>& v) {
  Eigen::VectorXcd e(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) e(static_cast<Eigen::Index>(i)) = v[i];
  return e;
}

inline void check_dims(int p, const MubFamily<FloatBackend>& fam) {
  if (fam.p != p) {
    throw std::invalid_argument("dimension mismatch: state has p=" + std::to_string(p) +
                                ", family has p=" + std::to_string(fam.p));
  }
}

}  // namespace detail

inline ProbabilityTable probabilities_of(const DensityMatrix& rho, const MubFamily<FloatBackend>& fam) {
  detail::check_dims(rho.p, fam);
  if (rho.rho.rows() != rho.p || rho.rho.cols() != rho.p) {
    throw std::invalid_argument("density matrix is not p x p");
  }
  ProbabilityTable t{rho.p, Eigen::MatrixXd(rho.p + 1, rho.p)};
  for (int m = 0; m <= rho.p; ++m) {
    for (int k = 1; k <= rho.p; ++k) {
      const auto v = detail::to_eigen(fam.ket(m, k));
      t.w(m, k - 1) = v.dot(rho.rho * v).real();
    }
  }
  return t;
}

/// rho = sum_m sum_k |m_k> (w_k^(m) - 1/(p+1)) <m_k|
inline DensityMatrix reconstruct(const ProbabilityTable& table, const MubFamily<FloatBackend>& fam) {
  detail::check_dims(table.p, fam);
  if (auto err = table.validation_error(); !err.empty()) {
    throw std::invalid_argument("malformed probability table: " + err);
  }
  const int p = table.p;
  DensityMatrix out{p, Eigen::MatrixXcd::Zero(p, p)};
  const double shift = 1.0 / (p + 1);
  for (int m = 0; m <= p; ++m) {
    for (int k = 1; k <= p; ++k) {
      const auto v = detail::to_eigen(fam.ket(m, k));
      out.rho += (table(m, k) - shift) * (v * v.adjoint());
    }
  }
  return out;
}

/// rho = G G^dagger / tr(G G^dagger), G with i.i.d. standard complex Gaussian entries.
inline DensityMatrix random_density(PrimeDim dim, std::uint64_t seed) {
  const int p = dim.value();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  }
  Eigen::MatrixXcd r = g * g.adjoint();
  r /= r.trace().real();
  // Symmetrize away rounding so the Hermitian invariant holds to the last bit.
  r = 0.5 * (r + r.adjoint()).eval();
  return {p, r};
}

inline double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return (a.rho - b.rho).norm();
}

}  // namespace meanking
