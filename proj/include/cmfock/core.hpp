// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file core.hpp
 * @brief Shared scalar/matrix aliases and small dense linear-algebra helpers.
 */

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmfock {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = std::numbers::pi;

/// Largest absolute entry; the "max-norm" used by every residual in the library.
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

inline double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

inline bool is_unitary(const Matrix& u, double tol = 1e-10) {
  return u.rows() == u.cols() && unitarity_defect(u) < tol;
}

inline bool is_hermitian(const Matrix& x, double tol = 1e-12) {
  return x.rows() == x.cols() && max_abs(x - x.adjoint()) < tol;
}

/// Largest singular value.
inline double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// exp(i H) for Hermitian H, via the spectral decomposition (unitary to rounding).
inline Matrix exp_i_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw std::domain_error("exp_i_hermitian: eigensolver failed");
  Vector phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::exp(I * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// exp(G) for anti-Hermitian G.
inline Matrix exp_antihermitian(const Matrix& g) {
  Matrix h = -I * g;
  h = 0.5 * (h + h.adjoint()).eval();
  return exp_i_hermitian(h);
}

/**
 * Principal logarithm of a unitary, returned as the Hermitian X with u = exp(iX)
 * and spectrum in (-pi, pi).  An eigenvalue within `minus_one_tol` of -1 has no
 * principal logarithm and is reported rather than perturbed.
 */
inline Matrix log_unitary(const Matrix& u, double minus_one_tol = 1e-12) {
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success) throw std::domain_error("log_unitary: Schur decomposition failed");
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  Vector angles(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const cplx lambda = t(i, i);
    if (std::abs(lambda + 1.0) < minus_one_tol)
      throw std::domain_error("log_unitary: eigenvalue -1 has no principal logarithm");
    angles(i) = std::arg(lambda);
  }
  Matrix x = q * angles.asDiagonal() * q.adjoint();
  return 0.5 * (x + x.adjoint());
}

/// Matrix commutator AB - BA.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Fixed-order pairwise summation; results do not depend on thread count or call order.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

/// FNV-1a over raw bytes; used for cache keys and config fingerprints.
inline std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed = 1469598103934665603ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace cmfock
