// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bogoliubov.hpp
 * @brief Second quantization of one-particle operators and Fock-space implementers.
 *
 * The implementer of a unitary g = exp(iX) is exp(i dGamma(X)) with dGamma
 * normal ordered against the filled sea, followed by a phase fix that makes
 * the first non-negligible amplitude of (lift * vacuum) real and positive.
 * dGamma conserves particle number, so the exponential is taken one particle
 * sector at a time.
 */

#pragma once

#include "cmfock/fock.hpp"

#include <optional>

namespace cmfock::bogoliubov {

using fock::FockOperator;
using fock::SpacePtr;
using modes::OneParticleOperator;

/// Amplitudes below this magnitude are skipped when fixing the implementer phase.
inline constexpr double phase_threshold = 1e-8;

inline void check_basis(const SpacePtr& space, const OneParticleOperator& op, const char* who) {
  if (!op.basis || !space->basis()->same_as(*op.basis))
    throw std::invalid_argument(std::string(who) + ": operator basis does not match the Fock space");
}

/**
 * sum_ij X_ij :a*_i a_j: for any square X (complex-linear in X).  Normal
 * ordering subtracts tr(P- X), so the vacuum expectation vanishes.
 */
inline FockOperator second_quantize(const SpacePtr& space, const Matrix& x) {
  const int n = space->modes();
  if (x.rows() != n || x.cols() != n) throw std::invalid_argument("second_quantize: size mismatch");
  cplx sea_trace = 0.0;
  for (int i = 0; i < n; ++i)
    if (space->vacuum_mask() >> i & 1) sea_trace += x(i, i);
  std::vector<std::pair<int, int>> offdiag;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j && x(i, j) != cplx{}) offdiag.emplace_back(i, j);

  const auto dim = static_cast<std::uint64_t>(space->dimension());
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(dim * (1 + offdiag.size() / 2));
  for (std::uint64_t b = 0; b < dim; ++b) {
    cplx diag = -sea_trace;
    for (int j = 0; j < n; ++j)
      if (b >> j & 1) diag += x(j, j);
    if (diag != cplx{}) trips.emplace_back(static_cast<int>(b), static_cast<int>(b), diag);
    for (auto [i, j] : offdiag) {
      if (!(b >> j & 1) || (b >> i & 1)) continue;
      const std::uint64_t mid = b ^ (std::uint64_t{1} << j);
      const double sign = fock::jw_sign(b, j) * fock::jw_sign(mid, i);
      trips.emplace_back(static_cast<int>(mid | (std::uint64_t{1} << i)), static_cast<int>(b), sign * x(i, j));
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return {space, m};
}

/// dGamma(X) for Hermitian X.
inline FockOperator dGamma(const SpacePtr& space, const OneParticleOperator& x) {
  check_basis(space, x, "dGamma");
  if (!x.is_hermitian()) throw std::invalid_argument("dGamma: operator is not Hermitian");
  return second_quantize(space, x.entries);
}

/// exp(iH) for a Hermitian, particle-number-conserving H, one sector at a time.
inline FockOperator exp_i_number_conserving(const FockOperator& h) {
  const auto& space = h.space;
  for (int k = 0; k < h.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(h.matrix, k); it; ++it)
      if (std::popcount(static_cast<std::uint64_t>(it.row())) != std::popcount(static_cast<std::uint64_t>(it.col())))
        throw std::invalid_argument("exp_i_number_conserving: operator mixes particle sectors");

  std::vector<Eigen::Triplet<cplx>> trips;
  std::vector<Eigen::Index> position(space->dimension(), -1);
  for (const auto& sector : fock::particle_sectors(space)) {
    const auto size = static_cast<Eigen::Index>(sector.size());
    for (Eigen::Index a = 0; a < size; ++a) position[sector[a]] = a;
    Matrix block = Matrix::Zero(size, size);
    for (Eigen::Index a = 0; a < size; ++a)
      for (SparseMatrix::InnerIterator it(h.matrix, static_cast<Eigen::Index>(sector[a])); it; ++it)
        block(position[it.row()], a) = it.value();
    const Matrix u = exp_i_hermitian(0.5 * (block + block.adjoint()));
    for (Eigen::Index c = 0; c < size; ++c)
      for (Eigen::Index r = 0; r < size; ++r)
        if (u(r, c) != cplx{})
          trips.emplace_back(static_cast<int>(sector[r]), static_cast<int>(sector[c]), u(r, c));
  }
  const auto dim = static_cast<Eigen::Index>(space->dimension());
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return {space, m};
}

struct Implementer {
  OneParticleOperator source;
  FockOperator lift;
  std::string phase_convention = "vacuum-leading-amplitude-positive";
};

/// Rescales `lift` so the first amplitude of lift * vacuum above phase_threshold is real positive.
inline void fix_phase(FockOperator& lift) {
  const Vector image = lift.matrix * fock::vacuum(lift.space).amplitudes;
  for (Eigen::Index i = 0; i < image.size(); ++i) {
    if (std::abs(image(i)) > phase_threshold) {
      lift.matrix *= std::conj(image(i)) / std::abs(image(i));
      return;
    }
  }
  throw std::domain_error("fix_phase: lift annihilates the vacuum");
}

/**
 * Fock-space implementer of a one-particle unitary.  Throws when g is not
 * unitary or has an eigenvalue at -1 (no principal logarithm).
 */
inline Implementer implement(const SpacePtr& space, const OneParticleOperator& g) {
  check_basis(space, g, "implement");
  if (!g.is_unitary(1e-10)) throw std::invalid_argument("implement: operator is not unitary");
  const Matrix x = log_unitary(g.entries);
  FockOperator lift = exp_i_number_conserving(second_quantize(space, x));
  fix_phase(lift);
  return {g, std::move(lift)};
}

/// max_i | lift a*(e_i) lift^-1 - a*(g e_i) |, which bounds the residual for every v by linearity.
inline double intertwining_residual(const Implementer& imp) {
  const auto& space = imp.lift.space;
  const int n = space->modes();
  const FockOperator inverse = imp.lift.adjoint();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vector e = fock::unit_vector(n, i);
    const FockOperator lhs = imp.lift * fock::creation(space, e) * inverse;
    const FockOperator rhs = fock::creation(space, imp.source.entries * e);
    worst = std::max(worst, max_abs(SparseMatrix(lhs.matrix - rhs.matrix)));
  }
  return worst;
}

inline double lift_unitarity_residual(const Implementer& imp) {
  return max_abs(SparseMatrix(imp.lift.adjoint().matrix * imp.lift.matrix -
                              FockOperator::identity(imp.lift.space).matrix));
}

struct Multiplier {
  cplx value;             ///< c with lift(g1) lift(g2) = c lift(g1 g2)
  double modulus_defect;  ///< | |c| - 1 |
};

inline Multiplier multiplier(const SpacePtr& space, const OneParticleOperator& g1, const OneParticleOperator& g2) {
  const Implementer a = implement(space, g1);
  const Implementer b = implement(space, g2);
  const Implementer ab = implement(space, g1 * g2);
  const Vector psi = fock::vacuum(space).amplitudes;
  const Vector lhs = a.lift.matrix * (b.lift.matrix * psi);
  const Vector rhs = ab.lift.matrix * psi;
  const cplx c = rhs.dot(lhs);
  return {c, std::abs(std::abs(c) - 1.0)};
}

/// | c(g1,g2) c(g1g2,g3) - c(g2,g3) c(g1,g2g3) |
inline double cocycle_identity_residual(const SpacePtr& space, const OneParticleOperator& g1,
                                        const OneParticleOperator& g2, const OneParticleOperator& g3) {
  const cplx lhs = multiplier(space, g1, g2).value * multiplier(space, g1 * g2, g3).value;
  const cplx rhs = multiplier(space, g2, g3).value * multiplier(space, g1, g2 * g3).value;
  return std::abs(lhs - rhs);
}

struct SchwingerValue {
  cplx fock;                            ///< <vac, ([dG(x), dG(y)] - dG([x,y])) vac>
  cplx trace;                           ///< tr(x_{-+} y_{+-} - y_{-+} x_{+-})
  std::optional<double> scalar_defect;  ///< max-norm of the commutator anomaly minus fock * 1
};

/// tr(x_{-+} y_{+-} - y_{-+} x_{+-}) over the truncated blocks.
inline cplx schwinger_trace(const OneParticleOperator& x, const OneParticleOperator& y) {
  const auto bx = modes::block_decompose(x);
  const auto by = modes::block_decompose(y);
  return (bx.mp * by.pm).trace() - (by.mp * bx.pm).trace();
}

/**
 * Schwinger term of two Hermitian currents on a d = 1 basis, computed from
 * Fock-space commutators and from the block-trace formula.  The full-operator
 * check that the anomaly is a multiple of 1 runs up to the dense mode cap.
 */
inline SchwingerValue schwinger_term(const SpacePtr& space, const OneParticleOperator& x, const OneParticleOperator& y) {
  check_basis(space, x, "schwinger_term");
  check_basis(space, y, "schwinger_term");
  if (x.basis->dimension() != 1) throw std::invalid_argument("schwinger_term: requires a d = 1 basis");
  if (!x.is_hermitian() || !y.is_hermitian()) throw std::invalid_argument("schwinger_term: currents must be Hermitian");
  const FockOperator dx = second_quantize(space, x.entries);
  const FockOperator dy = second_quantize(space, y.entries);
  const Vector psi = fock::vacuum(space).amplitudes;
  const Vector xpsi = dx.matrix * psi, ypsi = dy.matrix * psi;
  const Vector xdag_psi = dx.adjoint().matrix * psi, ydag_psi = dy.adjoint().matrix * psi;
  const cplx bracket_part = second_quantize(space, commutator(x.entries, y.entries)).matrix.coeff(
      static_cast<Eigen::Index>(space->vacuum_mask()), static_cast<Eigen::Index>(space->vacuum_mask()));
  SchwingerValue out;
  out.fock = xdag_psi.dot(ypsi) - ydag_psi.dot(xpsi) - bracket_part;
  out.trace = schwinger_trace(x, y);
  if (space->modes() <= fock::dense_mode_cap) {
    const SparseMatrix anomaly = dx.matrix * dy.matrix - dy.matrix * dx.matrix -
                                 second_quantize(space, commutator(x.entries, y.entries)).matrix;
    out.scalar_defect = max_abs(Matrix(Matrix(anomaly) - out.fock * FockOperator::identity(space).to_dense()));
  }
  return out;
}

}  // namespace cmfock::bogoliubov
