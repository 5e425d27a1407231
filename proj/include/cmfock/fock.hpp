// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Truncated fermionic Fock space over a ModeBasis, filled-sea vacuum, CAR generators.
 *
 * States are indexed by occupation bitmask (bit i = mode i).  Creation
 * operators carry the Jordan-Wigner sign (-1)^{#occupied modes below i}.
 */

#pragma once

#include "cmfock/modes.hpp"

#include <bit>

namespace cmfock::fock {

using modes::BasisPtr;
using modes::Sign;

inline constexpr int default_mode_cap = 16;
inline constexpr int dense_mode_cap = 12;

class FockSpace {
 public:
  static std::shared_ptr<const FockSpace> create(BasisPtr basis, int mode_cap = default_mode_cap) {
    if (!basis) throw std::invalid_argument("FockSpace: null basis");
    const int n = static_cast<int>(basis->size());
    if (mode_cap > 30) throw std::invalid_argument("FockSpace: mode cap above 30 is not addressable");
    if (n > mode_cap)
      throw std::invalid_argument("FockSpace: " + std::to_string(n) + " modes exceeds the cap of " +
                                  std::to_string(mode_cap));
    return std::shared_ptr<const FockSpace>(new FockSpace(std::move(basis), n));
  }

  int modes() const { return n_; }
  std::size_t dimension() const { return std::size_t{1} << n_; }
  std::uint64_t vacuum_mask() const { return vacuum_; }
  const BasisPtr& basis() const { return basis_; }

 private:
  FockSpace(BasisPtr basis, int n) : basis_(std::move(basis)), n_(n) {
    for (int i = 0; i < n_; ++i)
      if (basis_->mode(i).sign == Sign::minus) vacuum_ |= std::uint64_t{1} << i;
  }

  BasisPtr basis_;
  int n_ = 0;
  std::uint64_t vacuum_ = 0;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

/// (-1)^{number of occupied modes strictly below `mode`}
inline double jw_sign(std::uint64_t state, int mode) {
  const std::uint64_t below = state & ((std::uint64_t{1} << mode) - 1);
  return (std::popcount(below) & 1) ? -1.0 : 1.0;
}

struct FockVector {
  SpacePtr space;
  Vector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

struct FockOperator {
  SpacePtr space;
  SparseMatrix matrix;

  static FockOperator identity(const SpacePtr& s) {
    const auto dim = static_cast<Eigen::Index>(s->dimension());
    SparseMatrix id(dim, dim);
    id.setIdentity();
    return {s, id};
  }
  static FockOperator zero(const SpacePtr& s) {
    const auto dim = static_cast<Eigen::Index>(s->dimension());
    return {s, SparseMatrix(dim, dim)};
  }

  FockOperator adjoint() const { return {space, SparseMatrix(matrix.adjoint())}; }
  FockVector apply(const FockVector& v) const { return {space, matrix * v.amplitudes}; }

  /// Dense copy; only offered up to the dense cap.
  Matrix to_dense() const {
    if (space->modes() > dense_mode_cap) throw std::invalid_argument("FockOperator: too many modes for dense form");
    return Matrix(matrix);
  }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    return {a.space, SparseMatrix((a.matrix * b.matrix).pruned())};
  }
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b) { return {a.space, a.matrix + b.matrix}; }
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b) { return {a.space, a.matrix - b.matrix}; }
  friend FockOperator operator*(cplx s, const FockOperator& a) { return {a.space, s * a.matrix}; }
};

inline FockVector basis_state(const SpacePtr& space, std::uint64_t mask) {
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(space->dimension()));
  amp(static_cast<Eigen::Index>(mask)) = 1.0;
  return {space, amp};
}

/// The filled Dirac sea: every negative-polarization mode occupied; norm 1.
inline FockVector vacuum(const SpacePtr& space) { return basis_state(space, space->vacuum_mask()); }

inline void check_length(const SpacePtr& space, const Vector& v, const char* who) {
  if (v.size() != space->modes()) throw std::invalid_argument(std::string(who) + ": mode vector has wrong length");
}

/// a*(v) = sum_i v_i a*_i; linear in v.
inline FockOperator creation(const SpacePtr& space, const Vector& v) {
  check_length(space, v, "creation");
  const int n = space->modes();
  const auto dim = static_cast<std::uint64_t>(space->dimension());
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int i = 0; i < n; ++i) {
    if (v(i) == cplx{}) continue;
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (std::uint64_t b = 0; b < dim; ++b)
      if (!(b & bit))
        trips.emplace_back(static_cast<int>(b | bit), static_cast<int>(b), v(i) * jw_sign(b, i));
  }
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  return {space, m};
}

/// a(v) = (a*(v))*; antilinear in v.
inline FockOperator annihilation(const SpacePtr& space, const Vector& v) {
  check_length(space, v, "annihilation");
  return creation(space, v).adjoint();
}

inline Vector unit_vector(int n, int i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

struct CarResidual {
  double mixed = 0.0;         ///< a*(v)a(u) + a(u)a*(v) - <u,v> 1
  double creation_pair = 0.0;  ///< {a*(u), a*(v)}
  double annihilation_pair = 0.0;  ///< {a(u), a(v)}
  double max() const { return std::max({mixed, creation_pair, annihilation_pair}); }
};

/// Residuals of the canonical anticommutation relations for one pair; <u,v> is antilinear in u.
inline CarResidual check_car(const SpacePtr& space, const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw std::invalid_argument("check_car: vectors differ in length");
  const auto cu = creation(space, u), cv = creation(space, v);
  const auto au = cu.adjoint(), av = cv.adjoint();
  const cplx inner = u.dot(v);
  CarResidual r;
  r.mixed = max_abs(SparseMatrix(cv.matrix * au.matrix + au.matrix * cv.matrix -
                                 inner * FockOperator::identity(space).matrix));
  r.creation_pair = max_abs(SparseMatrix(cu.matrix * cv.matrix + cv.matrix * cu.matrix));
  r.annihilation_pair = max_abs(SparseMatrix(au.matrix * av.matrix + av.matrix * au.matrix));
  return r;
}

/// max over basis directions u in H-, v in H+ of |a*(u) state| and |a(v) state|.
inline double vacuum_residual(const FockVector& state) {
  const auto& space = state.space;
  const int n = space->modes();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vector e = unit_vector(n, i);
    const bool sea = space->basis()->mode(i).sign == Sign::minus;
    const FockOperator op = sea ? creation(space, e) : annihilation(space, e);
    worst = std::max(worst, op.apply(state).norm());
  }
  return worst;
}

inline double check_vacuum(const SpacePtr& space) { return vacuum_residual(vacuum(space)); }

/// sum_i a*_i a_i
inline FockOperator number_operator(const SpacePtr& space) {
  const auto dim = static_cast<Eigen::Index>(space->dimension());
  std::vector<Eigen::Triplet<cplx>> trips;
  for (std::uint64_t b = 0; b < space->dimension(); ++b)
    trips.emplace_back(static_cast<int>(b), static_cast<int>(b), double(std::popcount(b)));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return {space, m};
}

/// Occupation bitmasks grouped by particle number.
inline std::vector<std::vector<std::uint64_t>> particle_sectors(const SpacePtr& space) {
  std::vector<std::vector<std::uint64_t>> out(space->modes() + 1);
  for (std::uint64_t b = 0; b < space->dimension(); ++b) out[std::popcount(b)].push_back(b);
  return out;
}

}  // namespace cmfock::fock
