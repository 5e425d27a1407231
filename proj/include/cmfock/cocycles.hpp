// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file cocycles.hpp
 * @brief The potential-dependent 2-cocycle theta(A; x, y) = k int tr(A [dx, dy]) on the ball,
 *        its cocycle-condition residual, and the boundary coboundary term.
 *
 * [dx, dy] = dx^dy - dy^dx: wedge on the form parts, ungraded commutator on the
 * matrix parts.  For anti-Hermitian A, x, y the integral is purely imaginary,
 * so with the default level k = i / (12 pi^2) theta itself is real.
 */

#pragma once

#include "cmfock/geometry.hpp"

namespace cmfock::cocycles {

using geometry::GaugePotential;
using geometry::LieForm;

struct Level {
  cplx k = I / (12.0 * pi * pi);

  /// Basic level for the defining representation of SU(n).
  static Level defining() { return {}; }
  static Level custom(cplx k) {
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()) || k == cplx{})
      throw std::invalid_argument("Level: k must be finite and nonzero");
    return {k};
  }
};

struct CocycleValue {
  cplx value;             ///< k * integral
  cplx integral;          ///< int tr(A [dx, dy])
  std::uint64_t fingerprint = 0;

  /// Purely imaginary integral, as required for anti-Hermitian inputs.
  bool imaginary_integral() const { return std::abs(integral.real()) < 1e-10 * std::abs(integral) + 1e-14; }
};

inline constexpr double anti_hermitian_tolerance = 1e-10;

namespace detail {

inline void require(const LieForm& f, int degree, const char* what) {
  if (f.degree() != degree) throw std::invalid_argument(std::string(what) + " has the wrong degree");
  if (f.anti_hermitian_defect() > anti_hermitian_tolerance)
    throw std::invalid_argument(std::string(what) + " is not anti-Hermitian");
}

inline void same_grid(const LieForm& a, const LieForm& b) {
  geometry::check_same_grid(a.grid(), b.grid(), "cocycle");
  if (a.fiber_dim() != b.fiber_dim()) throw std::invalid_argument("cocycle: fiber mismatch");
}

/// int tr(A ^ [dx, dy]) from precomputed differentials.
inline cplx theta_integral(const GaugePotential& a, const LieForm& dx, const LieForm& dy) {
  return geometry::integrate3(geometry::wedge(a, geometry::bracket(dx, dy)));
}

inline std::uint64_t combine(std::initializer_list<std::uint64_t> parts, cplx k) {
  std::vector<std::uint64_t> all(parts);
  std::uint64_t h = fnv1a(all.data(), all.size() * sizeof(std::uint64_t));
  return fnv1a(&k, sizeof(k), h);
}

}  // namespace detail

inline CocycleValue mf_cocycle(const GaugePotential& a, const LieForm& x, const LieForm& y, Level level = {}) {
  detail::require(a, 1, "potential");
  detail::require(x, 0, "x");
  detail::require(y, 0, "y");
  detail::same_grid(a, x);
  detail::same_grid(a, y);
  const cplx integral = detail::theta_integral(a, geometry::d(x), geometry::d(y));
  CocycleValue out{level.k * integral, integral, detail::combine({a.fingerprint(), x.fingerprint(), y.fingerprint()}, level.k)};
  if (!out.imaginary_integral()) throw std::domain_error("mf_cocycle: integral is not purely imaginary");
  return out;
}

/**
 * |sum_cyclic (L_x theta(A; y, z) - theta(A; [x, y], z))| where L_x is the
 * centred difference along A -> A^{exp(+-eps x)}.  Expected to vanish as
 * O(h^p + eps^2) for x, y, z supported inside the ball.
 */
inline double cocycle_residual(const GaugePotential& a, const LieForm& x, const LieForm& y, const LieForm& z,
                               Level level = {}, double epsilon = 0.05) {
  if (!(epsilon > 0.0 && epsilon <= 0.1)) throw std::invalid_argument("cocycle_residual: epsilon must be in (0, 0.1]");
  detail::require(a, 1, "potential");
  detail::require(x, 0, "x");
  detail::require(y, 0, "y");
  detail::require(z, 0, "z");
  for (const LieForm* f : {&x, &y, &z}) detail::same_grid(a, *f);

  const std::array<const LieForm*, 3> fields{&x, &y, &z};
  std::array<LieForm, 3> diffs{geometry::d(x), geometry::d(y), geometry::d(z)};
  cplx total = 0.0;
  for (int c = 0; c < 3; ++c) {
    const LieForm& u = *fields[c];
    const LieForm& dv = diffs[(c + 1) % 3];
    const LieForm& dw = diffs[(c + 2) % 3];
    const auto plus = geometry::gauge_action(a, geometry::exponentiate(u, epsilon));
    const auto minus = geometry::gauge_action(a, geometry::exponentiate(u, -epsilon));
    const cplx lie = (detail::theta_integral(plus, dv, dw) - detail::theta_integral(minus, dv, dw)) / (2.0 * epsilon);
    const LieForm uv = geometry::bracket(u, *fields[(c + 1) % 3]);
    total += lie - detail::theta_integral(a, geometry::d(uv), dw);
  }
  return std::abs(level.k * total);
}

/// x [dy, dz] - y [dz, dx] + z [dx, dy] as a 2-form.
inline LieForm coboundary_form(const LieForm& x, const LieForm& y, const LieForm& z) {
  for (const LieForm* f : {&x, &y, &z})
    if (f->degree() != 0) throw std::invalid_argument("coboundary: arguments must be 0-forms");
  detail::same_grid(x, y);
  detail::same_grid(x, z);
  const auto dx = geometry::d(x), dy = geometry::d(y), dz = geometry::d(z);
  return geometry::wedge(x, geometry::bracket(dy, dz)) - geometry::wedge(y, geometry::bracket(dz, dx)) +
         geometry::wedge(z, geometry::bracket(dx, dy));
}

/// k int over the boundary sphere of tr(x [dy, dz] - y [dz, dx] + z [dx, dy]).
inline cplx coboundary_boundary_term(const LieForm& x, const LieForm& y, const LieForm& z, Level level = {}) {
  return level.k * geometry::integrate_boundary(coboundary_form(x, y, z));
}

/// The same quantity through the bulk: k int_B d(...), the discrete Stokes evaluation.
inline cplx coboundary_stokes(const LieForm& x, const LieForm& y, const LieForm& z, Level level = {}) {
  return level.k * geometry::integrate3(geometry::d(coboundary_form(x, y, z)));
}

}  // namespace cmfock::cocycles
