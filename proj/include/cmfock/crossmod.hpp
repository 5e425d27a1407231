// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file crossmod.hpp
 * @brief Twisted 1-cocycle omega(g; A) = T_A^-1 g T_{A^g}, the automorphisms it
 *        generates on functions of the base point with values in the CAR
 *        algebra, extension elements, and crossed-module axiom checks.
 *
 * Gauge potentials are always parametrized by a base map f with A = f^-1 df,
 * and A^g is realized as the potential of f g.  Maps are kept in closed form so
 * that products, grid samples and torus samples compose exactly.
 */

#pragma once

#include "cmfock/bogoliubov.hpp"
#include "cmfock/geometry.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace cmfock::crossmod {

using bogoliubov::FockOperator;
using fock::SpacePtr;
using geometry::BoundaryTest;
using geometry::GaugePotential;
using geometry::GridPtr;
using geometry::GroupMap;
using geometry::LieMatrix;
using geometry::MapClass;
using geometry::Point;
using modes::BasisPtr;
using modes::OneParticleOperator;

/// Closed-form map B^3 -> U(m).  Products and inverses act pointwise.
class BallMap {
 public:
  using Fn = std::function<LieMatrix(const Point&)>;

  BallMap(std::string name, int m, Fn fn) : name_(std::move(name)), m_(m), fn_(std::make_shared<Fn>(std::move(fn))) {
    if (m < 1 || m > 4) throw std::invalid_argument("BallMap: fiber dimension must be in 1..4");
  }

  static BallMap preset(const std::string& spec) {
    auto p = geometry::map_preset(spec);
    return {p.name, p.fiber_dim, std::move(p.value)};
  }
  static BallMap identity(int m) {
    return {"identity", m, [m](const Point&) -> LieMatrix { return LieMatrix::Identity(m, m); }};
  }

  const std::string& name() const { return name_; }
  int fiber_dim() const { return m_; }
  LieMatrix operator()(const Point& p) const { return (*fn_)(p); }

  BallMap inverse() const {
    auto fn = fn_;
    return {"(" + name_ + ")^-1", m_, [fn](const Point& p) -> LieMatrix { return (*fn)(p).adjoint(); }};
  }

  friend BallMap operator*(const BallMap& a, const BallMap& b) {
    if (a.m_ != b.m_) throw std::invalid_argument("BallMap product: fiber mismatch");
    auto fa = a.fn_, fb = b.fn_;
    return {a.name_ + "*" + b.name_, a.m_, [fa, fb](const Point& p) -> LieMatrix { return (*fa)(p) * (*fb)(p); }};
  }

  GroupMap on(const GridPtr& grid, BoundaryTest test = {}) const {
    return GroupMap::from_function(grid, m_, *fn_, test);
  }

 private:
  std::string name_;
  int m_ = 1;
  std::shared_ptr<Fn> fn_;
};

/**
 * Fixed identification of torus lattice points with points of the ball.
 * d = 1: the loop t -> ((1 + cos t) / 2, sin t / 2, 0), which passes through the
 * centre and meets the boundary sphere only at t = 0.
 * d = 3: the cube [0, 2 pi)^3, recentred to [-1, 1)^3 and pushed radially onto
 * the ball; the faces at x_c = 0 land on the boundary sphere.
 */
inline Point torus_to_ball(int d, const modes::Point& x) {
  if (d == 1) return {0.5 * (1.0 + std::cos(x[0])), 0.5 * std::sin(x[0]), 0.0};
  Point u{x[0] / pi - 1.0, x[1] / pi - 1.0, x[2] / pi - 1.0};
  const double inf = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2])});
  const double two = geometry::norm(u);
  if (two == 0.0) return {0.0, 0.0, 0.0};
  for (double& c : u) c *= inf / two;
  return u;
}

/// Periodic multiplication operator of g transported to the torus lattice of `basis`.
inline OneParticleOperator multiplication(const BallMap& g, const BasisPtr& basis) {
  if (g.fiber_dim() != basis->internal_dim())
    throw std::invalid_argument("multiplication: map fiber does not match the basis internal dimension");
  std::vector<Matrix> samples;
  for (const auto& x : modes::lattice_points(basis->dimension(), basis->cutoff()))
    samples.emplace_back(g(torus_to_ball(basis->dimension(), x)));
  return modes::periodic_multiplication_operator(samples, basis);
}

/// A point f of the flattened ball group together with A = f^-1 df on a grid.
class SectionPoint {
 public:
  static SectionPoint at(BallMap f, GridPtr grid) {
    GaugePotential a = geometry::maurer_cartan(f.on(grid));
    return SectionPoint(std::move(f), std::move(grid), std::move(a));
  }

  const BallMap& map() const { return f_; }
  const GridPtr& grid() const { return grid_; }
  const GaugePotential& potential() const { return a_; }

  /// The point f g, whose potential is the gauge transform A^g.
  SectionPoint shifted(const BallMap& g) const { return at(f_ * g, grid_); }

 private:
  SectionPoint(BallMap f, GridPtr grid, GaugePotential a) : f_(std::move(f)), grid_(std::move(grid)), a_(std::move(a)) {}

  BallMap f_;
  GridPtr grid_;
  GaugePotential a_;
};

/// A family A -> T_A of one-particle unitaries, cached by potential fingerprint.
class OmegaFamily {
 public:
  using Generator = std::function<Matrix(const GaugePotential&)>;

  OmegaFamily(std::string tag, BasisPtr basis, Generator generator)
      : tag_(std::move(tag)), basis_(std::move(basis)), generator_(std::move(generator)),
        cache_(std::make_shared<Cache>()) {
    if (!basis_) throw std::invalid_argument("OmegaFamily: null basis");
  }

  static OmegaFamily identity(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    return {"identity", basis, [n](const GaugePotential&) -> Matrix { return Matrix::Identity(n, n); }};
  }

  /// T_A = exp(P- M P+ - P+ M* P-) with M = strength * contraction(A).
  static OmegaFamily quadratic(BasisPtr basis, double strength = 0.5);

  const std::string& tag() const { return tag_; }
  const BasisPtr& basis() const { return basis_; }

  OneParticleOperator operator()(const GaugePotential& a) const {
    const std::uint64_t key = a.fingerprint();
    {
      std::shared_lock lock(cache_->mutex);
      if (auto it = cache_->values.find(key); it != cache_->values.end()) return {basis_, it->second};
    }
    Matrix t = generator_(a);
    if (!is_unitary(t, 1e-10)) throw std::domain_error("OmegaFamily " + tag_ + ": T_A is not unitary");
    std::unique_lock lock(cache_->mutex);
    return {basis_, cache_->values.emplace(key, std::move(t)).first->second};
  }

  std::size_t cache_size() const {
    std::shared_lock lock(cache_->mutex);
    return cache_->values.size();
  }

 private:
  struct Cache {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, Matrix> values;
  };

  std::string tag_;
  BasisPtr basis_;
  Generator generator_;
  std::shared_ptr<Cache> cache_;
};

/**
 * Linear map from potentials to mode-space matrices:
 * M_ij = sum_n w_n exp(-i pi (p_i - p_j) . k(x_n)) <s_i|s_j> (A_x + A_y / 2 - A_z / 4)(x_n)_{a_i a_j}
 * with k(x) = x for d = 3 and k(x) = x + 0.7 y + 0.3 z for d = 1.
 */
inline Matrix contraction(const GaugePotential& a, const modes::ModeBasis& basis) {
  if (a.degree() != 1) throw std::invalid_argument("contraction: potential must be a 1-form");
  const int m = basis.internal_dim();
  if (a.fiber_dim() != m) throw std::invalid_argument("contraction: fiber does not match the basis");
  const auto& grid = *a.grid();
  const int d = basis.dimension();
  const int reach = 2 * basis.cutoff();
  const int side = 2 * reach + 1;
  std::size_t count = 1;
  for (int c = 0; c < d; ++c) count *= side;
  std::vector<Matrix> table(count, Matrix::Zero(m, m));
  constexpr std::array<double, 3> weights{1.0, 0.5, -0.25};
  std::vector<cplx> phase_x(side), phase_y(side), phase_z(side);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    Matrix local = Matrix::Zero(m, m);
    for (int c = 0; c < 3; ++c) local += weights[c] * Matrix(a.at(n, c));
    local *= grid.volume_weight(n);
    Point x = grid.position(n);
    if (d == 1) x[0] += 0.7 * x[1] + 0.3 * x[2];
    for (int q = -reach; q <= reach; ++q) {
      phase_x[q + reach] = std::exp(-I * (pi * q * x[0]));
      phase_y[q + reach] = std::exp(-I * (pi * q * x[1]));
      phase_z[q + reach] = std::exp(-I * (pi * q * x[2]));
    }
    for (std::size_t slot = 0; slot < count; ++slot) {
      std::size_t rest = slot;
      cplx ph = 1.0;
      const std::array<std::vector<cplx>*, 3> axes{&phase_x, &phase_y, &phase_z};
      for (int c = d - 1; c >= 0; --c) {
        ph *= (*axes[c])[rest % side];
        rest /= side;
      }
      table[slot] += ph * local;
    }
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& mi = basis.mode(i);
      const auto& mj = basis.mode(j);
      const auto q = modes::detail::difference(mi.momentum, mj.momentum);
      std::size_t slot = 0;
      for (int c = 0; c < d; ++c) slot = slot * side + static_cast<std::size_t>(q[c] + reach);
      const auto ki = *basis.momentum_index(mi.momentum), kj = *basis.momentum_index(mj.momentum);
      out(i, j) = basis.spinor_overlap(ki, mi.spinor, kj, mj.spinor) * table[slot](mi.internal, mj.internal);
    }
  return out;
}

inline OmegaFamily OmegaFamily::quadratic(BasisPtr basis, double strength) {
  if (!std::isfinite(strength)) throw std::invalid_argument("OmegaFamily::quadratic: strength must be finite");
  auto b = basis;
  return {"quadratic", std::move(basis), [b, strength](const GaugePotential& a) -> Matrix {
            auto k = modes::block_decompose({b, strength * contraction(a, *b)});
            k.pp.setZero();
            k.mm.setZero();
            k.pm = -k.mp.adjoint();
            return exp_antihermitian(k.reassemble());
          }};
}

/// omega(g; A) = T_A^-1 mult(g) T_{A^g} at the point carrying A.
inline OneParticleOperator omega(const BallMap& g, const SectionPoint& point, const OmegaFamily& family) {
  const auto t = family(point.potential());
  const auto t_shift = family(point.shifted(g).potential());
  return t.adjoint() * multiplication(g, family.basis()) * t_shift;
}

/// || omega(g1; A) omega(g2; A^g1) - omega(g1 g2; A) ||
inline double check_one_cocycle(const BallMap& g1, const BallMap& g2, const SectionPoint& point,
                                const OmegaFamily& family) {
  const auto lhs = omega(g1, point, family) * omega(g2, point.shifted(g1), family);
  const auto rhs = omega(g1 * g2, point, family);
  return operator_norm(Matrix(lhs.entries - rhs.entries));
}

// ---------------------------------------------------------------------------
// Automorphisms of functions F: B3G -> CAR algebra, generated by a*(x).

/// F(f) = a*(x(f)), stored as the mode vector x(f).
using CarSection = std::function<Vector(const SectionPoint&)>;

inline CarSection constant_section(Vector x) {
  return [x = std::move(x)](const SectionPoint&) { return x; };
}

/**
 * (phi F)(f) = U(f) F(f k): argument shift by k, then a*(x) -> a*(U x).
 * `lift` optionally carries a Fock implementer of U(f).
 */
struct Automorphism {
  BallMap shift;
  std::function<OneParticleOperator(const SectionPoint&)> unitary;
  std::function<FockOperator(const SectionPoint&)> lift;
};

inline CarSection apply_to(const Automorphism& phi, CarSection section) {
  return [phi, section = std::move(section)](const SectionPoint& p) -> Vector {
    return phi.unitary(p).entries * section(p.shifted(phi.shift));
  };
}

/// phi1 o phi2
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism out{a.shift * b.shift,
                   [a, b](const SectionPoint& p) { return a.unitary(p) * b.unitary(p.shifted(a.shift)); }, {}};
  if (a.lift && b.lift)
    out.lift = [a, b](const SectionPoint& p) { return a.lift(p) * b.lift(p.shifted(a.shift)); };
  return out;
}

inline Automorphism inverse(const Automorphism& a) {
  const BallMap back = a.shift.inverse();
  Automorphism out{back, [a, back](const SectionPoint& p) { return a.unitary(p.shifted(back)).adjoint(); }, {}};
  if (a.lift) out.lift = [a, back](const SectionPoint& p) { return a.lift(p.shifted(back)).adjoint(); };
  return out;
}

/// Implementer of omega(g; A); unique up to phase.
inline FockOperator omega_lift(const BallMap& g, const SectionPoint& point, const OmegaFamily& family,
                               const SpacePtr& space) {
  return bogoliubov::implement(space, omega(g, point, family)).lift;
}

/// alpha_h for h in B3G: shift by h and a*(x) -> a*(omega(h; A) x).
inline Automorphism outer(const BallMap& h, const OmegaFamily& family, SpacePtr space = nullptr) {
  Automorphism out{h, [h, family](const SectionPoint& p) { return omega(h, p, family); }, {}};
  if (space) out.lift = [h, family, space](const SectionPoint& p) { return omega_lift(h, p, family, space); };
  return out;
}

/// beta_g for g in the 3-loop group: conjugation by the implementer of omega(g; .), with the same shift.
inline Automorphism inner(const BallMap& g, const OmegaFamily& family, SpacePtr space = nullptr) {
  return outer(g, family, std::move(space));
}

/// (g . v)(f) = omega(g; A_f) v(f g).
inline Vector act_on_section(const BallMap& g, const CarSection& section, const SectionPoint& point,
                             const OmegaFamily& family) {
  return apply_to(inner(g, family), section)(point);
}

/// max over entries of L - c R for the best unit c; zero iff L and R agree up to one global phase.
inline double ray_distance(const Matrix& l, const Matrix& r) {
  const cplx overlap = (r.adjoint() * l).trace();
  const cplx c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0};
  return max_abs(Matrix(l - c * r));
}

struct Compatibility {
  double one_particle = 0.0;            ///< |(alpha_h^-1 o beta_g o alpha_h) a*(x) - a*(omega(h^-1 g h; A) x)|
  std::optional<double> fock_mod_phase;  ///< same comparison between Fock implementers, modulo a phase
};

/**
 * Both sides of the compatibility condition at `point`: the left side by
 * composing the three automorphisms literally, the right side by one
 * evaluation of omega(h^-1 g h; A).
 */
inline Compatibility compatibility_residual(const BallMap& h, const BallMap& g, const SectionPoint& point,
                                            const Vector& x, const OmegaFamily& family, SpacePtr space = nullptr) {
  const GroupMap gs = g.on(point.grid());
  if (!gs.based() || !gs.flat_boundary())
    throw std::invalid_argument("compatibility_residual: g must be based and flat at the boundary");
  if (!h.on(point.grid()).flat_boundary())
    throw std::invalid_argument("compatibility_residual: h must be flat at the boundary");
  if (x.size() != static_cast<Eigen::Index>(family.basis()->size()))
    throw std::invalid_argument("compatibility_residual: mode vector has wrong length");

  const Automorphism alpha = outer(h, family, space);
  const Automorphism chain = compose(compose(inverse(alpha), inner(g, family, space)), alpha);
  const BallMap conj = h.inverse() * g * h;
  Compatibility out;
  out.one_particle = (apply_to(chain, constant_section(x))(point) - omega(conj, point, family).entries * x).norm();
  if (space) {
    const Matrix lhs(chain.lift(point).matrix);
    const Matrix rhs(omega_lift(conj, point, family, space).matrix);
    out.fock_mod_phase = ray_distance(lhs, rhs);
  }
  return out;
}

/// The three-factor product with omega(h; A) in the first slot instead of omega(h^-1; A).
inline double uncorrected_chain_residual(const BallMap& h, const BallMap& g, const SectionPoint& point,
                                         const Vector& x, const OmegaFamily& family) {
  const SectionPoint back = point.shifted(h.inverse());
  const Vector lhs = omega(h, point, family).entries *
                     (omega(g, back, family).entries * (omega(h, back.shifted(g), family).entries * x));
  return (lhs - omega(h.inverse() * g * h, point, family).entries * x).norm();
}

// ---------------------------------------------------------------------------
// Extension elements.

/// (f, phase): a base map and a unit-modulus function of the section point.
struct HatElement {
  BallMap base;
  std::function<cplx(const SectionPoint&)> phase;
};

inline BallMap project(const HatElement& e) { return e.base; }

inline HatElement section(BallMap f) {
  return {std::move(f), [](const SectionPoint&) { return cplx{1.0}; }};
}

/**
 * The abelian extension realized on Fock space: (g, phi) acts at A as
 * phi(A) * lift(omega(g; A)).  The twist c(g1, g2; A) is the phase in
 * lift(omega(g1; A)) lift(omega(g2; A^g1)) = c lift(omega(g1 g2; A)).
 */
class Extension {
 public:
  Extension(OmegaFamily family, SpacePtr space) : family_(std::move(family)), space_(std::move(space)) {
    if (!space_->basis()->same_as(*family_.basis()))
      throw std::invalid_argument("Extension: Fock space and family use different bases");
  }

  const OmegaFamily& family() const { return family_; }
  const SpacePtr& space() const { return space_; }

  cplx twist(const BallMap& g1, const BallMap& g2, const SectionPoint& point) const {
    const Vector psi = fock::vacuum(space_).amplitudes;
    const Vector lhs = lift_of(g1, point).matrix * (lift_of(g2, point.shifted(g1)).matrix * psi);
    const Vector rhs = lift_of(g1 * g2, point).matrix * psi;
    return rhs.dot(lhs);
  }

  /// (g1, phi1)(g2, phi2) = (g1 g2, phi1(A) phi2(A^g1) c(g1, g2; A))
  HatElement multiply(const HatElement& a, const HatElement& b) const {
    auto self = *this;
    return {a.base * b.base, [self, a, b](const SectionPoint& p) {
              return a.phase(p) * b.phase(p.shifted(a.base)) * self.twist(a.base, b.base, p);
            }};
  }

  FockOperator represent(const HatElement& e, const SectionPoint& point) const {
    return e.phase(point) * lift_of(e.base, point);
  }

 private:
  FockOperator lift_of(const BallMap& g, const SectionPoint& point) const {
    return omega_lift(g, point, family_, space_);
  }

  OmegaFamily family_;
  SpacePtr space_;
};

// ---------------------------------------------------------------------------
// Finite crossed modules of matrix groups.

/**
 * delta: H -> G and the right action h^g = alpha(g, h), checked on sampled
 * elements.  Axioms: h^{delta(h')} = h'^-1 h h' and delta(h^g) = g^-1 delta(h) g.
 */
struct FiniteCrossedModule {
  std::string name;
  std::vector<Matrix> g_elements;
  std::vector<Matrix> h_elements;
  std::function<Matrix(const Matrix&)> delta;
  std::function<Matrix(const Matrix& g, const Matrix& h)> alpha;
};

inline Matrix group_inverse(const Matrix& u) { return u.adjoint(); }

inline double peiffer_residual(const FiniteCrossedModule& cm, const Matrix& h, const Matrix& h2) {
  return max_abs(Matrix(cm.alpha(cm.delta(h2), h) - group_inverse(h2) * h * h2));
}

inline double equivariance_residual(const FiniteCrossedModule& cm, const Matrix& g, const Matrix& h) {
  return max_abs(Matrix(cm.delta(cm.alpha(g, h)) - group_inverse(g) * cm.delta(h) * g));
}

struct AxiomReport {
  double peiffer = 0.0;
  double equivariance = 0.0;
  double delta_homomorphism = 0.0;
  double alpha_automorphism = 0.0;  ///< (h1 h2)^g vs h1^g h2^g
  double alpha_action = 0.0;        ///< (h^g1)^g2 vs h^{g1 g2}
  double max() const { return std::max({peiffer, equivariance, delta_homomorphism, alpha_automorphism, alpha_action}); }
};

/// Every axiom over all sampled pairs and triples.
inline AxiomReport check_axioms(const FiniteCrossedModule& cm) {
  AxiomReport r;
  for (const auto& h : cm.h_elements)
    for (const auto& h2 : cm.h_elements) {
      r.peiffer = std::max(r.peiffer, peiffer_residual(cm, h, h2));
      r.delta_homomorphism = std::max(r.delta_homomorphism, max_abs(Matrix(cm.delta(h * h2) - cm.delta(h) * cm.delta(h2))));
      for (const auto& g : cm.g_elements)
        r.alpha_automorphism =
            std::max(r.alpha_automorphism, max_abs(Matrix(cm.alpha(g, h * h2) - cm.alpha(g, h) * cm.alpha(g, h2))));
    }
  for (const auto& g : cm.g_elements)
    for (const auto& h : cm.h_elements) {
      r.equivariance = std::max(r.equivariance, equivariance_residual(cm, g, h));
      for (const auto& g2 : cm.g_elements)
        r.alpha_action = std::max(r.alpha_action, max_abs(Matrix(cm.alpha(g2, cm.alpha(g, h)) - cm.alpha(g * g2, h))));
    }
  return r;
}

/// The 16-element Pauli group {i^k P}, exact in floating point.
inline std::vector<Matrix> pauli_group() {
  std::vector<Matrix> out;
  const auto& s = geometry::pauli();
  const std::array<Matrix, 4> base{Matrix::Identity(2, 2), Matrix(s[0]), Matrix(s[1]), Matrix(s[2])};
  const std::array<cplx, 4> units{1.0, I, -1.0, -I};
  for (const auto& u : units)
    for (const auto& p : base) out.push_back(u * p);
  return out;
}

/// H = G = Pauli group, delta = identity, alpha = right conjugation.
inline FiniteCrossedModule conjugation_module() {
  auto g = pauli_group();
  return {"conjugation", g, g, [](const Matrix& h) { return h; },
          [](const Matrix& g, const Matrix& h) -> Matrix { return g.adjoint() * h * g; }};
}

/// H = {1, i, -1, -i} acting trivially, delta = 1.
inline FiniteCrossedModule trivial_module() {
  std::vector<Matrix> h;
  for (cplx u : {cplx{1.0}, I, cplx{-1.0}, -I}) h.push_back(Matrix::Constant(1, 1, u));
  return {"trivial", pauli_group(), h, [](const Matrix&) -> Matrix { return Matrix::Identity(2, 2); },
          [](const Matrix&, const Matrix& h) -> Matrix { return h; }};
}

}  // namespace cmfock::crossmod
