// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "cmfock/crossmod.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cmfock;
using namespace cmfock::crossmod;

namespace {

GridPtr grid() {
  static const GridPtr g = geometry::Grid::create(12, 12, 24);
  return g;
}
BasisPtr basis() {
  static const BasisPtr b = modes::ModeBasis::build(1, 2, 2);
  return b;
}
SpacePtr space() {
  static const SpacePtr s = fock::FockSpace::create(basis());
  return s;
}

const OmegaFamily& quadratic() {
  static const OmegaFamily f = OmegaFamily::quadratic(basis());
  return f;
}

SectionPoint base_point() { return SectionPoint::at(BallMap::preset("harmonic:1,0,1.5"), grid()); }

BallMap g1() { return BallMap::preset("su2-bump:1.5"); }
BallMap g2() { return BallMap::preset("harmonic:2,1"); }
BallMap g3() { return BallMap::preset("harmonic:1,1,1.2"); }
BallMap h_flat() { return BallMap::preset("flat-twist:1.0,0.7"); }

Vector probe_vector(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return testkit::random_vector(rng, static_cast<Eigen::Index>(basis()->size()));
}

double dist(const OneParticleOperator& a, const OneParticleOperator& b) { return max_abs(Matrix(a.entries - b.entries)); }

TEST(BallMap, PointwiseAlgebra) {
  const auto a = g1(), b = h_flat();
  const Point p{0.2, -0.3, 0.4};
  EXPECT_LT(max_abs(Matrix((a * b)(p) - a(p) * b(p))), 1e-15);
  EXPECT_LT(max_abs(Matrix((a * a.inverse())(p) - Matrix::Identity(2, 2))), 1e-14);
  EXPECT_EQ(BallMap::identity(2)(p), geometry::LieMatrix::Identity(2, 2));
  EXPECT_THROW(a * BallMap::preset("u1-bump"), std::invalid_argument);
  EXPECT_THROW(BallMap::preset("nope"), std::invalid_argument);
}

TEST(BallMap, ClassesOnGrid) {
  EXPECT_EQ(geometry::classify(g1().on(grid())), MapClass::three_loop);
  EXPECT_EQ(geometry::classify(h_flat().on(grid())), MapClass::flattened);
}

TEST(TorusToBall, LandsInBallWithBoundaryAtOrigin) {
  const Point start = torus_to_ball(1, {0.0, 0.0, 0.0});
  EXPECT_NEAR(geometry::norm(start), 1.0, 1e-15);
  for (const auto& x : modes::lattice_points(1, 5)) EXPECT_LE(geometry::norm(torus_to_ball(1, x)), 1.0 + 1e-15);
  EXPECT_NEAR(geometry::norm(torus_to_ball(1, {pi, 0.0, 0.0})), 0.0, 1e-15);
  EXPECT_NEAR(geometry::norm(torus_to_ball(3, {0.0, 0.0, 0.0})), 1.0, 1e-15);
  EXPECT_NEAR(geometry::norm(torus_to_ball(3, {0.0, 2.0, 4.0})), 1.0, 1e-15);
  EXPECT_EQ(geometry::norm(torus_to_ball(3, {pi, pi, pi})), 0.0);
}

TEST(Multiplication, UnitaryHomomorphism) {
  const auto a = multiplication(g1(), basis()), b = multiplication(g2(), basis());
  EXPECT_TRUE(a.is_unitary(1e-13));
  EXPECT_LT(dist(a * b, multiplication(g1() * g2(), basis())), 1e-14);
  EXPECT_LT(dist(multiplication(BallMap::identity(2), basis()), OneParticleOperator::identity(basis())), 1e-15);
  EXPECT_THROW(multiplication(BallMap::preset("u1-bump"), basis()), std::invalid_argument);
}

TEST(SectionPoint, ShiftIsGaugeAction) {
  const auto p = base_point();
  const auto q = p.shifted(g1());
  const auto via_action = geometry::gauge_action(p.potential(), g1().on(grid()));
  EXPECT_LT((q.potential() - via_action).max_norm(), 5e-2);
  EXPECT_EQ((SectionPoint::at(BallMap::identity(2), grid()).potential()).max_norm(), 0.0);
}

TEST(OmegaFamily, IdentityAndQuadratic) {
  const auto p = base_point();
  const auto id = OmegaFamily::identity(basis());
  EXPECT_EQ(id(p.potential()).entries, Matrix::Identity(10, 10));
  const auto t = quadratic()(p.potential());
  EXPECT_TRUE(t.is_unitary(1e-12));
  EXPECT_GT(max_abs(Matrix(t.entries - Matrix::Identity(10, 10))), 1e-2);
  const auto zero = SectionPoint::at(BallMap::identity(2), grid());
  EXPECT_LT(max_abs(Matrix(quadratic()(zero.potential()).entries - Matrix::Identity(10, 10))), 1e-15);
}

TEST(OmegaFamily, CachesByPotential) {
  const auto fam = OmegaFamily::quadratic(basis());
  const auto p = base_point();
  fam(p.potential());
  fam(p.potential());
  EXPECT_EQ(fam.cache_size(), 1u);
  fam(p.shifted(g1()).potential());
  EXPECT_EQ(fam.cache_size(), 2u);
}

TEST(OmegaFamily, ContractionValidation) {
  const auto p = base_point();
  EXPECT_THROW(contraction(p.potential(), *modes::ModeBasis::build(1, 2, 1)), std::invalid_argument);
  EXPECT_THROW(contraction(geometry::d(p.potential()), *basis()), std::invalid_argument);
}

TEST(Omega, TrivialCases) {
  const auto p = base_point();
  const auto id = OmegaFamily::identity(basis());
  EXPECT_LT(dist(omega(g1(), p, id), multiplication(g1(), basis())), 1e-15);
  EXPECT_LT(dist(omega(BallMap::identity(2), p, quadratic()), OneParticleOperator::identity(basis())), 1e-14);
  EXPECT_TRUE(omega(g1(), p, quadratic()).is_unitary(1e-12));
}

TEST(Omega, OneCocycleLaw) {
  const auto p = base_point();
  EXPECT_LT(check_one_cocycle(g1(), BallMap::identity(2), p, quadratic()), 1e-13);
  EXPECT_LT(check_one_cocycle(g1(), g2(), p, OmegaFamily::identity(basis())), 1e-10);
  EXPECT_LT(check_one_cocycle(g1(), g2(), p, quadratic()), 1e-8);
  EXPECT_LT(check_one_cocycle(h_flat(), g2(), p, quadratic()), 1e-8);
}

TEST(Omega, OneCocycleLawThreeTorus) {
  const auto b3 = modes::ModeBasis::build(3, 1, 2);
  const auto fam = OmegaFamily::quadratic(b3);
  const auto p = base_point();
  EXPECT_TRUE(omega(g1(), p, fam).is_unitary(1e-12));
  EXPECT_LT(check_one_cocycle(g1(), g2(), p, fam), 1e-8);
}

TEST(Compatibility, TrivialArguments) {
  const auto p = base_point();
  const Vector x = probe_vector(1);
  EXPECT_LT(compatibility_residual(BallMap::identity(2), g1(), p, x, quadratic()).one_particle, 1e-13);
  EXPECT_LT(compatibility_residual(h_flat(), BallMap::identity(2), p, x, quadratic()).one_particle, 1e-13);
}

TEST(Compatibility, GenericChain) {
  const auto p = base_point();
  const Vector x = probe_vector(2);
  for (const auto& fam : {quadratic(), OmegaFamily::identity(basis())}) {
    const auto r = compatibility_residual(h_flat(), g1(), p, x, fam, space());
    EXPECT_LT(r.one_particle, 1e-8) << fam.tag();
    ASSERT_TRUE(r.fock_mod_phase.has_value());
    EXPECT_LT(*r.fock_mod_phase, 1e-8) << fam.tag();
  }
}

// The product with omega(h; A) rather than omega(h^-1; A) in front does not telescope.
TEST(Compatibility, FirstFactorNeedsInverse) {
  const auto p = base_point();
  EXPECT_GT(uncorrected_chain_residual(h_flat(), g1(), p, probe_vector(3), quadratic()), 1e-2);
}

TEST(Compatibility, RejectsClassViolations) {
  const auto p = base_point();
  const Vector x = probe_vector(4);
  EXPECT_THROW(compatibility_residual(g1(), h_flat(), p, x, quadratic()), std::invalid_argument);
  EXPECT_THROW(compatibility_residual(BallMap::preset("linear-radial:1"), g1(), p, x, quadratic()),
               std::invalid_argument);
  EXPECT_THROW(compatibility_residual(h_flat(), g1(), p, Vector::Zero(3), quadratic()), std::invalid_argument);
}

TEST(RayDistance, PhaseInvariant) {
  std::mt19937_64 rng(5);
  const Matrix a = testkit::random_matrix(rng, 6), b = testkit::random_matrix(rng, 6);
  EXPECT_LT(ray_distance(a, std::exp(I * 0.8) * a), 1e-14);
  EXPECT_NEAR(ray_distance(a, std::exp(I * 0.3) * b), ray_distance(a, b), 1e-12);
}

TEST(Sections, ActionComposes) {
  const auto p = base_point();
  const CarSection v = [](const SectionPoint& q) -> Vector {
    Vector out = Vector::Zero(10);
    out(3) = 1.0;
    out(6) = q.potential().max_norm();
    return out;
  };
  EXPECT_LT((act_on_section(BallMap::identity(2), v, p, quadratic()) - v(p)).norm(), 1e-13);
  const Vector two_steps = apply_to(inner(g1(), quadratic()), apply_to(inner(g2(), quadratic()), v))(p);
  const Vector one_step = act_on_section(g1() * g2(), v, p, quadratic());
  EXPECT_LT((two_steps - one_step).norm(), 1e-8);
  const Vector x = probe_vector(6);
  EXPECT_LT((act_on_section(g1(), constant_section(x), p, quadratic()) - omega(g1(), p, quadratic()).entries * x).norm(),
            1e-14);
}

TEST(Automorphism, OuterCompositionLaw) {
  const auto p = base_point();
  const CarSection v = constant_section(probe_vector(7));
  const auto composed = compose(outer(h_flat(), quadratic()), outer(g2(), quadratic()));
  const Vector lhs = apply_to(composed, v)(p);
  const Vector rhs = apply_to(outer(h_flat() * g2(), quadratic()), v)(p);
  EXPECT_LT((lhs - rhs).norm(), 1e-8);
  const Vector back = apply_to(compose(inverse(outer(h_flat(), quadratic())), outer(h_flat(), quadratic())), v)(p);
  EXPECT_LT((back - v(p)).norm(), 1e-12);
}

TEST(Extension, TwistIsUnimodularCocycle) {
  const Extension ext(quadratic(), space());
  const auto p = base_point();
  const cplx c12 = ext.twist(g1(), g2(), p);
  EXPECT_NEAR(std::abs(c12), 1.0, 1e-12);
  const cplx lhs = c12 * ext.twist(g1() * g2(), g3(), p);
  const cplx rhs = ext.twist(g2(), g3(), p.shifted(g1())) * ext.twist(g1(), g2() * g3(), p);
  EXPECT_LT(std::abs(lhs - rhs), 1e-10);
}

TEST(Extension, ProductIsRepresented) {
  const Extension ext(quadratic(), space());
  const auto p = base_point();
  const HatElement a{g1(), [](const SectionPoint& q) { return std::exp(I * q.potential().max_norm()); }};
  const HatElement b = section(g2());
  const HatElement ab = ext.multiply(a, b);
  const Matrix lhs(ext.represent(ab, p).matrix);
  const Matrix rhs(SparseMatrix(ext.represent(a, p).matrix * ext.represent(b, p.shifted(project(a))).matrix));
  EXPECT_LT(max_abs(Matrix(lhs - rhs)), 1e-10);
  const Point x{0.1, 0.2, -0.3};
  EXPECT_LT(max_abs(Matrix(project(ab)(x) - g1()(x) * g2()(x))), 1e-15);
  EXPECT_EQ(section(g1()).phase(p), cplx{1.0});
  EXPECT_EQ(project(section(g1()))(x), g1()(x));
}

TEST(Extension, Associative) {
  const Extension ext(quadratic(), space());
  const auto p = base_point();
  const auto a = section(g1()), b = section(g2()), c = section(g3());
  const cplx left = ext.multiply(ext.multiply(a, b), c).phase(p);
  const cplx right = ext.multiply(a, ext.multiply(b, c)).phase(p);
  EXPECT_LT(std::abs(left - right), 1e-10);
}

TEST(FiniteModule, ConjugationAndTrivialAreExact) {
  const auto conj = check_axioms(conjugation_module());
  EXPECT_EQ(conj.max(), 0.0);
  const auto triv = check_axioms(trivial_module());
  EXPECT_EQ(triv.max(), 0.0);
  EXPECT_EQ(pauli_group().size(), 16u);
}

TEST(FiniteModule, CorruptedModulesAreDetected) {
  auto broken_alpha = conjugation_module();
  broken_alpha.alpha = [](const Matrix&, const Matrix& h) { return h; };
  const auto r1 = check_axioms(broken_alpha);
  EXPECT_GT(r1.peiffer, 1.0);
  EXPECT_EQ(r1.alpha_action, 0.0);

  auto broken_delta = conjugation_module();
  const Matrix sx(geometry::pauli()[0]);
  broken_delta.delta = [sx](const Matrix& h) -> Matrix { return sx * h; };
  EXPECT_GT(check_axioms(broken_delta).equivariance, 1.0);
  const auto& g = broken_delta.g_elements;
  EXPECT_GT(equivariance_residual(broken_delta, g[3], g[1]), 1.0);
  EXPECT_EQ(peiffer_residual(conjugation_module(), g[1], g[3]), 0.0);
}

}  // namespace
