// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "cmfock/bogoliubov.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace cmfock;
using namespace cmfock::bogoliubov;
using modes::ModeBasis;
using modes::TorusFunction;

namespace {

OneParticleOperator near_identity(std::mt19937_64& rng, const modes::BasisPtr& b, double scale) {
  return {b, exp_i_hermitian(testkit::random_hermitian(rng, b->size(), scale))};
}

OneParticleOperator current(const modes::BasisPtr& b, int k, bool sine) {
  const cplx up = sine ? cplx(0.0, -0.5) : cplx(0.5, 0.0);
  const cplx down = sine ? cplx(0.0, 0.5) : cplx(0.5, 0.0);
  const auto f = TorusFunction::band_limited(1, 1, {{{k, 0, 0}, Matrix::Constant(1, 1, up)},
                                                     {{-k, 0, 0}, Matrix::Constant(1, 1, down)}});
  return modes::multiplication_operator(f, b);
}

// <e_S, Gamma(g) e_T> = det g[S,T] for bitmask states built in increasing mode order
Matrix second_quantized_by_minors(const fock::SpacePtr& space, const Matrix& g) {
  const auto dim = static_cast<Eigen::Index>(space->dimension());
  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s)
    for (Eigen::Index t = 0; t < dim; ++t) {
      if (std::popcount(std::uint64_t(s)) != std::popcount(std::uint64_t(t))) continue;
      std::vector<int> rows, cols;
      for (int i = 0; i < space->modes(); ++i) {
        if (s >> i & 1) rows.push_back(i);
        if (t >> i & 1) cols.push_back(i);
      }
      if (rows.empty()) {
        out(s, t) = 1.0;
        continue;
      }
      Matrix minor(rows.size(), cols.size());
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t c = 0; c < cols.size(); ++c) minor(a, c) = g(rows[a], cols[c]);
      out(s, t) = minor.determinant();
    }
  return out;
}

TEST(SecondQuantize, ZeroAndNormalOrdering) {
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  EXPECT_EQ(dGamma(s, OneParticleOperator(b, Matrix::Zero(5, 5))).matrix.nonZeros(), 0);
  Matrix x = Matrix::Zero(5, 5);
  x(0, 0) = 1.0;  // a sea mode
  const auto op = dGamma(s, OneParticleOperator(b, x));
  const Vector psi = fock::vacuum(s).amplitudes;
  EXPECT_EQ(psi.dot(op.matrix * psi), cplx{});
}

TEST(SecondQuantize, CommutesWithCreation) {
  std::mt19937_64 rng(4);
  auto b = ModeBasis::build(1, 1, 3);
  auto s = fock::FockSpace::create(b);
  const Matrix x = testkit::random_hermitian(rng, 9, 1.0);
  const Vector v = testkit::random_vector(rng, 9);
  const auto dx = dGamma(s, OneParticleOperator(b, x));
  const auto cv = fock::creation(s, v);
  const SparseMatrix lhs = dx.matrix * cv.matrix - cv.matrix * dx.matrix;
  EXPECT_LT(max_abs(SparseMatrix(lhs - fock::creation(s, x * v).matrix)), 1e-12);
}

TEST(SecondQuantize, RejectsNonHermitianAndMismatch) {
  auto b = ModeBasis::build(1, 1, 1);
  auto s = fock::FockSpace::create(b);
  Matrix x = Matrix::Zero(3, 3);
  x(0, 1) = 1.0;
  EXPECT_THROW(dGamma(s, OneParticleOperator(b, x)), std::invalid_argument);
  auto other = ModeBasis::build(1, 2, 1);
  EXPECT_THROW(dGamma(s, OneParticleOperator::identity(other)), std::invalid_argument);
}

TEST(SectorExp, RejectsNumberChangingOperator) {
  auto s = fock::FockSpace::create(ModeBasis::build(1, 1, 1));
  const auto c = fock::creation(s, fock::unit_vector(3, 1));
  EXPECT_THROW(exp_i_number_conserving(c + c.adjoint()), std::invalid_argument);
}

TEST(Implement, IdentityLiftsToIdentity) {
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  const auto imp = implement(s, OneParticleOperator::identity(b));
  EXPECT_LT(max_abs(SparseMatrix(imp.lift.matrix - fock::FockOperator::identity(s).matrix)), 1e-14);
}

TEST(Implement, SinglePlusModePhase) {
  auto b = ModeBasis::build(1, 1, 1);  // modes -1, 0, +1; sea = {0}
  auto s = fock::FockSpace::create(b);
  Matrix g = Matrix::Identity(3, 3);
  g(1, 1) = I;
  const auto imp = implement(s, OneParticleOperator(b, g));
  const Vector psi = fock::vacuum(s).amplitudes;
  EXPECT_LT((imp.lift.matrix * psi - psi).norm(), 1e-14);
  const Vector excited = fock::creation(s, fock::unit_vector(3, 1)).matrix * psi;
  EXPECT_LT((imp.lift.matrix * excited - I * excited).norm(), 1e-14);
}

TEST(Implement, RandomNearIdentityIntertwines) {
  std::mt19937_64 rng(12);
  auto b = ModeBasis::build(1, 1, 3);
  auto s = fock::FockSpace::create(b);
  for (int trial = 0; trial < 5; ++trial) {
    const auto imp = implement(s, near_identity(rng, b, 0.3));
    EXPECT_LT(intertwining_residual(imp), 1e-10);
    EXPECT_LT(lift_unitarity_residual(imp), 1e-10);
  }
}

TEST(Implement, PhaseConvention) {
  std::mt19937_64 rng(13);
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  const auto imp = implement(s, near_identity(rng, b, 1.0));
  const Vector image = imp.lift.matrix * fock::vacuum(s).amplitudes;
  for (Eigen::Index i = 0; i < image.size(); ++i) {
    if (std::abs(image(i)) <= phase_threshold) continue;
    EXPECT_GT(image(i).real(), 0.0);
    EXPECT_LT(std::abs(image(i).imag()), 1e-14);
    break;
  }
}

TEST(Implement, AgreesWithDeterminantFormulaUpToPhase) {
  std::mt19937_64 rng(21);
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  const auto g = near_identity(rng, b, 2.0);
  const Matrix lift = implement(s, g).lift.to_dense();
  const Matrix oracle = second_quantized_by_minors(s, g.entries);
  const cplx overlap = (oracle.adjoint() * lift).trace();
  const cplx phase = overlap / std::abs(overlap);
  EXPECT_LT(max_abs(Matrix(lift - phase * oracle)), 1e-11);
}

TEST(Implement, Errors) {
  auto b = ModeBasis::build(1, 1, 1);
  auto s = fock::FockSpace::create(b);
  Matrix flip = Matrix::Identity(3, 3);
  flip(2, 2) = -1.0;
  EXPECT_THROW(implement(s, OneParticleOperator(b, flip)), std::domain_error);
  EXPECT_THROW(implement(s, OneParticleOperator(b, 1.5 * Matrix::Identity(3, 3))), std::invalid_argument);
}

TEST(Multiplier, TrivialWithIdentity) {
  std::mt19937_64 rng(31);
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  const auto g = near_identity(rng, b, 0.8);
  const auto id = OneParticleOperator::identity(b);
  EXPECT_LT(std::abs(multiplier(s, id, g).value - 1.0), 1e-12);
  EXPECT_LT(std::abs(multiplier(s, g, id).value - 1.0), 1e-12);
}

TEST(Multiplier, CommutingDiagonalIsTrivial) {
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  Vector p1(5), p2(5);
  p1 << 0.3, -1.1, 0.7, 2.0, -0.4;
  p2 << -0.9, 0.5, 1.3, -0.2, 0.8;
  const OneParticleOperator g1(b, Matrix((I * p1).array().exp().matrix().asDiagonal()));
  const OneParticleOperator g2(b, Matrix((I * p2).array().exp().matrix().asDiagonal()));
  EXPECT_LT(std::abs(multiplier(s, g1, g2).value - 1.0), 1e-12);
}

TEST(Multiplier, IsTwoCocycle) {
  std::mt19937_64 rng(41);
  auto b = ModeBasis::build(1, 1, 3);
  auto s = fock::FockSpace::create(b);
  const auto g1 = near_identity(rng, b, 0.3), g2 = near_identity(rng, b, 0.3), g3 = near_identity(rng, b, 0.3);
  EXPECT_LT(multiplier(s, g1, g2).modulus_defect, 1e-10);
  EXPECT_LT(cocycle_identity_residual(s, g1, g2, g3), 1e-10);
}

TEST(Schwinger, VanishesOnDiagonal) {
  auto b = ModeBasis::build(1, 3, 1);
  auto s = fock::FockSpace::create(b);
  const auto x = current(b, 1, false);
  const auto v = schwinger_term(s, x, x);
  EXPECT_EQ(v.fock, cplx{});
  EXPECT_EQ(v.trace, cplx{});
}

TEST(Schwinger, FockMatchesTraceAndContinuum) {
  const auto fx = testkit::load_fixture("schwinger_continuum.json");
  for (const auto& pair : fx["pairs"]) {
    const int k = pair["k"].get<int>();
    const cplx expected(pair["re"].get<double>(), pair["im"].get<double>());
    for (int cutoff : {k + 1, 4, 5}) {
      auto b = ModeBasis::build(1, cutoff, 1);
      auto s = fock::FockSpace::create(b);
      const auto v = schwinger_term(s, current(b, k, false), current(b, k, true));
      EXPECT_LT(std::abs(v.fock - v.trace), 1e-12);
      EXPECT_LT(std::abs(v.fock - expected), 1e-6 * std::abs(expected));
      ASSERT_TRUE(v.scalar_defect.has_value());
      EXPECT_LT(*v.scalar_defect, 1e-12);
    }
  }
}

TEST(Schwinger, StableInCutoffAndAntisymmetric) {
  auto b4 = ModeBasis::build(1, 4, 1);
  auto b8 = ModeBasis::build(1, 8, 1);
  auto s4 = fock::FockSpace::create(b4);
  auto s8 = fock::FockSpace::create(b8, 17);
  const auto v4 = schwinger_term(s4, current(b4, 1, false), current(b4, 1, true));
  const auto v8 = schwinger_term(s8, current(b8, 1, false), current(b8, 1, true));
  EXPECT_EQ(v4.fock, v8.fock);
  EXPECT_FALSE(v8.scalar_defect.has_value());
  const auto swapped = schwinger_term(s4, current(b4, 1, true), current(b4, 1, false));
  EXPECT_EQ(swapped.fock, -v4.fock);
}

TEST(Schwinger, RejectsBadInputs) {
  auto b = ModeBasis::build(1, 2, 1);
  auto s = fock::FockSpace::create(b);
  Matrix y = Matrix::Zero(5, 5);
  y(0, 1) = 1.0;
  EXPECT_THROW(schwinger_term(s, current(b, 1, false), OneParticleOperator(b, y)), std::invalid_argument);
  auto other = ModeBasis::build(1, 3, 1);
  EXPECT_THROW(schwinger_term(s, current(other, 1, false), current(other, 1, true)), std::invalid_argument);
}

}  // namespace
