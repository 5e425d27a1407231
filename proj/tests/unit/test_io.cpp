// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

#include "cmfock/bogoliubov.hpp"
#include "cmfock/io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace cmfock;

namespace {

io::json reparse(const io::json& j) { return io::json::parse(j.dump()); }

TEST(Io, ComplexAndMatrixRoundTrip) {
  std::mt19937_64 rng(11);
  const Matrix m = testkit::random_matrix(rng, 4);
  EXPECT_EQ(io::decode_matrix(reparse(io::encode(m))), m);
  const cplx z(0.1, -1.0 / 3.0);
  EXPECT_EQ(io::decode_complex(reparse(io::encode(z))), z);
  EXPECT_THROW(io::decode_complex(io::json::array({1.0})), std::invalid_argument);
  EXPECT_THROW(io::decode_matrix(io::json::parse("[[[1,0],[2,0]],[[1,0]]]")), std::invalid_argument);
}

TEST(Io, BasisAndOperator) {
  const auto b = modes::ModeBasis::build(3, 1, 2);
  const auto j = reparse(io::encode(*b));
  EXPECT_EQ(j["size"], b->size());
  EXPECT_TRUE(io::decode_basis(j)->same_as(*b));
  auto broken = j;
  broken["modes"][0]["internal"] = 1;
  EXPECT_THROW(io::decode_basis(broken), std::invalid_argument);

  std::mt19937_64 rng(3);
  const auto b1 = modes::ModeBasis::build(1, 3, 2);
  const modes::OneParticleOperator op{b1, testkit::random_matrix(rng, static_cast<Eigen::Index>(b1->size()))};
  const auto back = io::decode_operator(reparse(io::encode(op)));
  EXPECT_EQ(back.entries, op.entries);
  EXPECT_TRUE(back.basis->same_as(*b1));
}

TEST(Io, FockVectorAndOperator) {
  const auto space = fock::FockSpace::create(modes::ModeBasis::build(1, 2, 1));
  std::mt19937_64 rng(5);
  const Vector v = testkit::random_vector(rng, space->modes());
  const auto op = fock::creation(space, v);
  const auto j = reparse(io::encode(op));
  EXPECT_EQ(j["nonzeros"], static_cast<std::size_t>(op.matrix.nonZeros()));
  const auto back = io::decode_fock_operator(j, space);
  EXPECT_EQ(max_abs(SparseMatrix(back.matrix - op.matrix)), 0.0);

  const auto state = op.apply(fock::vacuum(space));
  const auto sj = reparse(io::encode(state));
  EXPECT_EQ(sj["space"]["vacuum_mask"], space->vacuum_mask());
  EXPECT_EQ(io::decode_vector(sj, space).amplitudes, state.amplitudes);

  const auto other = fock::FockSpace::create(modes::ModeBasis::build(1, 1, 1));
  EXPECT_THROW(io::decode_vector(sj, other), std::invalid_argument);
  EXPECT_THROW(io::decode_fock_operator(j, other), std::invalid_argument);
  EXPECT_THROW(io::decode_vector(j, space), std::invalid_argument);
}

TEST(Io, FormsAndMapsCarryGridMetadata) {
  const auto grid = geometry::Grid::create(8, 8, 16);
  const auto form = geometry::d(geometry::algebra_field(grid, "x", 2));
  const auto j = reparse(io::encode(form));
  EXPECT_EQ(j["grid"]["nr"], 8);
  EXPECT_EQ(j["degree"], 1);
  const auto back = io::decode_form(j);
  EXPECT_EQ(back.raw(), form.raw());
  EXPECT_EQ(back.fingerprint(), form.fingerprint());

  const auto map = geometry::sample(grid, geometry::map_preset("su2-bump:1.5"));
  const auto mj = reparse(io::encode(map));
  EXPECT_EQ(mj["class"], geometry::to_string(geometry::classify(map)));
  const auto mback = io::decode_map(mj);
  EXPECT_EQ(mback.raw(), map.raw());
  EXPECT_EQ(mback.based(), map.based());

  auto tampered = j;
  tampered["grid"]["fingerprint"] = 1;
  EXPECT_THROW(io::decode_form(tampered), std::invalid_argument);
  EXPECT_THROW(io::decode_map(j), std::invalid_argument);
}

TEST(Io, EncodingIsDeterministic) {
  const auto grid = geometry::Grid::create(8, 8, 16);
  const auto a = io::encode(geometry::algebra_field(grid, "y", 2)).dump();
  const auto b = io::encode(geometry::algebra_field(grid, "y", 2)).dump();
  EXPECT_EQ(a, b);
}

}  // namespace
