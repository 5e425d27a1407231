// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON encodings of bases, one-particle operators, Fock vectors and
 *        operators (coordinate format), and grid fields with grid metadata.
 *
 * Complex numbers are [re, im] pairs.  Doubles are written with round-trip
 * precision, so decode(encode(x)) == x bit for bit.
 */

#pragma once

#include "cmfock/fock.hpp"
#include "cmfock/geometry.hpp"

#include <json.hpp>

namespace cmfock::io {

using nlohmann::json;

inline json encode(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx decode_complex(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("io: complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json encode(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix decode_matrix(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("io: matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) throw std::invalid_argument("io: ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = decode_complex(j[i][k]);
  }
  return m;
}

inline json encode(const modes::ModeBasis& b) {
  json modes = json::array();
  for (const auto& m : b.modes())
    modes.push_back({{"momentum", json::array({m.momentum[0], m.momentum[1], m.momentum[2]})},
                     {"spinor", m.spinor},
                     {"internal", m.internal},
                     {"eigenvalue", m.eigenvalue},
                     {"sign", m.sign == modes::Sign::plus ? 1 : -1}});
  return {{"dimension", b.dimension()}, {"cutoff", b.cutoff()}, {"internal_dim", b.internal_dim()},
          {"size", b.size()}, {"modes", std::move(modes)}};
}

/// Rebuilds the basis from its parameters and checks the stored mode table against it.
inline modes::BasisPtr decode_basis(const json& j) {
  auto b = modes::ModeBasis::build(j.at("dimension"), j.at("cutoff"), j.at("internal_dim"));
  if (j.at("size").get<std::size_t>() != b->size() || j.at("modes").size() != b->size())
    throw std::invalid_argument("io: mode table does not match the basis parameters");
  for (std::size_t i = 0; i < b->size(); ++i) {
    const auto& m = j["modes"][i];
    const auto& ref = b->mode(i);
    const modes::Momentum p{m["momentum"][0], m["momentum"][1], m["momentum"][2]};
    if (p != ref.momentum || m["spinor"] != ref.spinor || m["internal"] != ref.internal)
      throw std::invalid_argument("io: mode ordering differs from this build");
  }
  return b;
}

inline json encode(const modes::OneParticleOperator& op) {
  return {{"kind", "one_particle_operator"}, {"basis", encode(*op.basis)}, {"entries", encode(op.entries)}};
}

inline modes::OneParticleOperator decode_operator(const json& j) {
  if (j.at("kind") != "one_particle_operator") throw std::invalid_argument("io: not a one-particle operator");
  return {decode_basis(j.at("basis")), decode_matrix(j.at("entries"))};
}

inline json space_header(const fock::FockSpace& s) {
  return {{"modes", s.modes()}, {"vacuum_mask", s.vacuum_mask()}, {"basis", encode(*s.basis())}};
}

/// Nonzero amplitudes as [occupation mask, re, im], in increasing mask order.
inline json encode(const fock::FockVector& v) {
  json amps = json::array();
  for (Eigen::Index i = 0; i < v.amplitudes.size(); ++i)
    if (v.amplitudes(i) != cplx{}) amps.push_back({i, v.amplitudes(i).real(), v.amplitudes(i).imag()});
  return {{"kind", "fock_vector"}, {"space", space_header(*v.space)}, {"amplitudes", std::move(amps)}};
}

inline fock::FockVector decode_vector(const json& j, const fock::SpacePtr& space) {
  if (j.at("kind") != "fock_vector") throw std::invalid_argument("io: not a Fock vector");
  if (j.at("space").at("modes") != space->modes()) throw std::invalid_argument("io: Fock space mismatch");
  Vector amp = Vector::Zero(static_cast<Eigen::Index>(space->dimension()));
  for (const auto& e : j.at("amplitudes")) {
    const auto idx = e[0].get<std::uint64_t>();
    if (idx >= space->dimension()) throw std::invalid_argument("io: occupation mask out of range");
    amp(static_cast<Eigen::Index>(idx)) = {e[1].get<double>(), e[2].get<double>()};
  }
  return {space, amp};
}

/// Coordinate format: [row, col, re, im] per stored entry, column-major order.
inline json encode(const fock::FockOperator& op) {
  json coo = json::array();
  for (int k = 0; k < op.matrix.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(op.matrix, k); it; ++it)
      coo.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
  return {{"kind", "fock_operator"}, {"space", space_header(*op.space)}, {"dimension", op.space->dimension()},
          {"nonzeros", coo.size()}, {"entries", std::move(coo)}};
}

inline fock::FockOperator decode_fock_operator(const json& j, const fock::SpacePtr& space) {
  if (j.at("kind") != "fock_operator") throw std::invalid_argument("io: not a Fock operator");
  if (j.at("dimension").get<std::size_t>() != space->dimension()) throw std::invalid_argument("io: Fock space mismatch");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (const auto& e : j.at("entries")) {
    const auto r = e[0].get<Eigen::Index>(), c = e[1].get<Eigen::Index>();
    const auto dim = static_cast<Eigen::Index>(space->dimension());
    if (r < 0 || c < 0 || r >= dim || c >= dim) throw std::invalid_argument("io: entry out of range");
    trips.emplace_back(static_cast<int>(r), static_cast<int>(c), cplx(e[2].get<double>(), e[3].get<double>()));
  }
  const auto dim = static_cast<Eigen::Index>(space->dimension());
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return {space, m};
}

inline json encode(const geometry::Grid& g) {
  return {{"nr", g.nr()}, {"nt", g.nt()}, {"np", g.np()}, {"stencil_order", g.stencil_order()},
          {"nodes", g.size()}, {"fingerprint", g.fingerprint()}, {"description", g.describe()}};
}

inline geometry::GridPtr decode_grid(const json& j) {
  auto g = geometry::Grid::create(j.at("nr"), j.at("nt"), j.at("np"), j.at("stencil_order"));
  if (j.contains("fingerprint") && j["fingerprint"].get<std::uint64_t>() != g->fingerprint())
    throw std::invalid_argument("io: grid fingerprint mismatch");
  return g;
}

/// Flat value list: node-major, then component, then column-major matrix entries.
inline json encode_values(const geometry::NodeField& f) {
  json vals = json::array();
  for (const cplx& z : f.raw()) vals.push_back(encode(z));
  return vals;
}

inline std::vector<cplx> decode_values(const json& j) {
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& z : j) out.push_back(decode_complex(z));
  return out;
}

inline json encode(const geometry::LieForm& f) {
  return {{"kind", "lie_form"}, {"grid", encode(*f.grid())}, {"degree", f.degree()}, {"fiber_dim", f.fiber_dim()},
          {"fingerprint", f.fingerprint()}, {"values", encode_values(f)}};
}

inline geometry::LieForm decode_form(const json& j) {
  if (j.at("kind") != "lie_form") throw std::invalid_argument("io: not a Lie-algebra-valued form");
  geometry::LieForm f(decode_grid(j.at("grid")), j.at("degree"), j.at("fiber_dim"));
  auto vals = decode_values(j.at("values"));
  if (vals.size() != f.raw().size()) throw std::invalid_argument("io: wrong number of form values");
  std::copy(vals.begin(), vals.end(), f.raw().begin());
  return f;
}

inline json encode(const geometry::GroupMap& g) {
  return {{"kind", "group_map"}, {"grid", encode(*g.grid())}, {"fiber_dim", g.fiber_dim()},
          {"flat_boundary", g.flat_boundary()}, {"based", g.based()},
          {"class", geometry::to_string(geometry::classify(g))}, {"fingerprint", g.fingerprint()},
          {"values", encode_values(g)}};
}

inline geometry::GroupMap decode_map(const json& j, geometry::BoundaryTest test = {}) {
  if (j.at("kind") != "group_map") throw std::invalid_argument("io: not a group map");
  return geometry::GroupMap::from_values(decode_grid(j.at("grid")), j.at("fiber_dim"), decode_values(j.at("values")),
                                         test);
}

}  // namespace cmfock::io
