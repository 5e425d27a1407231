// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cmfock/core.hpp"

#include <json.hpp>

#include <fstream>
#include <random>
#include <string>

namespace cmfock::testkit {

inline nlohmann::json load_fixture(const std::string& name) {
  std::ifstream in(std::string(CMFOCK_FIXTURES) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return nlohmann::json::parse(in);
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(dist(rng), dist(rng));
  return v;
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Matrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = cplx(dist(rng), dist(rng));
  return m;
}

/// Hermitian with operator norm `scale`.
inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double scale) {
  Matrix a = random_matrix(rng, n);
  Matrix h = 0.5 * (a + a.adjoint());
  return h * (scale / operator_norm(h));
}

}  // namespace cmfock::testkit
