// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file modes.hpp
 * @brief Truncated one-particle spaces of Dirac-type operators on the circle and the 3-torus.
 *
 * A ModeBasis enumerates momentum modes |p|_inf <= cutoff, tensored with a
 * spinor factor (d = 3 only) and an internal fiber of dimension m.  In d = 1
 * the Dirac eigenvalue of mode p is p.  In d = 3 the operator is sigma . p on
 * the flat torus; each momentum carries the two helicity eigenvectors of
 * sigma . p with eigenvalues -|p| and +|p|, and the two p = 0 modes carry +0.
 *
 * Mode ordering is lexicographic in (momentum tuple, spinor, internal index),
 * each momentum component running from -cutoff to +cutoff.
 */

#pragma once

#include "cmfock/core.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <thread>

namespace cmfock::modes {

enum class Sign : int { minus = -1, plus = 1 };

using Momentum = std::array<int, 3>;
using Point = std::array<double, 3>;

struct Mode {
  Momentum momentum{};
  int spinor = 0;
  int internal = 0;
  double eigenvalue = 0.0;
  Sign sign = Sign::plus;
};

class ModeBasis {
 public:
  static std::shared_ptr<const ModeBasis> build(int d, int cutoff, int internal_dim) {
    if (d != 1 && d != 3) throw std::invalid_argument("ModeBasis: dimension must be 1 or 3");
    if (cutoff < 1) throw std::invalid_argument("ModeBasis: cutoff must be positive");
    if (internal_dim < 1) throw std::invalid_argument("ModeBasis: internal_dim must be positive");
    return std::shared_ptr<const ModeBasis>(new ModeBasis(d, cutoff, internal_dim));
  }

  int dimension() const { return d_; }
  int cutoff() const { return cutoff_; }
  int internal_dim() const { return m_; }
  int spinor_dim() const { return d_ == 3 ? 2 : 1; }
  int side() const { return 2 * cutoff_ + 1; }

  std::size_t size() const { return modes_.size(); }
  const std::vector<Mode>& modes() const { return modes_; }
  const Mode& mode(std::size_t i) const { return modes_.at(i); }

  std::size_t momentum_count() const { return momenta_.size(); }
  const Momentum& momentum_at(std::size_t k) const { return momenta_.at(k); }

  std::optional<std::size_t> momentum_index(const Momentum& p) const {
    std::size_t idx = 0;
    for (int c = 0; c < d_; ++c) {
      if (std::abs(p[c]) > cutoff_) return std::nullopt;
      idx = idx * side() + static_cast<std::size_t>(p[c] + cutoff_);
    }
    for (int c = d_; c < 3; ++c)
      if (p[c] != 0) return std::nullopt;
    return idx;
  }

  std::size_t index(std::size_t momentum_index, int spinor, int internal) const {
    return (momentum_index * spinor_dim() + spinor) * m_ + internal;
  }

  /// Helicity eigenvector attached to (momentum, spinor); the constant 1 in d = 1.
  const Eigen::Vector2cd& spinor_vector(std::size_t momentum_index, int spinor) const {
    return spinors_.at(momentum_index * spinor_dim() + spinor);
  }

  cplx spinor_overlap(std::size_t k_row, int s_row, std::size_t k_col, int s_col) const {
    if (d_ == 1) return 1.0;
    return spinor_vector(k_row, s_row).dot(spinor_vector(k_col, s_col));
  }

  std::vector<Eigen::Index> indices(Sign s) const {
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < modes_.size(); ++i)
      if (modes_[i].sign == s) out.push_back(static_cast<Eigen::Index>(i));
    return out;
  }

  bool same_as(const ModeBasis& o) const { return d_ == o.d_ && cutoff_ == o.cutoff_ && m_ == o.m_; }

 private:
  ModeBasis(int d, int cutoff, int m) : d_(d), cutoff_(cutoff), m_(m) {
    const int L = side();
    const std::size_t count = d == 1 ? L : static_cast<std::size_t>(L) * L * L;
    momenta_.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      Momentum p{0, 0, 0};
      std::size_t rest = k;
      for (int c = d - 1; c >= 0; --c) {
        p[c] = static_cast<int>(rest % L) - cutoff;
        rest /= L;
      }
      momenta_.push_back(p);
    }
    for (std::size_t k = 0; k < momenta_.size(); ++k) {
      const Momentum& p = momenta_[k];
      if (d == 1) {
        spinors_.push_back(Eigen::Vector2cd(1.0, 0.0));
        for (int a = 0; a < m; ++a) {
          const double eig = p[0];
          modes_.push_back({p, 0, a, eig, eig >= 0 ? Sign::plus : Sign::minus});
        }
        continue;
      }
      const double norm = std::sqrt(double(p[0]) * p[0] + double(p[1]) * p[1] + double(p[2]) * p[2]);
      auto [down, up] = helicity_pair(p, norm);
      spinors_.push_back(down);
      spinors_.push_back(up);
      for (int s = 0; s < 2; ++s) {
        const double eig = norm == 0.0 ? 0.0 : (s == 0 ? -norm : norm);
        for (int a = 0; a < m; ++a) modes_.push_back({p, s, a, eig, eig >= 0 ? Sign::plus : Sign::minus});
      }
    }
  }

  // Eigenvectors of sigma . p for eigenvalues -|p| (first) and +|p| (second).
  static std::pair<Eigen::Vector2cd, Eigen::Vector2cd> helicity_pair(const Momentum& p, double norm) {
    if (norm == 0.0) return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
    const double x = p[0] / norm, y = p[1] / norm, z = p[2] / norm;
    if (1.0 + z < 1e-12) return {Eigen::Vector2cd(1.0, 0.0), Eigen::Vector2cd(0.0, 1.0)};
    const double s = std::sqrt(2.0 * (1.0 + z));
    Eigen::Vector2cd up(cplx(1.0 + z, 0.0) / s, cplx(x, y) / s);
    Eigen::Vector2cd down(cplx(-x, y) / s, cplx(1.0 + z, 0.0) / s);
    return {down, up};
  }

  int d_, cutoff_, m_;
  std::vector<Momentum> momenta_;
  std::vector<Eigen::Vector2cd> spinors_;
  std::vector<Mode> modes_;
};

using BasisPtr = std::shared_ptr<const ModeBasis>;

/// A square matrix acting on the mode space of a basis.
struct OneParticleOperator {
  BasisPtr basis;
  Matrix entries;

  OneParticleOperator() = default;
  OneParticleOperator(BasisPtr b, Matrix m) : basis(std::move(b)), entries(std::move(m)) {
    if (!basis) throw std::invalid_argument("OneParticleOperator: null basis");
    const auto n = static_cast<Eigen::Index>(basis->size());
    if (entries.rows() != n || entries.cols() != n)
      throw std::invalid_argument("OneParticleOperator: matrix does not match basis dimension");
  }

  static OneParticleOperator identity(BasisPtr b) {
    const auto n = static_cast<Eigen::Index>(b->size());
    return {b, Matrix::Identity(n, n)};
  }

  Eigen::Index size() const { return entries.rows(); }
  OneParticleOperator adjoint() const { return {basis, entries.adjoint()}; }
  bool is_unitary(double tol = 1e-10) const { return cmfock::is_unitary(entries, tol); }
  bool is_hermitian(double tol = 1e-12) const { return cmfock::is_hermitian(entries, tol); }

  friend OneParticleOperator operator*(const OneParticleOperator& a, const OneParticleOperator& b) {
    if (!a.basis->same_as(*b.basis)) throw std::invalid_argument("OneParticleOperator: basis mismatch");
    return {a.basis, a.entries * b.entries};
  }
};

/// The sign of the Dirac operator: diagonal, +1 on nonnegative-eigenvalue modes.
inline OneParticleOperator sign_operator(const BasisPtr& basis) {
  Matrix eps = Matrix::Zero(basis->size(), basis->size());
  for (std::size_t i = 0; i < basis->size(); ++i) eps(i, i) = basis->mode(i).sign == Sign::plus ? 1.0 : -1.0;
  return {basis, eps};
}

struct FourierTerm {
  Momentum frequency{};
  Matrix coefficient;
};

/**
 * A U(m)-valued function on the circle (d = 1) or the 3-torus (d = 3), with
 * g(x) = sum_q ghat(q) exp(i q . x).  Band-limited functions carry their
 * coefficients exactly; otherwise coefficients come from trapezoidal quadrature.
 */
class TorusFunction {
 public:
  using Sampler = std::function<Matrix(const Point&)>;

  static TorusFunction band_limited(int d, int m, std::vector<FourierTerm> terms) {
    check_dim(d, m);
    for (const auto& t : terms)
      if (t.coefficient.rows() != m || t.coefficient.cols() != m)
        throw std::invalid_argument("TorusFunction: coefficient size does not match internal_dim");
    TorusFunction f(d, m);
    f.terms_ = std::move(terms);
    f.sampler_ = [d, m, terms = *f.terms_](const Point& x) {
      Matrix out = Matrix::Zero(m, m);
      for (const auto& t : terms) {
        double phase = 0.0;
        for (int c = 0; c < d; ++c) phase += t.frequency[c] * x[c];
        out += std::exp(I * phase) * t.coefficient;
      }
      return out;
    };
    return f;
  }

  static TorusFunction sampled(int d, int m, Sampler fn) {
    check_dim(d, m);
    TorusFunction f(d, m);
    f.sampler_ = std::move(fn);
    return f;
  }

  static TorusFunction constant(int d, const Matrix& value) {
    return band_limited(d, static_cast<int>(value.rows()), {{Momentum{0, 0, 0}, value}});
  }

  /// exp(i k . x) times the identity on the fiber.
  static TorusFunction plane_wave(int d, int m, Momentum k) {
    return band_limited(d, m, {{k, Matrix::Identity(m, m)}});
  }

  int dimension() const { return d_; }
  int internal_dim() const { return m_; }
  bool is_band_limited() const { return terms_.has_value(); }

  int bandwidth() const {
    if (!terms_) return -1;
    int b = 0;
    for (const auto& t : *terms_)
      for (int c = 0; c < 3; ++c) b = std::max(b, std::abs(t.frequency[c]));
    return b;
  }

  Matrix operator()(const Point& x) const { return sampler_(x); }

  /**
   * Coefficients for all |q|_inf <= max_frequency.  Band-limited functions
   * return their stored terms; others use a trapezoidal rule with
   * `points` nodes per dimension, evaluated as separable 1-D sums.
   */
  std::vector<FourierTerm> coefficients(int max_frequency, int points) const {
    if (terms_) {
      std::vector<FourierTerm> out;
      for (const auto& t : *terms_) {
        bool inside = true;
        for (int c = 0; c < 3; ++c) inside = inside && std::abs(t.frequency[c]) <= max_frequency;
        if (inside) out.push_back(t);
      }
      return out;
    }
    return quadrature_coefficients(sampler_, d_, m_, max_frequency, points);
  }

  static std::vector<FourierTerm> quadrature_coefficients(const Sampler& fn, int d, int m, int max_frequency,
                                                          int points) {
    const int M = points;
    const int Q = 2 * max_frequency + 1;
    const std::size_t mm = static_cast<std::size_t>(m) * m;
    // twiddle(j, q) = exp(-i q x_j) / M
    std::vector<cplx> twiddle(static_cast<std::size_t>(M) * Q);
    for (int j = 0; j < M; ++j)
      for (int q = 0; q < Q; ++q)
        twiddle[j * Q + q] = std::exp(-I * double(q - max_frequency) * (2.0 * pi * j / M)) / double(M);

    std::vector<std::size_t> extent(d, M);
    std::vector<cplx> data;
    std::size_t total = 1;
    for (int c = 0; c < d; ++c) total *= M;
    data.resize(total * mm);
    for (std::size_t lin = 0; lin < total; ++lin) {
      Point x{0, 0, 0};
      std::size_t rest = lin;
      for (int c = d - 1; c >= 0; --c) {
        x[c] = 2.0 * pi * double(rest % M) / M;
        rest /= M;
      }
      Matrix v = fn(x);
      if (v.rows() != m || v.cols() != m) throw std::invalid_argument("TorusFunction: sampler returned wrong size");
      for (std::size_t e = 0; e < mm; ++e) data[lin * mm + e] = v(e % m, e / m);
    }
    // Transform one axis at a time (last axis first); extent[c] goes from M to Q.
    for (int axis = d - 1; axis >= 0; --axis) {
      std::size_t outer = 1, inner = 1;
      for (int c = 0; c < axis; ++c) outer *= extent[c];
      for (int c = axis + 1; c < d; ++c) inner *= extent[c];
      std::vector<cplx> next(outer * Q * inner * mm, cplx{});
      for (std::size_t o = 0; o < outer; ++o)
        for (int j = 0; j < M; ++j)
          for (std::size_t in = 0; in < inner; ++in) {
            const cplx* src = &data[((o * M + j) * inner + in) * mm];
            for (int q = 0; q < Q; ++q) {
              const cplx w = twiddle[j * Q + q];
              cplx* dst = &next[((o * Q + q) * inner + in) * mm];
              for (std::size_t e = 0; e < mm; ++e) dst[e] += w * src[e];
            }
          }
      data.swap(next);
      extent[axis] = Q;
    }
    std::size_t count = 1;
    for (int c = 0; c < d; ++c) count *= Q;
    std::vector<FourierTerm> out;
    out.reserve(count);
    for (std::size_t lin = 0; lin < count; ++lin) {
      Momentum q{0, 0, 0};
      std::size_t rest = lin;
      for (int c = d - 1; c >= 0; --c) {
        q[c] = static_cast<int>(rest % Q) - max_frequency;
        rest /= Q;
      }
      Matrix coeff(m, m);
      for (std::size_t e = 0; e < mm; ++e) coeff(e % m, e / m) = data[lin * mm + e];
      out.push_back({q, std::move(coeff)});
    }
    return out;
  }

 private:
  TorusFunction(int d, int m) : d_(d), m_(m) {}
  static void check_dim(int d, int m) {
    if (d != 1 && d != 3) throw std::invalid_argument("TorusFunction: dimension must be 1 or 3");
    if (m < 1) throw std::invalid_argument("TorusFunction: internal_dim must be positive");
  }

  int d_, m_;
  Sampler sampler_;
  std::optional<std::vector<FourierTerm>> terms_;
};

namespace detail {

// Dense table of coefficients over |q|_inf <= reach, with optional periodic wrap.
class CoefficientTable {
 public:
  CoefficientTable(int d, int m, int reach) : d_(d), m_(m), reach_(reach), side_(2 * reach + 1) {
    std::size_t n = 1;
    for (int c = 0; c < d; ++c) n *= side_;
    table_.assign(n, Matrix());
  }
  void set(const Momentum& q, const Matrix& c) {
    auto k = slot(q);
    if (!k) return;
    if (table_[*k].size() == 0)
      table_[*k] = c;
    else
      table_[*k] += c;
  }
  const Matrix* get(const Momentum& q) const {
    auto k = slot(q);
    if (!k || table_[*k].size() == 0) return nullptr;
    return &table_[*k];
  }

 private:
  std::optional<std::size_t> slot(const Momentum& q) const {
    std::size_t idx = 0;
    for (int c = 0; c < d_; ++c) {
      if (std::abs(q[c]) > reach_) return std::nullopt;
      idx = idx * side_ + static_cast<std::size_t>(q[c] + reach_);
    }
    return idx;
  }
  int d_, m_, reach_, side_;
  std::vector<Matrix> table_;
};

inline Momentum difference(const Momentum& a, const Momentum& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// entries((p,s,a),(p',s',b)) = coeff(p - p')_{ab} <u_s(p), u_s'(p')>
template <class Lookup>
Matrix assemble(const ModeBasis& basis, Lookup&& coeff_of) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const int m = basis.internal_dim();
  const int S = basis.spinor_dim();
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t kr = 0; kr < basis.momentum_count(); ++kr)
    for (std::size_t kc = 0; kc < basis.momentum_count(); ++kc) {
      const Matrix* c = coeff_of(difference(basis.momentum_at(kr), basis.momentum_at(kc)));
      if (!c) continue;
      for (int sr = 0; sr < S; ++sr)
        for (int sc = 0; sc < S; ++sc) {
          const cplx ov = basis.spinor_overlap(kr, sr, kc, sc);
          if (ov == cplx{}) continue;
          out.block(basis.index(kr, sr, 0), basis.index(kc, sc, 0), m, m) = ov * *c;
        }
    }
  return out;
}

}  // namespace detail

enum class Truncation {
  /// P g P: the compression of the multiplication operator to the retained modes.
  projected,
  /// Position-space sampling on the (2 cutoff + 1)^d lattice: unitary and exactly multiplicative.
  periodic,
};

/// Number of trapezoid nodes per dimension used for non-band-limited coefficients.
inline int quadrature_points(int cutoff) { return std::max(8 * cutoff, 16); }

inline OneParticleOperator multiplication_operator_projected(const TorusFunction& g, const BasisPtr& basis) {
  const int reach = 2 * basis->cutoff();
  detail::CoefficientTable table(basis->dimension(), basis->internal_dim(), reach);
  for (auto& t : g.coefficients(reach, quadrature_points(basis->cutoff()))) table.set(t.frequency, t.coefficient);
  return {basis, detail::assemble(*basis, [&](const Momentum& q) { return table.get(q); })};
}

/**
 * Multiplication by samples g(x_j) on the lattice x_j = 2 pi j / N, N = 2 cutoff + 1,
 * expressed in the mode basis.  `samples` is indexed lexicographically by the
 * lattice multi-index.  The map samples -> operator is a unitary representation.
 */
inline OneParticleOperator periodic_multiplication_operator(std::span<const Matrix> samples, const BasisPtr& basis) {
  const int d = basis->dimension();
  const int m = basis->internal_dim();
  const int N = basis->side();
  std::size_t total = 1;
  for (int c = 0; c < d; ++c) total *= N;
  if (samples.size() != total) throw std::invalid_argument("periodic_multiplication_operator: wrong sample count");
  // aliased[q mod N] = N^-d sum_x g(x) exp(-i q . x), q in [0, N)^d
  std::vector<Matrix> aliased(total, Matrix::Zero(m, m));
  std::vector<cplx> roots(N);
  for (int k = 0; k < N; ++k) roots[k] = std::exp(-I * (2.0 * pi * k / N));
  for (std::size_t ql = 0; ql < total; ++ql) {
    std::array<int, 3> q{0, 0, 0};
    std::size_t rest = ql;
    for (int c = d - 1; c >= 0; --c) {
      q[c] = static_cast<int>(rest % N);
      rest /= N;
    }
    Matrix acc = Matrix::Zero(m, m);
    for (std::size_t xl = 0; xl < total; ++xl) {
      const Matrix& v = samples[xl];
      if (v.rows() != m || v.cols() != m) throw std::invalid_argument("periodic_multiplication_operator: sample size");
      std::size_t r = xl;
      long phase = 0;
      for (int c = d - 1; c >= 0; --c) {
        phase += static_cast<long>(q[c]) * static_cast<long>(r % N);
        r /= N;
      }
      acc += roots[phase % N] * v;
    }
    aliased[ql] = acc / double(total);
  }
  auto lookup = [&](const Momentum& diff) -> const Matrix* {
    std::size_t idx = 0;
    for (int c = 0; c < d; ++c) idx = idx * N + static_cast<std::size_t>(((diff[c] % N) + N) % N);
    return &aliased[idx];
  };
  return {basis, detail::assemble(*basis, lookup)};
}

inline std::vector<Point> lattice_points(int d, int cutoff) {
  const int N = 2 * cutoff + 1;
  std::size_t total = 1;
  for (int c = 0; c < d; ++c) total *= N;
  std::vector<Point> out(total);
  for (std::size_t lin = 0; lin < total; ++lin) {
    std::size_t rest = lin;
    Point x{0, 0, 0};
    for (int c = d - 1; c >= 0; --c) {
      x[c] = 2.0 * pi * double(rest % N) / N;
      rest /= N;
    }
    out[lin] = x;
  }
  return out;
}

inline OneParticleOperator multiplication_operator(const TorusFunction& g, const BasisPtr& basis,
                                                   Truncation mode = Truncation::projected) {
  if (g.dimension() != basis->dimension())
    throw std::invalid_argument("multiplication_operator: torus dimension does not match basis");
  if (g.internal_dim() != basis->internal_dim())
    throw std::invalid_argument("multiplication_operator: target dimension does not match internal_dim");
  if (mode == Truncation::projected) return multiplication_operator_projected(g, basis);
  std::vector<Matrix> samples;
  for (const auto& x : lattice_points(basis->dimension(), basis->cutoff())) samples.push_back(g(x));
  return periodic_multiplication_operator(samples, basis);
}

struct BlockDecomposition {
  Matrix pp, pm, mp, mm;
  std::vector<Eigen::Index> plus, minus;

  Matrix reassemble() const {
    const auto n = static_cast<Eigen::Index>(plus.size() + minus.size());
    Matrix out(n, n);
    out(plus, plus) = pp;
    out(plus, minus) = pm;
    out(minus, plus) = mp;
    out(minus, minus) = mm;
    return out;
  }
};

/// Blocks relative to H = H+ (+) H-; pm maps H- into H+, mp maps H+ into H-.
inline BlockDecomposition block_decompose(const OneParticleOperator& op) {
  BlockDecomposition b;
  b.plus = op.basis->indices(Sign::plus);
  b.minus = op.basis->indices(Sign::minus);
  b.pp = op.entries(b.plus, b.plus);
  b.pm = op.entries(b.plus, b.minus);
  b.mp = op.entries(b.minus, b.plus);
  b.mm = op.entries(b.minus, b.minus);
  return b;
}

/// Hilbert-Schmidt (Frobenius) norm.
inline double hs_norm(const Matrix& block) { return block.norm(); }

/**
 * HS norm of the off-diagonal part of [eps, P g P] without materializing the
 * operator.  Because eps is +-1 on the blocks, that part is 2 g_{+-} - 2 g_{-+}.
 */
inline double commutator_offdiagonal_hs(const TorusFunction& g, const ModeBasis& basis) {
  const int reach = 2 * basis.cutoff();
  const auto terms = g.coefficients(reach, quadrature_points(basis.cutoff()));
  const int S = basis.spinor_dim();
  const int m = basis.internal_dim();
  const std::size_t per_momentum = static_cast<std::size_t>(S) * m;
  double sum = 0.0;
  for (std::size_t kc = 0; kc < basis.momentum_count(); ++kc) {
    const Momentum& pc = basis.momentum_at(kc);
    for (const auto& t : terms) {
      const Momentum pr{pc[0] + t.frequency[0], pc[1] + t.frequency[1], pc[2] + t.frequency[2]};
      auto kr = basis.momentum_index(pr);
      if (!kr) continue;
      const double coeff_sq = t.coefficient.squaredNorm();
      if (coeff_sq == 0.0) continue;
      for (int sr = 0; sr < S; ++sr)
        for (int sc = 0; sc < S; ++sc) {
          // fiber index does not affect the sign, so only spinor labels matter
          const Sign a = basis.mode(*kr * per_momentum + sr * m).sign;
          const Sign b = basis.mode(kc * per_momentum + sc * m).sign;
          if (a == b) continue;
          sum += coeff_sq * std::norm(basis.spinor_overlap(*kr, sr, kc, sc));
        }
    }
  }
  return 2.0 * std::sqrt(sum);
}

struct ScanRow {
  int cutoff = 0;
  double hs_norm = 0.0;
};

/// Worker count for internally parallel scans, from CMFOCK_THREADS (default 1).
inline unsigned thread_count() {
  if (const char* env = std::getenv("CMFOCK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// One row per cutoff; rows are assembled in cutoff order regardless of completion order.
inline std::vector<ScanRow> hs_growth_scan(const TorusFunction& g, std::span<const int> cutoffs) {
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1) throw std::invalid_argument("hs_growth_scan: cutoffs must be positive");
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) throw std::invalid_argument("hs_growth_scan: cutoffs must increase");
  }
  auto row = [&g](int cutoff) {
    auto basis = ModeBasis::build(g.dimension(), cutoff, g.internal_dim());
    return ScanRow{cutoff, commutator_offdiagonal_hs(g, *basis)};
  };
  std::vector<ScanRow> rows(cutoffs.size());
  const unsigned workers = std::min<unsigned>(thread_count(), static_cast<unsigned>(std::max<std::size_t>(1, cutoffs.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < cutoffs.size(); ++i) rows[i] = row(cutoffs[i]);
    return rows;
  }
  for (std::size_t start = 0; start < cutoffs.size(); start += workers) {
    std::vector<std::future<ScanRow>> pending;
    const std::size_t stop = std::min(cutoffs.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) pending.push_back(std::async(std::launch::async, row, cutoffs[i]));
    for (std::size_t i = start; i < stop; ++i) rows[i] = pending[i - start].get();
  }
  return rows;
}

}  // namespace cmfock::modes
