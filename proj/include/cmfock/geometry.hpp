// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file geometry.hpp
 * @brief Spherical grid on the closed unit ball, Lie-algebra-valued forms, and group-valued maps.
 *
 * Nodes sit at r_i = (i + 1/2) h with h = 1/(nr - 1/2), so the outermost shell
 * is exactly r = 1, and at cell-centred polar angles, so no node touches the
 * centre or the poles.  Fields are stored in Cartesian components.  Partial
 * derivatives combine radial Fornberg stencils with trigonometrically exact
 * angular stencils through the chain rule; stencils that leave the chart are
 * reflected through the centre or a pole onto real nodes.
 */

#pragma once

#include "cmfock/core.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

namespace cmfock::geometry {

/// Fiber matrices (m <= 4) without heap allocation.
using LieMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using Point = std::array<double, 3>;

inline constexpr int max_fiber = 4;

struct Neighbor {
  std::int32_t node;
  double weight;
};

namespace detail {

/// First-derivative finite-difference weights at x0 for arbitrary nodes (Fornberg).
inline std::vector<double> fd_weights(double x0, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<std::array<double, 2>> c(n, {0.0, 0.0});
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

/// Centred angular weights for offsets 1..order/2, exact on the first order/2 harmonics.
inline std::vector<double> trig_weights(double delta, int order) {
  if (order == 2) return {1.0 / (2.0 * std::sin(delta))};
  // a 2 sin(k d) + b 2 sin(2 k d) = k, k = 1, 2
  Eigen::Matrix2d m;
  m << 2.0 * std::sin(delta), 2.0 * std::sin(2.0 * delta), 2.0 * std::sin(2.0 * delta), 2.0 * std::sin(4.0 * delta);
  const Eigen::Vector2d ab = m.partialPivLu().solve(Eigen::Vector2d(1.0, 2.0));
  return {ab(0), ab(1)};
}

/// Fejer's first rule on cell-centred nodes, for integrals against sin(theta) d theta.
inline std::vector<double> fejer_weights(int n) {
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    const double theta = (j + 0.5) * pi / n;
    double s = 0.0;
    for (int k = 1; k <= n / 2; ++k) s += std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    w[j] = 2.0 / n * (1.0 - 2.0 * s);
  }
  return w;
}

}  // namespace detail

class Grid {
 public:
  static std::shared_ptr<const Grid> create(int nr = 24, int nt = 24, int np = 48, int stencil_order = 4) {
    if (stencil_order != 2 && stencil_order != 4) throw std::invalid_argument("Grid: stencil order must be 2 or 4");
    if (nr < stencil_order + 2) throw std::invalid_argument("Grid: too few radial points for the stencil");
    if (nt < 2 * stencil_order) throw std::invalid_argument("Grid: too few polar points");
    if (np < 2 * stencil_order || np % 2) throw std::invalid_argument("Grid: azimuthal count must be even and large enough");
    return std::shared_ptr<const Grid>(new Grid(nr, nt, np, stencil_order));
  }

  int nr() const { return nr_; }
  int nt() const { return nt_; }
  int np() const { return np_; }
  int stencil_order() const { return order_; }
  std::size_t size() const { return static_cast<std::size_t>(nr_) * nt_ * np_; }
  double h() const { return h_; }

  std::size_t index(int i, int j, int k) const { return (static_cast<std::size_t>(i) * nt_ + j) * np_ + k; }
  int radial_index(std::size_t node) const { return static_cast<int>(node / (static_cast<std::size_t>(nt_) * np_)); }
  int polar_index(std::size_t node) const { return static_cast<int>(node / np_ % nt_); }
  int azimuth_index(std::size_t node) const { return static_cast<int>(node % np_); }

  double r(int i) const { return (i + 0.5) * h_; }
  double theta(int j) const { return (j + 0.5) * pi / nt_; }
  double phi(int k) const { return 2.0 * pi * k / np_; }

  Point position(std::size_t node) const {
    const double rr = r(radial_index(node)), t = theta(polar_index(node)), p = phi(azimuth_index(node));
    return {rr * std::sin(t) * std::cos(p), rr * std::sin(t) * std::sin(p), rr * std::cos(t)};
  }

  double volume_weight(std::size_t node) const {
    const int i = radial_index(node);
    return radial_w_[i] * r(i) * r(i) * polar_w_[polar_index(node)] * (2.0 * pi / np_);
  }
  /// Weight of boundary node (j, k) for integrals over the unit sphere.
  double area_weight(int j, int k) const {
    (void)k;
    return polar_w_[j] * (2.0 * pi / np_);
  }
  int boundary_layer() const { return nr_ - 1; }

  /// Neighbours and weights of d/dx_c at `node`; the node itself is excluded (difference form).
  std::span<const Neighbor> stencil(std::size_t node, int c) const {
    return {stencils_.data() + (node * 3 + c) * width_, static_cast<std::size_t>(width_)};
  }

  bool same_as(const Grid& o) const {
    return nr_ == o.nr_ && nt_ == o.nt_ && np_ == o.np_ && order_ == o.order_;
  }

  std::uint64_t fingerprint() const {
    const std::array<int, 4> key{nr_, nt_, np_, order_};
    return fnv1a(key.data(), sizeof(key));
  }

  std::string describe() const {
    std::ostringstream os;
    os << nr_ << "x" << nt_ << "x" << np_ << "/o" << order_;
    return os.str();
  }

 private:
  Grid(int nr, int nt, int np, int order) : nr_(nr), nt_(nt), np_(np), order_(order), h_(1.0 / (nr - 0.5)) {
    radial_w_.assign(nr_, h_);
    // Gregory end correction at r = 1; the midpoint rule is exact enough at the centre for even integrands
    radial_w_[nr_ - 3] = h_ * 23.0 / 24.0;
    radial_w_[nr_ - 2] = h_ * 7.0 / 6.0;
    radial_w_[nr_ - 1] = h_ * 3.0 / 8.0;
    polar_w_ = detail::fejer_weights(nt_);
    build_stencils();
  }

  std::size_t resolve(int i, int j, int k) const {
    if (i < 0) {
      i = -i - 1;
      j = nt_ - 1 - j;
      k += np_ / 2;
    }
    if (j < 0) {
      j = -j - 1;
      k += np_ / 2;
    } else if (j >= nt_) {
      j = 2 * nt_ - 1 - j;
      k += np_ / 2;
    }
    k = ((k % np_) + np_) % np_;
    return index(i, j, k);
  }

  void build_stencils() {
    const int half = order_ / 2;
    width_ = 3 * order_;
    stencils_.assign(size() * 3 * width_, Neighbor{0, 0.0});
    const auto ang_t = detail::trig_weights(pi / nt_, order_);
    const auto ang_p = detail::trig_weights(2.0 * pi / np_, order_);

    for (int i = 0; i < nr_; ++i) {
      int lo = -half;
      if (i + lo + order_ > nr_ - 1) lo = nr_ - 1 - order_ - i;
      std::vector<double> xs;
      std::vector<int> offs;
      for (int o = lo; o <= lo + order_; ++o) {
        xs.push_back((i + o + 0.5) * h_);
        offs.push_back(o);
      }
      const auto rw = detail::fd_weights(r(i), xs);
      for (int j = 0; j < nt_; ++j)
        for (int k = 0; k < np_; ++k) {
          const std::size_t node = index(i, j, k);
          const double rr = r(i), t = theta(j), p = phi(k);
          const double st = std::sin(t), ct = std::cos(t), sp = std::sin(p), cp = std::cos(p);
          // d/dx_c = J[c][0] d/dr + J[c][1] d/dtheta + J[c][2] d/dphi
          const double jac[3][3] = {{st * cp, ct * cp / rr, -sp / (rr * st)},
                                    {st * sp, ct * sp / rr, cp / (rr * st)},
                                    {ct, -st / rr, 0.0}};
          std::vector<Neighbor> radial, polar, azimuth;
          for (std::size_t a = 0; a < offs.size(); ++a)
            if (offs[a] != 0) radial.push_back({static_cast<std::int32_t>(resolve(i + offs[a], j, k)), rw[a]});
          for (int o = 1; o <= half; ++o) {
            polar.push_back({static_cast<std::int32_t>(resolve(i, j + o, k)), ang_t[o - 1]});
            polar.push_back({static_cast<std::int32_t>(resolve(i, j - o, k)), -ang_t[o - 1]});
            azimuth.push_back({static_cast<std::int32_t>(resolve(i, j, k + o)), ang_p[o - 1]});
            azimuth.push_back({static_cast<std::int32_t>(resolve(i, j, k - o)), -ang_p[o - 1]});
          }
          for (int c = 0; c < 3; ++c) {
            Neighbor* out = stencils_.data() + (node * 3 + c) * width_;
            int slot = 0;
            for (auto nb : radial) out[slot++] = {nb.node, jac[c][0] * nb.weight};
            for (auto nb : polar) out[slot++] = {nb.node, jac[c][1] * nb.weight};
            for (auto nb : azimuth) out[slot++] = {nb.node, jac[c][2] * nb.weight};
            for (; slot < width_; ++slot) out[slot] = {static_cast<std::int32_t>(node), 0.0};
          }
        }
    }
  }

  int nr_, nt_, np_, order_;
  double h_;
  std::vector<double> radial_w_, polar_w_;
  int width_ = 0;
  std::vector<Neighbor> stencils_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline void check_same_grid(const GridPtr& a, const GridPtr& b, const char* who) {
  if (!a || !b || !a->same_as(*b)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

/// Bitmasks of the Cartesian multi-indices of degree p, in increasing order: 1,2,4 / 3,5,6 / 7.
inline std::vector<unsigned> component_masks(int degree) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < 8; ++mask)
    if (std::popcount(mask) == degree) out.push_back(mask);
  return out;
}

inline int component_slot(unsigned mask) {
  const auto masks = component_masks(std::popcount(mask));
  return static_cast<int>(std::find(masks.begin(), masks.end(), mask) - masks.begin());
}

/// Sign of dx^I ^ dx^J relative to dx^{I u J} in increasing order.
inline double shuffle_sign(unsigned I, unsigned J) {
  int inversions = 0;
  for (int a = 0; a < 3; ++a)
    if (I >> a & 1) inversions += std::popcount(J & ((1u << a) - 1));
  return (inversions & 1) ? -1.0 : 1.0;
}

/// Nodewise m x m matrices for each Cartesian component, stored contiguously.
class NodeField {
 public:
  NodeField() = default;
  NodeField(GridPtr grid, int m, int components)
      : grid_(std::move(grid)), m_(m), comps_(components) {
    if (!grid_) throw std::invalid_argument("NodeField: null grid");
    if (m < 1 || m > max_fiber) throw std::invalid_argument("NodeField: fiber dimension must be in 1..4");
    data_.assign(grid_->size() * comps_ * m_ * m_, cplx{});
  }

  const GridPtr& grid() const { return grid_; }
  int fiber_dim() const { return m_; }
  int components() const { return comps_; }

  Eigen::Map<Eigen::MatrixXcd> at(std::size_t node, int comp = 0) {
    return {data_.data() + offset(node, comp), m_, m_};
  }
  Eigen::Map<const Eigen::MatrixXcd> at(std::size_t node, int comp = 0) const {
    return {data_.data() + offset(node, comp), m_, m_};
  }

  const std::vector<cplx>& raw() const { return data_; }
  std::vector<cplx>& raw() { return data_; }

  std::uint64_t fingerprint() const {
    std::uint64_t h = fnv1a(data_.data(), data_.size() * sizeof(cplx));
    const std::array<std::uint64_t, 3> meta{grid_->fingerprint(), static_cast<std::uint64_t>(m_),
                                            static_cast<std::uint64_t>(comps_)};
    return fnv1a(meta.data(), sizeof(meta), h);
  }

 protected:
  std::size_t offset(std::size_t node, int comp) const {
    return (node * comps_ + comp) * static_cast<std::size_t>(m_ * m_);
  }

  GridPtr grid_;
  int m_ = 0;
  int comps_ = 0;
  std::vector<cplx> data_;
};

/// A p-form with values in m x m matrices; component c corresponds to component_masks(p)[c].
class LieForm : public NodeField {
 public:
  LieForm() = default;
  LieForm(GridPtr grid, int degree, int m) : NodeField(std::move(grid), m, check_degree(degree)), degree_(degree) {}

  template <class Fn>
  static LieForm zero_form(GridPtr grid, int m, Fn&& fn) {
    LieForm out(grid, 0, m);
    for (std::size_t n = 0; n < grid->size(); ++n) {
      const LieMatrix v = fn(grid->position(n));
      if (v.rows() != m || v.cols() != m) throw std::invalid_argument("LieForm: function value has wrong size");
      out.at(n) = v;
    }
    return out;
  }

  int degree() const { return degree_; }

  /// Largest deviation from anti-Hermitian over all nodes and components.
  double anti_hermitian_defect() const {
    double worst = 0.0;
    for (std::size_t n = 0; n < grid_->size(); ++n)
      for (int c = 0; c < comps_; ++c) worst = std::max(worst, max_abs(Matrix(at(n, c) + at(n, c).adjoint())));
    return worst;
  }

  /// Max-norm over nodes with r <= r_max (all nodes by default).
  double max_norm(double r_max = 2.0) const {
    double worst = 0.0;
    for (std::size_t n = 0; n < grid_->size(); ++n) {
      if (grid_->r(grid_->radial_index(n)) > r_max) continue;
      for (int c = 0; c < comps_; ++c) worst = std::max(worst, max_abs(Matrix(at(n, c))));
    }
    return worst;
  }

  LieForm& operator+=(const LieForm& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  LieForm& operator-=(const LieForm& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  LieForm& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend LieForm operator+(LieForm a, const LieForm& b) { return a += b; }
  friend LieForm operator-(LieForm a, const LieForm& b) { return a -= b; }
  friend LieForm operator*(cplx s, LieForm a) { return a *= s; }

 private:
  static int check_degree(int degree) {
    if (degree < 0 || degree > 3) throw std::invalid_argument("LieForm: degree must be 0..3");
    return static_cast<int>(component_masks(degree).size());
  }
  void check_compatible(const LieForm& o) const {
    check_same_grid(grid_, o.grid_, "LieForm");
    if (degree_ != o.degree_ || m_ != o.m_) throw std::invalid_argument("LieForm: degree or fiber mismatch");
  }

  int degree_ = 0;
};

using GaugePotential = LieForm;

/// Tolerances for the boundary flags of a GroupMap.
struct BoundaryTest {
  int flat_order = 2;           ///< number of one-sided radial differences tested at r = 1
  double flat_tolerance = 1e-6;
  double based_tolerance = 1e-10;
};

/**
 * Unitary-valued map on the grid.  `flat_boundary` records whether the first
 * flat_order backward radial differences at r = 1 (scaled by h^-k) vanish;
 * `based` whether every boundary node carries the identity.
 */
class GroupMap : public NodeField {
 public:
  GroupMap() = default;

  template <class Fn>
  static GroupMap from_function(GridPtr grid, int m, Fn&& fn, BoundaryTest test = {}) {
    GroupMap out(std::move(grid), m);
    for (std::size_t n = 0; n < out.grid_->size(); ++n) {
      const LieMatrix v = fn(out.grid_->position(n));
      if (v.rows() != m || v.cols() != m) throw std::invalid_argument("GroupMap: function value has wrong size");
      out.at(n) = v;
    }
    out.finalize(test);
    return out;
  }

  static GroupMap from_values(GridPtr grid, int m, std::vector<cplx> values, BoundaryTest test = {}) {
    GroupMap out(std::move(grid), m);
    if (values.size() != out.data_.size()) throw std::invalid_argument("GroupMap: wrong value count");
    out.data_ = std::move(values);
    out.finalize(test);
    return out;
  }

  static GroupMap identity(GridPtr grid, int m) {
    return from_function(std::move(grid), m, [m](const Point&) { return LieMatrix::Identity(m, m); });
  }

  bool flat_boundary() const { return flat_; }
  bool based() const { return based_; }
  /// Largest scaled backward difference at r = 1 for each order 1..flat_order.
  const std::vector<double>& boundary_differences() const { return differences_; }

  GroupMap inverse() const {
    GroupMap out = *this;
    for (std::size_t n = 0; n < grid_->size(); ++n) out.at(n) = at(n).adjoint();
    out.finalize(test_);
    return out;
  }

  friend GroupMap operator*(const GroupMap& a, const GroupMap& b) {
    check_same_grid(a.grid_, b.grid_, "GroupMap product");
    if (a.m_ != b.m_) throw std::invalid_argument("GroupMap product: fiber mismatch");
    GroupMap out = a;
    for (std::size_t n = 0; n < a.grid_->size(); ++n) out.at(n) = a.at(n) * b.at(n);
    out.finalize(a.test_);
    return out;
  }

 private:
  GroupMap(GridPtr grid, int m) : NodeField(std::move(grid), m, 1) {}

  void finalize(BoundaryTest test) {
    test_ = test;
    for (std::size_t n = 0; n < grid_->size(); ++n)
      if (!is_unitary(Matrix(at(n)), 1e-10)) throw std::invalid_argument("GroupMap: value is not unitary");
    const int last = grid_->boundary_layer();
    const double h = grid_->h();
    if (test.flat_order < 0 || test.flat_order > last) throw std::invalid_argument("GroupMap: bad flatness order");
    differences_.assign(test.flat_order, 0.0);
    double based_defect = 0.0;
    const Matrix id = Matrix::Identity(m_, m_);
    for (int j = 0; j < grid_->nt(); ++j)
      for (int k = 0; k < grid_->np(); ++k) {
        based_defect = std::max(based_defect, max_abs(Matrix(at(grid_->index(last, j, k)) - id)));
        // k-th backward difference: sum_s (-1)^s C(k,s) f(last - s)
        for (int order = 1; order <= test.flat_order; ++order) {
          Matrix diff = Matrix::Zero(m_, m_);
          double binom = 1.0;
          for (int s = 0; s <= order; ++s) {
            diff += ((s & 1) ? -binom : binom) * Matrix(at(grid_->index(last - s, j, k)));
            binom = binom * (order - s) / (s + 1);
          }
          differences_[order - 1] = std::max(differences_[order - 1], max_abs(diff) / std::pow(h, order));
        }
      }
    flat_ = std::all_of(differences_.begin(), differences_.end(), [&](double v) { return v < test.flat_tolerance; });
    based_ = based_defect < test.based_tolerance;
  }

  BoundaryTest test_;
  bool flat_ = false;
  bool based_ = false;
  std::vector<double> differences_;
};

enum class MapClass { sphere_group, flattened, three_loop, none };

inline std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::sphere_group: return "sphere-group";
    case MapClass::flattened: return "flattened";
    case MapClass::three_loop: return "3-loop";
    case MapClass::none: return "none";
  }
  return "none";
}

/// Most specific class: flat and based -> 3-loop; flat -> flattened; based -> sphere-group.
inline MapClass classify(const GroupMap& f) {
  if (f.flat_boundary()) return f.based() ? MapClass::three_loop : MapClass::flattened;
  return f.based() ? MapClass::sphere_group : MapClass::none;
}

namespace detail {

/// d/dx_c of one component of a field, written into `out` (m*m entries per node).
inline void partial(const NodeField& f, int comp, int c, std::vector<cplx>& out) {
  const auto& grid = *f.grid();
  const std::size_t block = static_cast<std::size_t>(f.fiber_dim() * f.fiber_dim());
  const std::size_t stride = block * f.components();
  const cplx* in = f.raw().data() + comp * block;
  out.assign(grid.size() * block, cplx{});
  for (std::size_t n = 0; n < grid.size(); ++n) {
    cplx* o = out.data() + n * block;
    const cplx* self = in + n * stride;
    for (const auto& nb : grid.stencil(n, c)) {
      if (nb.weight == 0.0) continue;
      const cplx* other = in + static_cast<std::size_t>(nb.node) * stride;
      for (std::size_t e = 0; e < block; ++e) o[e] += nb.weight * (other[e] - self[e]);
    }
  }
}

inline LieMatrix anti_hermitian_part(const LieMatrix& a) { return 0.5 * (a - a.adjoint()); }

}  // namespace detail

/// Exterior derivative; the matrix coefficients are differentiated entrywise.
inline LieForm d(const LieForm& form) {
  if (form.degree() >= 3) throw std::invalid_argument("d: degree-3 input");
  const auto& grid = form.grid();
  const int m = form.fiber_dim();
  LieForm out(grid, form.degree() + 1, m);
  const auto in_masks = component_masks(form.degree());
  std::vector<cplx> buf;
  const std::size_t block = static_cast<std::size_t>(m * m);
  for (std::size_t ci = 0; ci < in_masks.size(); ++ci) {
    for (int c = 0; c < 3; ++c) {
      const unsigned I = in_masks[ci];
      if (I >> c & 1) continue;
      const double sign = shuffle_sign(1u << c, I);
      const int slot = component_slot(I | (1u << c));
      detail::partial(form, static_cast<int>(ci), c, buf);
      for (std::size_t n = 0; n < grid->size(); ++n) {
        auto target = out.at(n, slot);
        for (std::size_t e = 0; e < block; ++e) target.data()[e] += sign * buf[n * block + e];
      }
    }
  }
  return out;
}

/// (a ^ b)_K = sum over splits K = I u J of sign(I,J) a_I b_J (matrix product in that order).
inline LieForm wedge(const LieForm& a, const LieForm& b) {
  check_same_grid(a.grid(), b.grid(), "wedge");
  if (a.fiber_dim() != b.fiber_dim()) throw std::invalid_argument("wedge: fiber mismatch");
  const int p = a.degree(), q = b.degree();
  if (p + q > 3) throw std::invalid_argument("wedge: total degree exceeds 3");
  LieForm out(a.grid(), p + q, a.fiber_dim());
  const auto out_masks = component_masks(p + q);
  struct Term {
    int slot_a, slot_b, slot_out;
    double sign;
  };
  std::vector<Term> terms;
  for (std::size_t k = 0; k < out_masks.size(); ++k)
    for (unsigned I : component_masks(p)) {
      if ((I & out_masks[k]) != I) continue;
      const unsigned J = out_masks[k] & ~I;
      terms.push_back({component_slot(I), component_slot(J), static_cast<int>(k), shuffle_sign(I, J)});
    }
  for (std::size_t n = 0; n < a.grid()->size(); ++n)
    for (const auto& t : terms) out.at(n, t.slot_out) += t.sign * (a.at(n, t.slot_a) * b.at(n, t.slot_b));
  return out;
}

/// a ^ b - b ^ a: for 1-forms the ungraded commutator of the matrix parts under the wedge.
inline LieForm bracket(const LieForm& a, const LieForm& b) { return wedge(a, b) - wedge(b, a); }

/// g^-1 dg for any unitary-valued map, projected to anti-Hermitian values.
inline GaugePotential left_derivative(const GroupMap& g) {
  const auto& grid = g.grid();
  const int m = g.fiber_dim();
  GaugePotential out(grid, 1, m);
  std::vector<cplx> buf;
  for (int c = 0; c < 3; ++c) {
    detail::partial(g, 0, c, buf);
    for (std::size_t n = 0; n < grid->size(); ++n) {
      const Eigen::Map<const Eigen::MatrixXcd> dg(buf.data() + n * m * m, m, m);
      const LieMatrix a = g.at(n).adjoint() * dg;
      out.at(n, c) = detail::anti_hermitian_part(a);
    }
  }
  return out;
}

/// A = f^-1 df.  Requires a flat boundary (A must be an exact gauge at the collapsed boundary).
inline GaugePotential maurer_cartan(const GroupMap& f) {
  if (!f.flat_boundary()) throw std::invalid_argument("maurer_cartan: map is not flat at the boundary");
  return left_derivative(f);
}

/// A^g = g^-1 A g + g^-1 dg, projected to anti-Hermitian values.
inline GaugePotential gauge_action(const GaugePotential& a, const GroupMap& g) {
  if (a.degree() != 1) throw std::invalid_argument("gauge_action: potential must be a 1-form");
  check_same_grid(a.grid(), g.grid(), "gauge_action");
  if (a.fiber_dim() != g.fiber_dim()) throw std::invalid_argument("gauge_action: fiber mismatch");
  GaugePotential out = left_derivative(g);
  for (std::size_t n = 0; n < a.grid()->size(); ++n)
    for (int c = 0; c < 3; ++c) {
      const LieMatrix conj = g.at(n).adjoint() * a.at(n, c) * g.at(n);
      out.at(n, c) += detail::anti_hermitian_part(conj);
    }
  return out;
}

/// dA + A ^ A
inline LieForm curvature(const GaugePotential& a) { return d(a) + wedge(a, a); }

/// Nodewise exp(s x) for an anti-Hermitian 0-form x.
inline GroupMap exponentiate(const LieForm& x, double s, BoundaryTest test = {}) {
  if (x.degree() != 0) throw std::invalid_argument("exponentiate: expects a 0-form");
  const int m = x.fiber_dim();
  std::vector<cplx> values(x.raw().size());
  for (std::size_t n = 0; n < x.grid()->size(); ++n) {
    const Matrix e = exp_antihermitian(s * Matrix(x.at(n)));
    std::copy(e.data(), e.data() + m * m, values.begin() + n * m * m);
  }
  return GroupMap::from_values(x.grid(), m, std::move(values), test);
}

/// Quadrature of the top component over the ball; trace = false requires scalar fibers.
inline cplx integrate3(const LieForm& form, bool trace = true) {
  if (form.degree() != 3) throw std::invalid_argument("integrate3: expects a 3-form");
  if (!trace && form.fiber_dim() != 1) throw std::invalid_argument("integrate3: untraced integral needs m = 1");
  const auto& grid = *form.grid();
  std::vector<cplx> terms(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) terms[n] = grid.volume_weight(n) * form.at(n).trace();
  return pairwise_sum<cplx>(terms);
}

/// Integral of a 2-form over the r = 1 sphere with outward orientation.
inline cplx integrate_boundary(const LieForm& form, bool trace = true) {
  if (form.degree() != 2) throw std::invalid_argument("integrate_boundary: expects a 2-form");
  if (!trace && form.fiber_dim() != 1) throw std::invalid_argument("integrate_boundary: untraced integral needs m = 1");
  const auto& grid = *form.grid();
  const int last = grid.boundary_layer();
  std::vector<cplx> terms;
  terms.reserve(static_cast<std::size_t>(grid.nt()) * grid.np());
  for (int j = 0; j < grid.nt(); ++j)
    for (int k = 0; k < grid.np(); ++k) {
      const std::size_t n = grid.index(last, j, k);
      const Point nrm = grid.position(n);
      // dy^dz ~ n_x dA, dx^dz ~ -n_y dA, dx^dy ~ n_z dA
      const cplx flux = nrm[0] * form.at(n, 2).trace() - nrm[1] * form.at(n, 1).trace() + nrm[2] * form.at(n, 0).trace();
      terms.push_back(grid.area_weight(j, k) * flux);
    }
  return pairwise_sum<cplx>(terms);
}

/// c (x dy^dz + y dz^dx + z dx^dy): restricts to c dA on the unit sphere.
template <class Fn>
LieForm sphere_density_form(GridPtr grid, int m, Fn&& density) {
  LieForm out(grid, 2, m);
  for (std::size_t n = 0; n < grid->size(); ++n) {
    const Point p = grid->position(n);
    const LieMatrix c = density(p);
    out.at(n, 0) = p[2] * c;
    out.at(n, 1) = -p[1] * c;
    out.at(n, 2) = p[0] * c;
  }
  return out;
}

/// density dx^dy^dz
template <class Fn>
LieForm volume_density_form(GridPtr grid, int m, Fn&& density) {
  LieForm out(grid, 3, m);
  for (std::size_t n = 0; n < grid->size(); ++n) out.at(n) = density(grid->position(n));
  return out;
}

// ---------------------------------------------------------------------------
// Test maps and Lie-algebra fields.

/// psi(t) / (psi(t) + psi(1 - t)) with psi(t) = exp(-1/t): smooth, 0 for t <= 0, 1 for t >= 1.
inline double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

inline constexpr double bump_inner = 0.1;
inline constexpr double bump_outer = 0.8;

/// 1 for r <= 0.1, 0 for r >= 0.8, smooth in between (so every radial derivative vanishes near r = 1).
inline double bump(double r) { return 1.0 - smoothstep((r - bump_inner) / (bump_outer - bump_inner)); }

inline double norm(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

inline const std::array<LieMatrix, 3>& pauli() {
  static const std::array<LieMatrix, 3> s = [] {
    std::array<LieMatrix, 3> out;
    for (auto& m : out) m = LieMatrix::Zero(2, 2);
    out[0](0, 1) = out[0](1, 0) = 1.0;
    out[1](0, 1) = -I;
    out[1](1, 0) = I;
    out[2](0, 0) = 1.0;
    out[2](1, 1) = -1.0;
    return out;
  }();
  return s;
}

/// exp(i v . sigma) in closed form.
inline LieMatrix su2_exp(const Point& v) {
  const double a = norm(v);
  LieMatrix out = std::cos(a) * LieMatrix::Identity(2, 2);
  if (a == 0.0) return out;
  const double s = std::sin(a) / a;
  for (int c = 0; c < 3; ++c) out += I * s * v[c] * pauli()[c];
  return out;
}

/// Real solid harmonics r^l Y_lm (unnormalized polynomials), l <= 2.
inline double solid_harmonic(int l, int m, const Point& p) {
  const double x = p[0], y = p[1], z = p[2];
  if (l == 0 && m == 0) return 1.0;
  if (l == 1) {
    if (m == -1) return y;
    if (m == 0) return z;
    if (m == 1) return x;
  }
  if (l == 2) {
    switch (m) {
      case -2: return x * y;
      case -1: return y * z;
      case 0: return 3.0 * z * z - (x * x + y * y + z * z);
      case 1: return x * z;
      case 2: return x * x - y * y;
      default: break;
    }
  }
  throw std::invalid_argument("solid_harmonic: need 0 <= l <= 2 and |m| <= l");
}

struct MapPreset {
  std::string name;
  int fiber_dim = 2;
  std::function<LieMatrix(const Point&)> value;
};

namespace detail {

inline std::vector<double> parse_numbers(const std::string& text, const std::string& preset) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw std::invalid_argument("invalid parameters for preset " + preset);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/**
 * Named group-valued maps:
 *   identity                      U(2) identity
 *   radial-bump:<amp>[,<b>]       exp(i sigma3 (amp bump(r) + b))
 *   su2-bump[:<amp>]              exp(i amp bump(r) x.sigma)             (default amp 1.5)
 *   harmonic:<l>,<m>[,<amp>]      exp(i amp bump(r) S_lm(x) sigma2)      (default amp 2)
 *   flat-twist:<amp>,<b>          exp(i b sigma3) exp(i amp bump(r) x.sigma)
 *   linear-radial:<amp>           exp(i amp r sigma3)
 *   u1-bump[:<amp>]               exp(i amp bump(r) (x + y z)) in U(1)   (default amp 1.5)
 */
inline MapPreset map_preset(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const auto args = colon == std::string::npos ? std::vector<double>{} : detail::parse_numbers(spec.substr(colon + 1), spec);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) throw std::invalid_argument("wrong number of parameters for preset " + spec);
  };
  if (name == "identity") {
    need(0, 0);
    return {spec, 2, [](const Point&) { return LieMatrix(LieMatrix::Identity(2, 2)); }};
  }
  if (name == "radial-bump") {
    need(1, 2);
    const double amp = args[0], b = args.size() > 1 ? args[1] : 0.0;
    return {spec, 2, [amp, b](const Point& p) { return su2_exp({0.0, 0.0, amp * bump(norm(p)) + b}); }};
  }
  if (name == "su2-bump") {
    need(0, 1);
    const double amp = args.empty() ? 1.5 : args[0];
    return {spec, 2, [amp](const Point& p) {
              const double w = amp * bump(norm(p));
              return su2_exp({w * p[0], w * p[1], w * p[2]});
            }};
  }
  if (name == "harmonic") {
    need(2, 3);
    const int l = static_cast<int>(args[0]), m = static_cast<int>(args[1]);
    if (l != args[0] || m != args[1]) throw std::invalid_argument("harmonic preset needs integer l, m");
    solid_harmonic(l, m, {0.0, 0.0, 0.0});
    const double amp = args.size() > 2 ? args[2] : 2.0;
    return {spec, 2, [l, m, amp](const Point& p) {
              return su2_exp({0.0, amp * bump(norm(p)) * solid_harmonic(l, m, p), 0.0});
            }};
  }
  if (name == "flat-twist") {
    need(2, 2);
    const double amp = args[0], b = args[1];
    const LieMatrix twist = su2_exp({0.0, 0.0, b});
    return {spec, 2, [amp, twist](const Point& p) {
              const double w = amp * bump(norm(p));
              return LieMatrix(twist * su2_exp({w * p[0], w * p[1], w * p[2]}));
            }};
  }
  if (name == "linear-radial") {
    need(1, 1);
    const double amp = args[0];
    return {spec, 2, [amp](const Point& p) { return su2_exp({0.0, 0.0, amp * norm(p)}); }};
  }
  if (name == "u1-bump") {
    need(0, 1);
    const double amp = args.empty() ? 1.5 : args[0];
    return {spec, 1, [amp](const Point& p) {
              return LieMatrix(LieMatrix::Constant(1, 1, std::exp(I * amp * bump(norm(p)) * (p[0] + p[1] * p[2]))));
            }};
  }
  throw std::invalid_argument("unknown map preset: " + spec);
}

inline GroupMap sample(const GridPtr& grid, const MapPreset& preset, BoundaryTest test = {}) {
  return GroupMap::from_function(grid, preset.fiber_dim, preset.value, test);
}

/**
 * Anti-Hermitian polynomial 0-forms named [c][s]{x,y,z}.  For m = 2:
 *   x = i(p_x p_y + p_x s3 + p_y p_z s1)
 *   y = i(p_x p_z + p_z s2 + p_x^2 s1)
 *   z = i(p_x + p_y p_z + p_y s1 + p_x p_z s3)
 * and the "s" variants drop the multiple of the identity.  For m = 1:
 *   x = i(p_x + p_y p_z), y = i(p_z - p_x^2), z = i(p_y + p_x p_z).
 * A leading "c" multiplies by bump(r), so the field vanishes near the boundary.
 */
inline std::function<LieMatrix(const Point&)> algebra_preset(const std::string& name, int m) {
  if (m != 1 && m != 2) throw std::invalid_argument("algebra_preset: m must be 1 or 2");
  std::string base = name;
  const bool compact = !base.empty() && base[0] == 'c';
  if (compact) base.erase(0, 1);
  const bool traceless = !base.empty() && base[0] == 's';
  if (traceless) base.erase(0, 1);
  if (base != "x" && base != "y" && base != "z") throw std::invalid_argument("unknown algebra preset: " + name);
  const char which = base[0];
  return [which, compact, traceless, m](const Point& p) {
    const double px = p[0], py = p[1], pz = p[2];
    const double cut = compact ? bump(norm(p)) : 1.0;
    const auto& s = pauli();
    LieMatrix out;
    if (m == 1) {
      double v = 0.0;
      if (which == 'x') v = px + py * pz;
      if (which == 'y') v = pz - px * px;
      if (which == 'z') v = py + px * pz;
      out = LieMatrix::Constant(1, 1, I * v);
    } else {
      double t = 0.0;
      if (which == 'x') { out = I * (px * s[2] + py * pz * s[0]); t = px * py; }
      if (which == 'y') { out = I * (pz * s[1] + px * px * s[0]); t = px * pz; }
      if (which == 'z') { out = I * (py * s[0] + px * pz * s[2]); t = px + py * pz; }
      if (!traceless) out += I * t * LieMatrix::Identity(2, 2);
    }
    return LieMatrix(cut * out);
  };
}

inline LieForm algebra_field(const GridPtr& grid, const std::string& name, int m) {
  return LieForm::zero_form(grid, m, algebra_preset(name, m));
}

}  // namespace cmfock::geometry
