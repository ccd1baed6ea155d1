#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "pxdg/mesh.hpp"

namespace pxdg {

/// Piecewise-constant scalar field: one value per element.
class DgScalar {
 public:
  DgScalar() = default;
  explicit DgScalar(std::size_t n, double value = 0.0) : values_(n, value) {}
  explicit DgScalar(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }
  const std::vector<double>& values() const { return values_; }

  DgScalar& operator+=(const DgScalar& o);
  DgScalar& operator*=(double s);
  friend DgScalar operator+(DgScalar a, const DgScalar& b) { return a += b; }
  friend DgScalar operator-(DgScalar a, const DgScalar& b) { return a += -1.0 * b; }
  friend DgScalar operator*(double s, DgScalar a) { return a *= s; }

 private:
  std::vector<double> values_;
};

/// Piecewise-constant 2-vector field, stored interleaved (x0, y0, x1, y1, ...).
class DgVector {
 public:
  DgVector() = default;
  explicit DgVector(std::size_t n) : values_(2 * n, 0.0) {}
  DgVector(std::size_t n, Vec2 value);

  std::size_t size() const { return values_.size() / 2; }
  Vec2 at(std::size_t k) const { return {values_[2 * k], values_[2 * k + 1]}; }
  void set(std::size_t k, Vec2 v) {
    values_[2 * k] = v.x;
    values_[2 * k + 1] = v.y;
  }
  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

  DgVector& operator+=(const DgVector& o);
  DgVector& operator*=(double s);
  friend DgVector operator+(DgVector a, const DgVector& b) { return a += b; }
  friend DgVector operator-(DgVector a, const DgVector& b) { return a += -1.0 * b; }
  friend DgVector operator*(double s, DgVector a) { return a *= s; }

 private:
  std::vector<double> values_;
};

/// [u] = u+ nu+ + u- nu- on an interior edge. Throws std::domain_error on the boundary.
Vec2 jump(const DgScalar& u, const Edge& e);

/// {phi} = (phi+ + phi-)/2 on an interior edge. Throws std::domain_error on the boundary.
Vec2 average(const DgVector& phi, const Edge& e);

/// Lifting R_h(u), defined by
///   sum_k |k| <R_h(u)_k, phi_k> = - sum_{e interior} |e| <[u]_e, {phi}_e>
/// for every piecewise-constant phi. With a diagonal mass matrix this gives
/// R_h(u)_k = -(1/|k|) sum_{e in dk, interior} (|e|/2) [u]_e.
DgVector lifting(const DgScalar& u, const Mesh& mesh);

/// B u = broken gradient + lifting. The broken gradient of a P0 field is zero,
/// so B coincides with R_h here.
DgVector b_operator(const DgScalar& u, const Mesh& mesh);

/// Sparse (2m x m) matrix of B in the interleaved layout of DgVector.
Eigen::SparseMatrix<double> b_operator_matrix(const Mesh& mesh);

/// L2 inner product of piecewise-constant fields: sum_k |k| <a_k, b_k>.
double inner(const DgVector& a, const DgVector& b, const Mesh& mesh);
double inner(const DgScalar& a, const DgScalar& b, const Mesh& mesh);
double l2_norm(const DgVector& a, const Mesh& mesh);
double l2_norm(const DgScalar& a, const Mesh& mesh);

}  // namespace pxdg
