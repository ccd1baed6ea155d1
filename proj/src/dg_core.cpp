#include "pxdg/dg_core.hpp"

#include <cmath>
#include <stdexcept>

namespace pxdg {

DgScalar& DgScalar::operator+=(const DgScalar& o) {
  if (o.size() != size()) throw std::invalid_argument("DgScalar: size mismatch");
  for (std::size_t k = 0; k < size(); ++k) values_[k] += o.values_[k];
  return *this;
}

DgScalar& DgScalar::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

DgVector::DgVector(std::size_t n, Vec2 value) : values_(2 * n) {
  for (std::size_t k = 0; k < n; ++k) set(k, value);
}

DgVector& DgVector::operator+=(const DgVector& o) {
  if (o.size() != size()) throw std::invalid_argument("DgVector: size mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

DgVector& DgVector::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Vec2 jump(const DgScalar& u, const Edge& e) {
  if (!e.interior()) throw std::domain_error("jump: defined on interior edges only");
  // nu- = -nu+, so u+ nu+ + u- nu- = (u+ - u-) nu+.
  return (u[e.plus] - u[*e.minus]) * e.nu_plus;
}

Vec2 average(const DgVector& phi, const Edge& e) {
  if (!e.interior()) throw std::domain_error("average: defined on interior edges only");
  return 0.5 * (phi.at(e.plus) + phi.at(*e.minus));
}

DgVector lifting(const DgScalar& u, const Mesh& mesh) {
  if (u.size() != mesh.num_elements()) throw std::invalid_argument("lifting: field size does not match mesh");
  DgVector r(mesh.num_elements());
  for (const Edge& e : mesh.interior_edges()) {
    const Vec2 contrib = (-0.5 * e.length) * jump(u, e);
    for (std::size_t k : {e.plus, *e.minus}) {
      r.set(k, r.at(k) + contrib / mesh.element(k).area);
    }
  }
  return r;
}

DgVector b_operator(const DgScalar& u, const Mesh& mesh) { return lifting(u, mesh); }

Eigen::SparseMatrix<double> b_operator_matrix(const Mesh& mesh) {
  const auto m = static_cast<Eigen::Index>(mesh.num_elements());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(8 * mesh.num_interior_edges());
  for (const Edge& e : mesh.interior_edges()) {
    // Column for u+ carries +nu+, column for u- carries -nu+.
    for (std::size_t k : {e.plus, *e.minus}) {
      const double s = -0.5 * e.length / mesh.element(k).area;
      const auto row = 2 * static_cast<Eigen::Index>(k);
      for (int c = 0; c < 2; ++c) {
        const double n = c == 0 ? e.nu_plus.x : e.nu_plus.y;
        if (n == 0.0) continue;
        trips.emplace_back(row + c, static_cast<Eigen::Index>(e.plus), s * n);
        trips.emplace_back(row + c, static_cast<Eigen::Index>(*e.minus), -s * n);
      }
    }
  }
  Eigen::SparseMatrix<double> b(2 * m, m);
  b.setFromTriplets(trips.begin(), trips.end());
  return b;
}

double inner(const DgVector& a, const DgVector& b, const Mesh& mesh) {
  double acc = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) acc += mesh.element(k).area * dot(a.at(k), b.at(k));
  return acc;
}

double inner(const DgScalar& a, const DgScalar& b, const Mesh& mesh) {
  double acc = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) acc += mesh.element(k).area * a[k] * b[k];
  return acc;
}

double l2_norm(const DgVector& a, const Mesh& mesh) { return std::sqrt(inner(a, a, mesh)); }
double l2_norm(const DgScalar& a, const Mesh& mesh) { return std::sqrt(inner(a, a, mesh)); }

}  // namespace pxdg
