#include "pxdg/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pxdg/quadrature.hpp"

namespace pxdg {

ExponentField::ExponentField(Evaluator p, double p1, double p2) : p_(std::move(p)), p1_(p1), p2_(p2) {
  if (!p_) throw std::invalid_argument("ExponentField: empty evaluator");
  if (!(1.0 < p1 && p1 <= p2 && p2 <= 2.0)) {
    throw std::invalid_argument("ExponentField: bounds must satisfy 1 < p1 <= p2 <= 2, got p1=" +
                                std::to_string(p1) + ", p2=" + std::to_string(p2));
  }
}

ExponentField ExponentField::constant(double p) {
  return ExponentField([p](Point) { return p; }, p, p);
}

double ExponentField::bound_violation(const Mesh& mesh) const {
  double worst = 0.0;
  auto check = [&](Point x) {
    const double v = p_(x);
    worst = std::max({worst, p1_ - v, v - p2_});
    return 0.0;
  };
  for (const auto& el : mesh.elements()) quadrature::integrate(el.bounds, check);
  for (const auto& e : mesh.edges()) check(e.midpoint());
  return worst;
}

double conjugate(double p) {
  if (!(p > 1.0)) throw std::domain_error("conjugate: exponent must exceed 1, got " + std::to_string(p));
  return p / (p - 1.0);
}

ExponentField manufactured_exponent(double b) {
  if (b < 0.0) throw std::invalid_argument("manufactured_exponent: b must be nonnegative");
  if (b == 0.0) return ExponentField::constant(2.0);
  // The denominator ranges over [1, 1 + 2b] on [-1,1]^2.
  return ExponentField([b](Point x) { return 1.0 + 1.0 / (0.5 * b * (x.x + x.y) + 1.0 + b); },
                       1.0 + 1.0 / (1.0 + 2.0 * b), 2.0);
}

namespace {

template <class Magnitude>
double modular_impl(const ExponentField& p, const Mesh& mesh, Magnitude&& magnitude) {
  double acc = 0.0;
  for (const auto& el : mesh.elements()) {
    const double a = magnitude(el.index);
    if (a == 0.0) continue;
    acc += quadrature::integrate(el.bounds, [&](Point x) { return std::pow(a, p(x)); });
  }
  return acc;
}

void check_size(std::size_t n, const Mesh& mesh) {
  if (n != mesh.num_elements()) throw std::invalid_argument("field size does not match mesh");
}

}  // namespace

double modular(const DgScalar& u, const ExponentField& p, const Mesh& mesh) {
  check_size(u.size(), mesh);
  return modular_impl(p, mesh, [&](std::size_t k) { return std::abs(u[k]); });
}

double modular(const DgVector& q, const ExponentField& p, const Mesh& mesh) {
  check_size(q.size(), mesh);
  return modular_impl(p, mesh, [&](std::size_t k) { return norm(q.at(k)); });
}

double luxemburg_from_modular(const std::function<double(double)>& modular_of, double rel_tol) {
  const double at_one = modular_of(1.0);
  if (at_one == 0.0) return 0.0;

  double lo = std::max(at_one, 1.0);
  double hi = lo;
  // k -> modular(u/k) is strictly decreasing; grow/shrink until [lo, hi] straddles 1.
  while (modular_of(hi) > 1.0) hi *= 2.0;
  while (modular_of(lo) < 1.0) lo *= 0.5;
  for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (modular_of(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const DgScalar& u, const ExponentField& p, const Mesh& mesh) {
  check_size(u.size(), mesh);
  return luxemburg_from_modular([&](double k) {
    return modular_impl(p, mesh, [&](std::size_t e) { return std::abs(u[e]) / k; });
  });
}

double luxemburg_norm(const DgVector& q, const ExponentField& p, const Mesh& mesh) {
  check_size(q.size(), mesh);
  return luxemburg_from_modular([&](double k) {
    return modular_impl(p, mesh, [&](std::size_t e) { return norm(q.at(e)) / k; });
  });
}

}  // namespace pxdg
