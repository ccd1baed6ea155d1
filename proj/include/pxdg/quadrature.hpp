#pragma once

#include <span>

#include "pxdg/mesh.hpp"

namespace pxdg::quadrature {

struct Rule1d {
  std::span<const double> nodes;    // on [-1, 1]
  std::span<const double> weights;  // sum to 2
};

/// Gauss-Legendre rule with n points, n in {1, 2, 3, 4, 5}.
Rule1d gauss_legendre(int n);

/// Tensor Gauss rule on a rectangle, f(Point) -> double.
template <class F>
double integrate(const Rectangle& r, F&& f, int n = 3) {
  const Rule1d g = gauss_legendre(n);
  const double cx = 0.5 * (r.x_min + r.x_max), sx = 0.5 * r.width();
  const double cy = 0.5 * (r.y_min + r.y_max), sy = 0.5 * r.height();
  double acc = 0.0;
  for (std::size_t j = 0; j < g.nodes.size(); ++j) {
    const double y = cy + sy * g.nodes[j];
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      acc += g.weights[i] * g.weights[j] * f(Point{cx + sx * g.nodes[i], y});
    }
  }
  return acc * sx * sy;
}

/// Gauss rule along a straight edge.
template <class F>
double integrate(const Edge& e, F&& f, int n = 3) {
  const Rule1d g = gauss_legendre(n);
  const Point mid = e.midpoint();
  const Vec2 half = 0.5 * (e.b - e.a);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * f(mid + g.nodes[i] * half);
  return acc * 0.5 * e.length;
}

}  // namespace pxdg::quadrature
