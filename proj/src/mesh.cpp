#include "pxdg/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pxdg/exponent.hpp"

namespace pxdg {

namespace {

Edge make_edge(std::size_t index, EdgeKind kind, Point a, Point b, std::size_t plus,
               std::optional<std::size_t> minus, Vec2 nu) {
  Edge e;
  e.index = index;
  e.kind = kind;
  e.a = a;
  e.b = b;
  e.length = norm(b - a);
  e.diameter = e.length;
  e.plus = plus;
  e.minus = minus;
  e.nu_plus = nu;
  return e;
}

}  // namespace

Mesh build_uniform_mesh(const Domain& domain, int nx, int ny) {
  if (!(domain.x_min < domain.x_max) || !(domain.y_min < domain.y_max)) {
    throw std::invalid_argument("build_uniform_mesh: domain must satisfy x_min < x_max and y_min < y_max");
  }
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("build_uniform_mesh: element counts must be positive, got nx=" +
                                std::to_string(nx) + ", ny=" + std::to_string(ny));
  }

  Mesh mesh;
  mesh.domain_ = domain;
  mesh.nx_ = nx;
  mesh.ny_ = ny;

  const double hx = (domain.x_max - domain.x_min) / nx;
  const double hy = (domain.y_max - domain.y_min) / ny;
  // Grid lines are computed from the index, not accumulated, so the last
  // line coincides exactly with the domain boundary.
  auto xline = [&](int i) { return i == nx ? domain.x_max : domain.x_min + i * hx; };
  auto yline = [&](int j) { return j == ny ? domain.y_max : domain.y_min + j * hy; };

  mesh.elements_.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Element el;
      el.index = mesh.element_index(i, j);
      el.bounds = {xline(i), xline(i + 1), yline(j), yline(j + 1)};
      el.area = el.bounds.width() * el.bounds.height();
      el.barycenter = {0.5 * (el.bounds.x_min + el.bounds.x_max),
                       0.5 * (el.bounds.y_min + el.bounds.y_max)};
      el.diameter = std::hypot(el.bounds.width(), el.bounds.height());
      mesh.elements_.push_back(el);
    }
  }

  auto& edges = mesh.edges_;
  const std::size_t n_int = static_cast<std::size_t>(nx - 1) * ny + static_cast<std::size_t>(ny - 1) * nx;
  edges.reserve(n_int + 2 * static_cast<std::size_t>(nx + ny));

  enum Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };
  auto attach = [&](std::size_t k, Side s, std::size_t e) { mesh.elements_[k].edges[s] = e; };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const std::size_t k = mesh.element_index(i, j), kr = mesh.element_index(i + 1, j);
      const std::size_t e = edges.size();
      edges.push_back(make_edge(e, EdgeKind::VerticalInterior, {xline(i + 1), yline(j)},
                                {xline(i + 1), yline(j + 1)}, k, kr, {1.0, 0.0}));
      attach(k, Right, e);
      attach(kr, Left, e);
    }
  }
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t k = mesh.element_index(i, j), kt = mesh.element_index(i, j + 1);
      const std::size_t e = edges.size();
      edges.push_back(make_edge(e, EdgeKind::HorizontalInterior, {xline(i), yline(j + 1)},
                                {xline(i + 1), yline(j + 1)}, k, kt, {0.0, 1.0}));
      attach(k, Top, e);
      attach(kt, Bottom, e);
    }
  }
  mesh.num_interior_ = edges.size();

  // Boundary, counterclockwise: bottom, right, top, left.
  for (int i = 0; i < nx; ++i) {
    const std::size_t k = mesh.element_index(i, 0), e = edges.size();
    edges.push_back(make_edge(e, EdgeKind::Boundary, {xline(i), yline(0)}, {xline(i + 1), yline(0)}, k,
                              std::nullopt, {0.0, -1.0}));
    attach(k, Bottom, e);
  }
  for (int j = 0; j < ny; ++j) {
    const std::size_t k = mesh.element_index(nx - 1, j), e = edges.size();
    edges.push_back(make_edge(e, EdgeKind::Boundary, {xline(nx), yline(j)}, {xline(nx), yline(j + 1)}, k,
                              std::nullopt, {1.0, 0.0}));
    attach(k, Right, e);
  }
  for (int i = nx - 1; i >= 0; --i) {
    const std::size_t k = mesh.element_index(i, ny - 1), e = edges.size();
    edges.push_back(make_edge(e, EdgeKind::Boundary, {xline(i + 1), yline(ny)}, {xline(i), yline(ny)}, k,
                              std::nullopt, {0.0, 1.0}));
    attach(k, Top, e);
  }
  for (int j = ny - 1; j >= 0; --j) {
    const std::size_t k = mesh.element_index(0, j), e = edges.size();
    edges.push_back(make_edge(e, EdgeKind::Boundary, {xline(0), yline(j + 1)}, {xline(0), yline(j)}, k,
                              std::nullopt, {-1.0, 0.0}));
    attach(k, Left, e);
  }
  return mesh;
}

double edge_weight(const Edge& edge, const ExponentField& exponent) {
  const double p_conj = conjugate(exponent(edge.midpoint()));
  return std::pow(edge.diameter, -2.0 / p_conj);
}

void write_mesh_csv(const Mesh& mesh, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "element_index,x_min,x_max,y_min,y_max\n";
  for (const auto& el : mesh.elements()) {
    out << el.index << ',' << el.bounds.x_min << ',' << el.bounds.x_max << ',' << el.bounds.y_min << ','
        << el.bounds.y_max << '\n';
  }
  out << "edge_index,kind,plus,minus,length\n";
  for (const auto& e : mesh.edges()) {
    out << e.index << ',' << (e.interior() ? "interior" : "boundary") << ',' << e.plus << ',';
    if (e.minus) out << *e.minus;
    out << ',' << e.length << '\n';
  }
  out.precision(old_precision);
}

}  // namespace pxdg
