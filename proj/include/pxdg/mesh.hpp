#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace pxdg {

/// Plain 2-vector used both for points of the plane and for vector field values.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

struct Domain {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

struct Rectangle {
  double x_min, x_max, y_min, y_max;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

struct Element {
  std::size_t index = 0;
  Rectangle bounds{};
  double area = 0.0;
  Point barycenter{};
  double diameter = 0.0;  // diagonal length
  // Incident edges in the order left, right, bottom, top.
  std::array<std::size_t, 4> edges{};
};

enum class EdgeKind { VerticalInterior, HorizontalInterior, Boundary };

struct Edge {
  std::size_t index = 0;
  EdgeKind kind = EdgeKind::Boundary;
  Point a{}, b{};
  double length = 0.0;
  double diameter = 0.0;
  std::size_t plus = 0;
  std::optional<std::size_t> minus;  // empty on the boundary
  Vec2 nu_plus{};                    // outward unit normal of the plus element

  bool interior() const { return minus.has_value(); }
  Point midpoint() const { return 0.5 * (a + b); }
};

/// Uniform nx-by-ny partition of an axis-aligned rectangle.
///
/// Elements are numbered row-major (index = j*nx + i, i along x). Edges are
/// numbered vertical interior edges first, then horizontal interior edges,
/// then boundary edges counterclockwise starting at the lower-left corner.
/// On interior edges the plus element is the lower-indexed neighbour, so the
/// stored normal points from plus to minus.
class Mesh {
 public:
  const Domain& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return (domain_.x_max - domain_.x_min) / nx_; }
  double hy() const { return (domain_.y_max - domain_.y_min) / ny_; }

  std::size_t num_elements() const { return elements_.size(); }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(std::size_t k) const { return elements_[k]; }
  std::size_t element_index(int i, int j) const {
    return static_cast<std::size_t>(j) * nx_ + i;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  std::size_t num_interior_edges() const { return num_interior_; }
  std::size_t num_boundary_edges() const { return edges_.size() - num_interior_; }

  /// Interior edges occupy [0, num_interior_edges()), boundary edges the rest.
  auto interior_edges() const {
    return std::span(edges_).first(num_interior_);
  }
  auto boundary_edges() const {
    return std::span(edges_).subspan(num_interior_);
  }

  friend Mesh build_uniform_mesh(const Domain&, int, int);

 private:
  Domain domain_{};
  int nx_ = 0;
  int ny_ = 0;
  std::vector<Element> elements_;
  std::vector<Edge> edges_;
  std::size_t num_interior_ = 0;
};

/// Throws std::invalid_argument on an empty domain or nonpositive counts.
Mesh build_uniform_mesh(const Domain& domain, int nx, int ny);

class ExponentField;

/// Interior-penalty weight diam(e)^(-2/p'(x_e)) with p sampled at the edge midpoint.
double edge_weight(const Edge& edge, const ExponentField& exponent);

/// Debug dump: an element table followed by an edge table.
void write_mesh_csv(const Mesh& mesh, std::ostream& out);

}  // namespace pxdg
