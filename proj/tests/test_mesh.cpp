#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pxdg/exponent.hpp"
#include "pxdg/mesh.hpp"

using namespace pxdg;

namespace {
const Domain kSquare{-1.0, 1.0, -1.0, 1.0};
}

TEST_CASE("build_uniform_mesh counts") {
  const Mesh m = build_uniform_mesh(kSquare, 10, 10);
  CHECK(m.num_elements() == 100);
  CHECK(m.num_interior_edges() == 180);
  CHECK(m.num_boundary_edges() == 40);

  const Mesh one = build_uniform_mesh(kSquare, 1, 1);
  CHECK(one.num_elements() == 1);
  CHECK(one.num_interior_edges() == 0);
  CHECK(one.num_boundary_edges() == 4);

  const Mesh two = build_uniform_mesh(kSquare, 2, 1);
  CHECK(two.num_elements() == 2);
  REQUIRE(two.num_interior_edges() == 1);
  CHECK(two.edge(0).length == doctest::Approx(2.0));
  CHECK(two.edge(0).diameter == doctest::Approx(2.0));
  CHECK(two.num_boundary_edges() == 6);

  for (auto [nx, ny] : {std::pair{3, 5}, std::pair{7, 2}, std::pair{1, 4}}) {
    const Mesh r = build_uniform_mesh({0.0, 3.0, -2.0, 1.0}, nx, ny);
    CHECK(r.num_elements() == static_cast<std::size_t>(nx * ny));
    CHECK(r.num_interior_edges() == static_cast<std::size_t>(nx * (ny - 1) + ny * (nx - 1)));
    CHECK(r.num_boundary_edges() == static_cast<std::size_t>(2 * nx + 2 * ny));
  }
}

TEST_CASE("build_uniform_mesh rejects bad input") {
  CHECK_THROWS_AS(build_uniform_mesh(kSquare, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh(kSquare, 3, -1), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh({1.0, 1.0, 0.0, 1.0}, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_uniform_mesh({0.0, 1.0, 2.0, 1.0}, 2, 2), std::invalid_argument);
}

TEST_CASE("mesh invariants") {
  const Domain d{-0.3, 1.7, 0.1, 0.9};
  const Mesh m = build_uniform_mesh(d, 7, 5);

  double area = 0.0;
  for (const auto& el : m.elements()) {
    area += el.area;
    CHECK(el.area > 0.0);
    CHECK(el.diameter == doctest::Approx(std::hypot(el.bounds.width(), el.bounds.height())));
  }
  CHECK(std::abs(area - d.area()) <= 1e-12 * d.area());

  for (const Edge& e : m.edges()) {
    CHECK(e.diameter == e.length);
    CHECK(norm(e.nu_plus) == doctest::Approx(1.0));
    if (e.interior()) {
      CHECK(e.plus < *e.minus);
      const Vec2 towards = m.element(*e.minus).barycenter - m.element(e.plus).barycenter;
      CHECK(dot(e.nu_plus, towards) > 0.0);
    } else {
      // Outward: from the element barycenter to the edge midpoint.
      CHECK(dot(e.nu_plus, e.midpoint() - m.element(e.plus).barycenter) > 0.0);
    }
  }

  // Incidence symmetry: k lists e iff e lists k.
  for (const auto& el : m.elements()) {
    for (std::size_t e : el.edges) {
      const Edge& edge = m.edge(e);
      CHECK((edge.plus == el.index || edge.minus == el.index));
    }
  }
  std::vector<int> seen(m.num_elements(), 0);
  for (const Edge& e : m.edges()) {
    for (auto k : {std::optional<std::size_t>(e.plus), e.minus}) {
      if (!k) continue;
      const auto& list = m.element(*k).edges;
      CHECK(std::find(list.begin(), list.end(), e.index) != list.end());
      ++seen[*k];
    }
  }
  for (int s : seen) CHECK(s == 4);
}

TEST_CASE("mesh indexing is deterministic and row-major") {
  const Mesh a = build_uniform_mesh(kSquare, 4, 3);
  const Mesh b = build_uniform_mesh(kSquare, 4, 3);
  std::ostringstream sa, sb;
  write_mesh_csv(a, sa);
  write_mesh_csv(b, sb);
  CHECK(sa.str() == sb.str());

  CHECK(a.element(a.element_index(2, 1)).barycenter.x == doctest::Approx(0.25));
  CHECK(a.element(5).barycenter.y > a.element(2).barycenter.y);
  // Vertical interior first, then horizontal, then boundary starting bottom-left.
  CHECK(a.edge(0).kind == EdgeKind::VerticalInterior);
  CHECK(a.edge(3 * 3).kind == EdgeKind::HorizontalInterior);
  const Edge& first_boundary = a.edge(a.num_interior_edges());
  CHECK(first_boundary.kind == EdgeKind::Boundary);
  CHECK(first_boundary.plus == 0);
  CHECK(first_boundary.nu_plus == Vec2{0.0, -1.0});
}

TEST_CASE("mesh csv dump format") {
  const Mesh m = build_uniform_mesh(kSquare, 2, 1);
  std::ostringstream s;
  write_mesh_csv(m, s);
  const std::string text = s.str();
  CHECK(text.rfind("element_index,x_min,x_max,y_min,y_max\n0,-1,0,-1,1\n", 0) == 0);
  CHECK(text.find("edge_index,kind,plus,minus,length\n0,interior,0,1,2\n") != std::string::npos);
  CHECK(text.find("1,boundary,0,,1\n") != std::string::npos);
}

TEST_CASE("edge_weight") {
  const ExponentField two = ExponentField::constant(2.0);
  const Mesh m2 = build_uniform_mesh(kSquare, 2, 1);
  CHECK(edge_weight(m2.edge(0), two) == doctest::Approx(0.5));

  const Mesh m10 = build_uniform_mesh(kSquare, 10, 10);
  CHECK(edge_weight(m10.edge(0), two) == doctest::Approx(5.0));

  const Mesh unit = build_uniform_mesh({0.0, 2.0, 0.0, 1.0}, 2, 1);
  const ExponentField var([](Point x) { return 1.2 + 0.3 * x.x; }, 1.2, 1.8);
  CHECK(edge_weight(unit.edge(0), var) == doctest::Approx(1.0));

  // Midpoint sampling: diam 0.2, p(mid) = 1.5 -> p' = 3 -> 0.2^(-2/3).
  const ExponentField lin([](Point x) { return 1.5 + 0.25 * x.y; }, 1.25, 1.75);
  const Edge& e = m10.edge(0);  // vertical edge, y in [-1, -0.8], midpoint y = -0.9
  const double p = 1.5 + 0.25 * -0.9;
  CHECK(edge_weight(e, lin) == doctest::Approx(std::pow(0.2, -2.0 * (p - 1.0) / p)).epsilon(1e-14));
}
