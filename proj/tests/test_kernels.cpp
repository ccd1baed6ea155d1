#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/SparseCore>

#include "pxdg/dg_core.hpp"
#include "pxdg/kernels/kernels.hpp"

using namespace pxdg;
using pxdg::kernels::Grid;
using pxdg::kernels::KernelTable;

namespace {
std::vector<double> random_values(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::vector<const KernelTable*> tables() {
  std::vector<const KernelTable*> out{&kernels::scalar_table()};
  if (const KernelTable* t = kernels::avx2_table()) out.push_back(t);
  return out;
}

const std::vector<std::pair<int, int>> kShapes{{1, 1}, {2, 1}, {1, 3}, {3, 3}, {5, 4}, {8, 8}, {10, 10}, {13, 7}, {31, 31}};
}  // namespace

TEST_CASE("kernel lift matches the lifting operator") {
  std::mt19937_64 rng(1);
  for (const KernelTable* t : tables()) {
    CAPTURE(t->name);
    for (auto [nx, ny] : kShapes) {
      const Mesh mesh = build_uniform_mesh({-1.0, 2.0, 0.0, 1.0}, nx, ny);
      const Grid g{nx, ny, mesh.hx(), mesh.hy()};
      const DgScalar u(random_values(g.size(), rng));
      std::vector<double> bu(2 * g.size());
      t->lift(g, u.data(), bu);
      const DgVector ref = lifting(u, mesh);
      for (std::size_t i = 0; i < bu.size(); ++i) CHECK(std::abs(bu[i] - ref.data()[i]) <= 1e-12);
    }
  }
}

TEST_CASE("kernel lift_adjoint matches B^T W") {
  std::mt19937_64 rng(2);
  for (const KernelTable* t : tables()) {
    CAPTURE(t->name);
    for (auto [nx, ny] : kShapes) {
      const Mesh mesh = build_uniform_mesh({0.0, 1.0, -1.0, 1.0}, nx, ny);
      const Grid g{nx, ny, mesh.hx(), mesh.hy()};
      const std::vector<double> w = random_values(2 * g.size(), rng);
      std::vector<double> out(g.size());
      t->lift_adjoint(g, w, out);
      const Eigen::SparseMatrix<double> b = b_operator_matrix(mesh);
      Eigen::VectorXd aw(2 * g.size());
      for (std::size_t k = 0; k < g.size(); ++k) {
        aw[2 * k] = mesh.element(k).area * w[2 * k];
        aw[2 * k + 1] = mesh.element(k).area * w[2 * k + 1];
      }
      const Eigen::VectorXd ref = Eigen::SparseMatrix<double>(b.transpose()) * aw;
      for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(out[j] - ref[j]) <= 1e-12);
    }
  }
}

TEST_CASE("scalar and AVX2 kernels agree") {
  const KernelTable* fast = kernels::avx2_table();
  if (!fast) {
    MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
    return;
  }
  const KernelTable& ref = kernels::scalar_table();
  std::mt19937_64 rng(3);
  for (auto [nx, ny] : kShapes) {
    const Grid g{nx, ny, 0.3, 0.7};
    const std::size_t m = g.size();
    const std::vector<double> u = random_values(m, rng);
    std::vector<double> a(2 * m), b(2 * m);
    ref.lift(g, u, a);
    fast->lift(g, u, b);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-13);

    const std::vector<double> w = random_values(2 * m, rng);
    std::vector<double> oa(m), ob(m);
    ref.lift_adjoint(g, w, oa);
    fast->lift_adjoint(g, w, ob);
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(oa[i] - ob[i]) <= 1e-13);

    const std::vector<double> bu = random_values(2 * m, rng), eta = random_values(2 * m, rng);
    std::vector<double> la = random_values(2 * m, rng);
    std::vector<double> lb = la;
    ref.multiplier_update(0.9, bu, eta, la);
    fast->multiplier_update(0.9, bu, eta, lb);
    for (std::size_t i = 0; i < la.size(); ++i) CHECK(std::abs(la[i] - lb[i]) <= 1e-15);

    std::vector<double> wt = random_values(m, rng);
    for (double& x : wt) x = std::abs(x);
    for (int comps : {1, 2}) {
      const std::span<const double> x(bu.data(), comps * m), y(eta.data(), comps * m);
      const double sa = ref.weighted_sq_diff(wt, comps, x, y);
      const double sb = fast->weighted_sq_diff(wt, comps, x, y);
      CHECK(std::abs(sa - sb) <= 1e-12 * std::max(1.0, sa));
      const double za = ref.weighted_sq_diff(wt, comps, x, {});
      const double zb = fast->weighted_sq_diff(wt, comps, x, {});
      CHECK(std::abs(za - zb) <= 1e-12 * std::max(1.0, za));
    }
  }
}

TEST_CASE("weighted_sq_diff reference values") {
  const KernelTable& k = kernels::scalar_table();
  const std::vector<double> w{1.0, 2.0}, a{1.0, 2.0, 3.0, 4.0}, b{1.0, 0.0, 0.0, 4.0};
  CHECK(k.weighted_sq_diff(w, 2, a, b) == doctest::Approx(4.0 + 2.0 * 9.0));
  CHECK(k.weighted_sq_diff(w, 1, std::span<const double>(a).first(2), {}) == doctest::Approx(1.0 + 8.0));
  CHECK(!kernels::active().name.empty());
}
