#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace pxdg::oracle {

double midpoint_integral(const std::function<double(Point)>& f, const Domain& d, int n) {
  const double hx = (d.x_max - d.x_min) / n, hy = (d.y_max - d.y_min) / n;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) acc += f({d.x_min + (i + 0.5) * hx, d.y_min + (j + 0.5) * hy});
  }
  return acc * hx * hy;
}

double bisection_root(double p, double r, double c, int steps) {
  double lo = 0.0, hi = std::max(c, c / r);
  for (int i = 0; i < steps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::pow(mid, p - 1.0) + r * mid > c ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::MatrixXd dense_btwb(const Mesh& mesh) {
  const auto m = static_cast<Eigen::Index>(mesh.num_elements());
  Eigen::MatrixXd bcols(2 * m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    DgScalar e(static_cast<std::size_t>(m));
    e[static_cast<std::size_t>(j)] = 1.0;
    const DgVector r = lifting(e, mesh);
    for (Eigen::Index i = 0; i < 2 * m; ++i) bcols(i, j) = r.data()[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd w(2 * m);
  for (Eigen::Index k = 0; k < m; ++k) w[2 * k] = w[2 * k + 1] = mesh.element(static_cast<std::size_t>(k)).area;
  return bcols.transpose() * w.asDiagonal() * bcols;
}

Quadratic polarize_G(const ProblemData& data) {
  const std::size_t m = data.mesh.num_elements();
  Quadratic q;
  q.a.setZero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  q.g.setZero(static_cast<Eigen::Index>(m));
  const DgScalar zero(m);
  q.c = eval_G(zero, data);
  std::vector<double> single(m);
  for (std::size_t i = 0; i < m; ++i) {
    DgScalar e(m);
    e[i] = 1.0;
    DgScalar me(m);
    me[i] = -1.0;
    const double gp = eval_G(e, data), gm = eval_G(me, data);
    // G(+e) = a/2 - g + c, G(-e) = a/2 + g + c
    q.a(i, i) = gp + gm - 2.0 * q.c;
    q.g(i) = 0.5 * (gm - gp);
    single[i] = gp;
  }
  // Off-diagonal entries are nonzero only for elements sharing an edge.
  for (const Edge& e : data.mesh.interior_edges()) {
    const std::size_t i = e.plus, j = *e.minus;
    DgScalar v(m);
    v[i] = 1.0;
    v[j] = 1.0;
    const double aij = eval_G(v, data) - single[i] - single[j] + q.c;
    q.a(i, j) = q.a(j, i) = aij;
  }
  return q;
}

Eigen::VectorXd direct_minimizer_p2(const ProblemData& data) {
  const Quadratic q = polarize_G(data);
  const Eigen::MatrixXd h = q.a + dense_btwb(data.mesh);
  return h.ldlt().solve(q.g);
}

Eigen::VectorXd grad_Jh(const Quadratic& q, const Eigen::MatrixXd& btw, const ProblemData& data,
                        const Eigen::VectorXd& v) {
  const DgVector bv = b_operator(to_dg(v), data.mesh);
  const DgVector gf = grad_F(bv, data);
  const Eigen::Map<const Eigen::VectorXd> gfe(gf.data().data(), static_cast<Eigen::Index>(gf.data().size()));
  return q.a * v - q.g + btw * gfe;
}

DescentResult minimize_Jh(const ProblemData& data, Eigen::VectorXd v, double grad_tol, int max_iter) {
  const auto m = static_cast<Eigen::Index>(data.mesh.num_elements());
  const Quadratic q = polarize_G(data);
  // (B^T W) as a dense m x 2m matrix from the lifting of basis fields.
  Eigen::MatrixXd btw(m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    DgScalar e(static_cast<std::size_t>(m));
    e[static_cast<std::size_t>(j)] = 1.0;
    const DgVector r = lifting(e, data.mesh);
    for (Eigen::Index i = 0; i < 2 * m; ++i) {
      btw(j, i) = r.data()[static_cast<std::size_t>(i)] * data.mesh.element(static_cast<std::size_t>(i / 2)).area;
    }
  }
  auto energy = [&](const Eigen::VectorXd& x) { return eval_Jh(to_dg(x), data, FQuadrature::Barycenter).J; };

  DescentResult res;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd g = grad_Jh(q, btw, data, v);
    res.grad_norm = g.norm();
    res.iterations = it;
    if (res.grad_norm <= grad_tol) break;
    Eigen::MatrixXd h(m, m);
    const double eps = 1e-6;
    for (Eigen::Index j = 0; j < m; ++j) {
      Eigen::VectorXd vp = v, vm = v;
      vp[j] += eps;
      vm[j] -= eps;
      h.col(j) = (grad_Jh(q, btw, data, vp) - grad_Jh(q, btw, data, vm)) / (2.0 * eps);
    }
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::VectorXd step = -h.ldlt().solve(g);
    if (!(g.dot(step) < 0.0)) step = -g;
    // Backtracking on the energy; accept the full step once close to the
    // minimum, where energy differences fall below rounding.
    const double j0 = energy(v);
    double t = 1.0;
    while (t > 1e-12 && energy(v + t * step) > j0 + 1e-4 * t * g.dot(step) && res.grad_norm > 1e-6) t *= 0.5;
    v += t * step;
  }
  res.v = v;
  return res;
}

}  // namespace pxdg::oracle
