#pragma once

// Reference computations used only by the tests. None of these call into the
// solver's assembly or update routines.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pxdg/dg_core.hpp"
#include "pxdg/energy.hpp"
#include "pxdg/mesh.hpp"

namespace pxdg::oracle {

/// Midpoint rule on an n-by-n grid over the domain.
double midpoint_integral(const std::function<double(Point)>& f, const Domain& d, int n);

/// 200-step bisection for x^{p-1} + r x = c on [0, max(c, c/r)].
double bisection_root(double p, double r, double c, int steps = 200);

/// Dense m x m matrix of B^T W B built by applying dg_core's lifting to basis fields.
Eigen::MatrixXd dense_btwb(const Mesh& mesh);

/// G(v) = 1/2 v^T A v - g^T v + c recovered from eval_G by polarization.
struct Quadratic {
  Eigen::MatrixXd a;
  Eigen::VectorXd g;
  double c = 0.0;
};
Quadratic polarize_G(const ProblemData& data);

/// Minimizer of J_h for p == 2: solves (A + B^T W B) v = g directly.
Eigen::VectorXd direct_minimizer_p2(const ProblemData& data);

/// Gradient of J_h (barycenter rule) as A v - g + B^T W grad_F(Bv).
Eigen::VectorXd grad_Jh(const Quadratic& q, const Eigen::MatrixXd& btw, const ProblemData& data,
                        const Eigen::VectorXd& v);

/// Damped Newton on J_h (barycenter rule) with a finite-difference Hessian of
/// the analytic gradient; stops at gradient norm <= grad_tol.
struct DescentResult {
  Eigen::VectorXd v;
  double grad_norm = 0.0;
  int iterations = 0;
};
DescentResult minimize_Jh(const ProblemData& data, Eigen::VectorXd start, double grad_tol = 1e-10,
                          int max_iter = 200);

inline DgScalar to_dg(const Eigen::VectorXd& v) {
  return DgScalar(std::vector<double>(v.data(), v.data() + v.size()));
}
inline Eigen::VectorXd to_eigen(const DgScalar& u) {
  return Eigen::Map<const Eigen::VectorXd>(u.data().data(), static_cast<Eigen::Index>(u.size()));
}

}  // namespace pxdg::oracle
