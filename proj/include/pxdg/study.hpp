#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "pxdg/dg_core.hpp"
#include "pxdg/energy.hpp"
#include "pxdg/exponent.hpp"
#include "pxdg/solver.hpp"

namespace pxdg {

/// Manufactured family on [-1,1]^2 with xi = u and u_D = u on the boundary.
/// The flux |grad u|^{p-2} grad u is the constant (sqrt(2) e / 2)(1, 1), so u
/// minimizes the continuous energy for every b >= 0.
struct ManufacturedProblem {
  double b = 0.0;
  ExponentField exponent;
  ScalarFunction exact_u;
  std::function<Vec2(Point)> exact_grad;
  Domain domain{};
};

/// Throws std::invalid_argument for b < 0 and std::logic_error if the flux
/// self-check fails.
ManufacturedProblem manufactured_problem(double b);

ProblemData make_problem_data(const ManufacturedProblem& prob, int nx, int ny, double r);

/// ||u_h - u||_{L2}, n x n Gauss per element.
double l2_error(const DgScalar& u_h, const ScalarFunction& exact, const Mesh& mesh, int gauss_points = 3);
double l2_error(const DgScalar& u_h, const ManufacturedProblem& prob, const Mesh& mesh, int gauss_points = 3);

/// Broken W^{1,p(.)} seminorm ||grad u||_{L^{p(.)}} + ||[u] h^{-1/p'}||_{L^{p(.)}(interior edges)}.
/// The first term vanishes for piecewise constants.
double broken_seminorm(const DgScalar& u, const ExponentField& p, const Mesh& mesh);

struct StudyRow {
  double b = 0.0;
  int nx = 0;
  int ny = 0;
  std::size_t m = 0;
  double l2_error = 0.0;
  int iterations = 0;
  double jh = 0.0;
  bool converged = false;
};

/// One row per (b, nx) pair on nx-by-nx meshes, b-major, in input order.
std::vector<StudyRow> run_study(std::span<const double> b_list, std::span<const int> nx_list,
                                const SolverConfig& cfg, double r = 1.0);

/// Least-squares slope of log(error) against log(h), h = 2/nx.
/// Throws std::invalid_argument with fewer than two rows, mixed b or repeated nx.
double fit_rate(std::span<const StudyRow> rows);

/// b,nx,m,l2_error,iterations,jh,converged
void write_study_csv(std::span<const StudyRow> rows, std::ostream& out);

}  // namespace pxdg
