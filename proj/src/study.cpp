#include "pxdg/study.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <stdexcept>

#include "pxdg/quadrature.hpp"

namespace pxdg {

ManufacturedProblem manufactured_problem(double b) {
  if (b < 0.0) throw std::invalid_argument("manufactured_problem: b must be nonnegative");
  const double e = std::numbers::e, s2 = std::numbers::sqrt2;
  ManufacturedProblem prob{b, manufactured_exponent(b), {}, {}, Domain{-1.0, 1.0, -1.0, 1.0}};
  if (b == 0.0) {
    const double c = 0.5 * s2 * e;
    prob.exact_u = [c](Point x) { return c * (x.x + x.y); };
    prob.exact_grad = [c](Point) { return Vec2{c, c}; };
  } else {
    const double c = s2 * std::exp(b + 1.0) / b;
    prob.exact_u = [c, b](Point x) { return c * std::expm1(0.5 * b * (x.x + x.y)); };
    prob.exact_grad = [c, b](Point x) {
      const double g = 0.5 * b * c * std::exp(0.5 * b * (x.x + x.y));
      return Vec2{g, g};
    };
  }

  const Vec2 flux{0.5 * s2 * e, 0.5 * s2 * e};
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    const Point x{coord(rng), coord(rng)};
    const Vec2 g = prob.exact_grad(x);
    const Vec2 f = std::pow(norm(g), prob.exponent(x) - 2.0) * g;
    if (norm(f - flux) > 1e-10 * norm(flux)) {
      throw std::logic_error("manufactured_problem: flux self-check failed");
    }
  }
  return prob;
}

ProblemData make_problem_data(const ManufacturedProblem& prob, int nx, int ny, double r) {
  ProblemData data{build_uniform_mesh(prob.domain, nx, ny), prob.exponent, prob.exact_u, prob.exact_u, r};
  data.validate();
  return data;
}

double l2_error(const DgScalar& u_h, const ScalarFunction& exact, const Mesh& mesh, int gauss_points) {
  if (u_h.size() != mesh.num_elements()) throw std::invalid_argument("l2_error: field size does not match mesh");
  double acc = 0.0;
  for (const auto& el : mesh.elements()) {
    const double v = u_h[el.index];
    acc += quadrature::integrate(
        el.bounds,
        [&](Point x) {
          const double d = v - exact(x);
          return d * d;
        },
        gauss_points);
  }
  return std::sqrt(acc);
}

double l2_error(const DgScalar& u_h, const ManufacturedProblem& prob, const Mesh& mesh, int gauss_points) {
  return l2_error(u_h, prob.exact_u, mesh, gauss_points);
}

double broken_seminorm(const DgScalar& u, const ExponentField& p, const Mesh& mesh) {
  if (u.size() != mesh.num_elements()) throw std::invalid_argument("broken_seminorm: field size does not match mesh");
  auto edge_modular = [&](double k) {
    double acc = 0.0;
    for (const Edge& e : mesh.interior_edges()) {
      const double j = norm(jump(u, e)) / k;
      if (j == 0.0) continue;
      acc += quadrature::integrate(e, [&](Point x) {
        const double px = p(x);
        return std::pow(j * std::pow(e.diameter, -1.0 / conjugate(px)), px);
      });
    }
    return acc;
  };
  return luxemburg_from_modular(edge_modular);
}

std::vector<StudyRow> run_study(std::span<const double> b_list, std::span<const int> nx_list, const SolverConfig& cfg,
                                double r) {
  std::vector<StudyRow> rows;
  rows.reserve(b_list.size() * nx_list.size());
  for (double b : b_list) {
    const ManufacturedProblem prob = manufactured_problem(b);
    for (int nx : nx_list) {
      const ProblemData data = make_problem_data(prob, nx, nx, r);
      const SolverState state = run_solver(data, cfg);
      StudyRow row;
      row.b = b;
      row.nx = nx;
      row.ny = nx;
      row.m = data.mesh.num_elements();
      row.l2_error = l2_error(state.u, prob, data.mesh);
      row.iterations = state.iteration;
      row.jh = state.energy;
      row.converged = state.converged && state.inner_converged;
      rows.push_back(row);
    }
  }
  return rows;
}

double fit_rate(std::span<const StudyRow> rows) {
  if (rows.size() < 2) throw std::invalid_argument("fit_rate: need at least two rows");
  std::set<int> seen;
  for (const auto& row : rows) {
    if (row.b != rows.front().b) throw std::invalid_argument("fit_rate: rows must share b");
    if (!seen.insert(row.nx).second) throw std::invalid_argument("fit_rate: repeated nx");
    if (!(row.l2_error > 0.0)) throw std::invalid_argument("fit_rate: errors must be positive");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(rows.size());
  for (const auto& row : rows) {
    const double x = std::log(2.0 / row.nx), y = std::log(row.l2_error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_study_csv(std::span<const StudyRow> rows, std::ostream& out) {
  const auto old_precision = out.precision(12);
  out << "b,nx,m,l2_error,iterations,jh,converged\n";
  for (const auto& row : rows) {
    out << row.b << ',' << row.nx << ',' << row.m << ',' << row.l2_error << ',' << row.iterations << ',' << row.jh
        << ',' << (row.converged ? 1 : 0) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace pxdg
