#include "pxdg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "pxdg/kernels/kernels.hpp"
#include "pxdg/quadrature.hpp"

namespace pxdg {

// ---------------------------------------------------------------------------
// Step size

StepSizeCheck check_step_size(Algorithm alg, double r, double rho) {
  StepSizeCheck out;
  out.upper = alg == Algorithm::Alg1 ? 2.0 * r : r * (1.0 + std::sqrt(5.0)) / 2.0;
  out.ok = rho > 0.0 && rho < out.upper;
  if (!out.ok) {
    std::ostringstream msg;
    msg << (alg == Algorithm::Alg1 ? "Alg1" : "Alg2") << ": rho=" << rho << " outside (0, " << out.upper
        << ") for r=" << r << "; convergence is not guaranteed";
    out.message = msg.str();
  }
  return out;
}

SolverState SolverState::zero(std::size_t num_elements) {
  SolverState s;
  s.u = DgScalar(num_elements);
  s.eta = DgVector(num_elements);
  s.lam = DgVector(num_elements);
  return s;
}

// ---------------------------------------------------------------------------
// System matrix

struct SystemMatrix::Factor {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
};

SystemMatrix::SystemMatrix(Eigen::SparseMatrix<double> m) : matrix_(std::move(m)) {
  matrix_.makeCompressed();
  auto f = std::make_shared<Factor>();
  f->llt.compute(matrix_);
  if (f->llt.info() != Eigen::Success) {
    throw std::runtime_error("SystemMatrix: Cholesky factorization failed (matrix not SPD)");
  }
  factor_ = std::move(f);
}

double SystemMatrix::entry(std::size_t i, std::size_t j) const {
  return matrix_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

double SystemMatrix::symmetry_defect() const {
  const Eigen::SparseMatrix<double> t = matrix_.transpose();
  const Eigen::SparseMatrix<double> d = matrix_ - t;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

DgScalar SystemMatrix::solve(std::span<const double> rhs, double linear_tol) const {
  if (rhs.size() != size()) throw std::invalid_argument("SystemMatrix::solve: size mismatch");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  Eigen::VectorXd x = factor_->llt.solve(b);
  const double res = (matrix_ * x - b).lpNorm<Eigen::Infinity>();
  const double scale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
  if (!(res <= linear_tol * scale)) {
    throw std::runtime_error("SystemMatrix::solve: residual " + std::to_string(res) + " above tolerance");
  }
  return DgScalar(std::vector<double>(x.data(), x.data() + x.size()));
}

DgScalar solve_linear(const SystemMatrix& m, std::span<const double> rhs, double linear_tol) {
  return m.solve(rhs, linear_tol);
}

SystemMatrix assemble_matrix(const ProblemData& data) {
  data.validate();
  const Mesh& mesh = data.mesh;
  const auto m = static_cast<Eigen::Index>(mesh.num_elements());

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.num_elements() + 4 * mesh.edges().size());
  for (const auto& el : mesh.elements()) {
    const auto k = static_cast<Eigen::Index>(el.index);
    trips.emplace_back(k, k, el.area);
  }
  for (const Edge& e : mesh.edges()) {
    const double s = e.length * edge_weight(e, data.exponent);
    const auto p = static_cast<Eigen::Index>(e.plus);
    trips.emplace_back(p, p, s);
    if (e.interior()) {
      const auto q = static_cast<Eigen::Index>(*e.minus);
      trips.emplace_back(q, q, s);
      trips.emplace_back(p, q, -s);
      trips.emplace_back(q, p, -s);
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trips.begin(), trips.end());

  const Eigen::SparseMatrix<double> b = b_operator_matrix(mesh);
  Eigen::VectorXd w(2 * m);
  for (Eigen::Index k = 0; k < m; ++k) w[2 * k] = w[2 * k + 1] = mesh.element(static_cast<std::size_t>(k)).area;
  const Eigen::SparseMatrix<double> wb = w.asDiagonal() * b;
  Eigen::SparseMatrix<double> btwb = Eigen::SparseMatrix<double>(b.transpose()) * wb;
  // Exact symmetry: the product is symmetric up to summation order only.
  const Eigen::SparseMatrix<double> btwb_t = btwb.transpose();
  btwb = 0.5 * (btwb + btwb_t);

  return SystemMatrix(a + data.r * btwb);
}

std::vector<double> load_vector(const ProblemData& data) {
  const Mesh& mesh = data.mesh;
  std::vector<double> f(mesh.num_elements(), 0.0);
  for (const auto& el : mesh.elements()) {
    f[el.index] += quadrature::integrate(el.bounds, [&](Point x) { return data.xi(x); });
  }
  for (const Edge& e : mesh.boundary_edges()) {
    f[e.plus] += edge_weight(e, data.exponent) * quadrature::integrate(e, [&](Point x) { return data.u_D(x); });
  }
  return f;
}

namespace {

kernels::Grid grid_of(const Mesh& mesh) { return {mesh.nx(), mesh.ny(), mesh.hx(), mesh.hy()}; }

std::vector<double> areas_of(const Mesh& mesh) {
  std::vector<double> a(mesh.num_elements());
  for (const auto& el : mesh.elements()) a[el.index] = el.area;
  return a;
}

}  // namespace

std::vector<double> assemble_rhs(const DgVector& eta, const DgVector& lam, const ProblemData& data) {
  const Mesh& mesh = data.mesh;
  if (eta.size() != mesh.num_elements() || lam.size() != mesh.num_elements()) {
    throw std::invalid_argument("assemble_rhs: field size does not match mesh");
  }
  std::vector<double> f = load_vector(data);
  const DgVector w = data.r * eta - lam;
  std::vector<double> bt(mesh.num_elements());
  kernels::active().lift_adjoint(grid_of(mesh), w.data(), bt);
  for (std::size_t j = 0; j < f.size(); ++j) f[j] += bt[j];
  return f;
}

// ---------------------------------------------------------------------------
// Pointwise updates

double scalar_root(double p_bar, double r, double c) {
  if (!(p_bar > 1.0 && p_bar <= 2.0) || !(r > 0.0) || !(c >= 0.0)) {
    throw std::invalid_argument("scalar_root: requires p_bar in (1, 2], r > 0, c >= 0");
  }
  if (c == 0.0) return 0.0;
  const double a = p_bar - 1.0;
  if (a == 1.0) return c / (1.0 + r);

  // f is increasing and concave on [0, inf) with f(0) = -c < 0 and f(c/r) >= 0.
  auto f = [&](double x) { return std::pow(x, a) + r * x - c; };
  double lo = 0.0, hi = std::max(c, c / r);
  double x = c / (1.0 + r);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int it = 0; it < 200; ++it) {
    const double xa = std::pow(x, a);
    const double fx = xa + r * x - c;
    if (std::abs(fx) <= 4.0 * eps * (xa + r * x + c)) return x;
    (fx < 0.0 ? lo : hi) = x;
    if (hi - lo <= 2.0 * eps * hi) break;
    const double deriv = a * xa / x + r;  // x > 0 here: lo >= 0 and f(0) < 0
    double next = x - fx / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return std::abs(f(lo)) < std::abs(f(hi)) ? lo : hi;
}

DgVector eta_update(const DgVector& bu, const DgVector& lam, std::span<const double> p_bar, double r) {
  const std::size_t m = bu.size();
  if (lam.size() != m || p_bar.size() != m) throw std::invalid_argument("eta_update: size mismatch");
  DgVector eta(m);
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2 v = lam.at(k) + bu.at(k);
    const double c = norm(v);
    if (c == 0.0) continue;
    const double x = scalar_root(p_bar[k], r, c);
    // x = 0 with c > 0 only by underflow; the limit of eta is then 0.
    if (x == 0.0) continue;
    eta.set(k, v / (std::pow(x, p_bar[k] - 2.0) + r));
  }
  return eta;
}

DgVector eta_update(const DgScalar& u, const DgVector& lam, const ProblemData& data) {
  const auto p_bar = barycenter_exponents(data.mesh, data.exponent);
  return eta_update(b_operator(u, data.mesh), lam, p_bar, data.r);
}

DgVector lambda_update(const DgVector& lam, const DgVector& bu, const DgVector& eta, double rho) {
  DgVector out = lam;
  kernels::active().multiplier_update(rho, bu.data(), eta.data(), out.data());
  return out;
}

bool stopping_check(const SolverState& state, const SolverConfig& cfg) {
  if (state.history.empty()) return false;
  const IterationRecord& rec = state.history.back();
  const bool primal = rec.residual_u <= cfg.tol_outer * std::max(1.0, rec.u_norm);
  if (cfg.stop_rule == StopRule::Primal) return primal;
  return primal && rec.residual_constraint <= cfg.tol_constraint * std::max(1.0, rec.eta_norm);
}

// ---------------------------------------------------------------------------
// Outer iterations

namespace {

/// Everything that does not change across iterations.
class Discretization {
 public:
  explicit Discretization(const ProblemData& data)
      : data_(data),
        grid_(grid_of(data.mesh)),
        areas_(areas_of(data.mesh)),
        p_bar_(barycenter_exponents(data.mesh, data.exponent)),
        load_(load_vector(data)),
        matrix_(assemble_matrix(data)),
        k_(kernels::active()) {}

  std::size_t size() const { return areas_.size(); }
  std::span<const double> p_bar() const { return p_bar_; }

  DgScalar solve_u(const DgVector& eta, const DgVector& lam, double linear_tol) const {
    const DgVector w = data_.r * eta - lam;
    std::vector<double> rhs(size());
    k_.lift_adjoint(grid_, w.data(), rhs);
    for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += load_[j];
    return matrix_.solve(rhs, linear_tol);
  }

  DgVector lift(const DgScalar& u) const {
    DgVector bu(size());
    k_.lift(grid_, u.data(), bu.data());
    return bu;
  }

  double dist(const DgScalar& a, const DgScalar& b) const {
    return std::sqrt(k_.weighted_sq_diff(areas_, 1, a.data(), b.data()));
  }
  double dist(const DgVector& a, const DgVector& b) const {
    return std::sqrt(k_.weighted_sq_diff(areas_, 2, a.data(), b.data()));
  }
  double norm_of(const DgScalar& a) const { return std::sqrt(k_.weighted_sq_diff(areas_, 1, a.data(), {})); }
  double norm_of(const DgVector& a) const { return std::sqrt(k_.weighted_sq_diff(areas_, 2, a.data(), {})); }

  void update_multiplier(DgVector& lam, const DgVector& bu, const DgVector& eta, double rho) const {
    k_.multiplier_update(rho, bu.data(), eta.data(), lam.data());
  }

  double energy(const DgScalar& u, const DgVector& bu) const {
    return eval_F(bu, data_, FQuadrature::Barycenter) + eval_G(u, data_);
  }

 private:
  const ProblemData& data_;
  kernels::Grid grid_;
  std::vector<double> areas_;
  std::vector<double> p_bar_;
  std::vector<double> load_;
  SystemMatrix matrix_;
  const kernels::KernelTable& k_;
};

void warn(const SolverConfig& cfg, SolverState& state, const std::string& msg) {
  state.warnings.push_back(msg);
  if (cfg.on_warning) {
    cfg.on_warning(msg);
  } else {
    std::cerr << "warning: " << msg << '\n';
  }
}

SolverState start_state(const ProblemData& data, const SolverConfig& cfg, Algorithm alg,
                        const std::optional<SolverState>& init) {
  data.validate();
  if (cfg.max_outer < 1) throw std::invalid_argument("SolverConfig: max_outer must be at least 1");
  const std::size_t m = data.mesh.num_elements();
  SolverState state = SolverState::zero(m);
  if (init) {
    if (init->u.size() != m || init->eta.size() != m || init->lam.size() != m) {
      throw std::invalid_argument("initial state does not match the mesh");
    }
    state.u = init->u;
    state.eta = init->eta;
    state.lam = init->lam;
  }
  const double rho = cfg.rho_for(data.r);
  const StepSizeCheck check = check_step_size(alg, data.r, rho);
  if (!check.ok) {
    warn(cfg, state, check.message);
    if (!cfg.force) throw std::invalid_argument(check.message + " (set force to proceed)");
  }
  return state;
}

// One outer step given the new (u, Bu, eta); updates the multiplier and the history.
bool finish_step(const Discretization& disc, const SolverConfig& cfg, double rho, SolverState& state,
                 DgScalar u, const DgVector& bu, DgVector eta, int inner) {
  IterationRecord rec;
  rec.iter = state.iteration + 1;
  rec.residual_u = disc.dist(u, state.u);
  rec.u_norm = disc.norm_of(u);
  rec.residual_constraint = disc.dist(bu, eta);
  rec.eta_norm = disc.norm_of(eta);
  DgVector lam_next = state.lam;
  disc.update_multiplier(lam_next, bu, eta, rho);
  rec.residual_lambda = disc.dist(lam_next, state.lam);
  for (double v : lam_next.data()) rec.lambda_max = std::max(rec.lambda_max, std::abs(v));
  rec.jh = disc.energy(u, bu);
  rec.inner_iterations = inner;

  state.u = std::move(u);
  state.eta = std::move(eta);
  state.lam = std::move(lam_next);
  state.iteration = rec.iter;
  state.energy = rec.jh;
  state.history.push_back(rec);
  return stopping_check(state, cfg);
}

}  // namespace

SolverState run_algorithm2(const ProblemData& data, const SolverConfig& cfg, const std::optional<SolverState>& init) {
  SolverState state = start_state(data, cfg, Algorithm::Alg2, init);
  const Discretization disc(data);
  const double rho = cfg.rho_for(data.r);
  for (int n = 1; n <= cfg.max_outer; ++n) {
    // u^n from (eta^{n-1}, lam^n), then eta^n from (u^n, lam^n).
    DgScalar u = disc.solve_u(state.eta, state.lam, cfg.linear_tol);
    const DgVector bu = disc.lift(u);
    DgVector eta = eta_update(bu, state.lam, disc.p_bar(), data.r);
    if (finish_step(disc, cfg, rho, state, std::move(u), bu, std::move(eta), 0)) {
      state.converged = true;
      break;
    }
  }
  return state;
}

SolverState run_algorithm1(const ProblemData& data, const SolverConfig& cfg, const std::optional<SolverState>& init) {
  SolverState state = start_state(data, cfg, Algorithm::Alg1, init);
  const Discretization disc(data);
  const double rho = cfg.rho_for(data.r);
  for (int n = 1; n <= cfg.max_outer; ++n) {
    // Minimize L_r(., ., lam^n) jointly by alternating the u- and eta-solves,
    // warm-started from the previous eta.
    DgVector eta = state.eta;
    DgScalar u;
    DgVector bu;
    int inner = 0;
    bool inner_ok = false;
    while (inner < cfg.max_inner) {
      ++inner;
      u = disc.solve_u(eta, state.lam, cfg.linear_tol);
      bu = disc.lift(u);
      DgVector next = eta_update(bu, state.lam, disc.p_bar(), data.r);
      const double inc = disc.dist(next, eta);
      const double scale = std::max(1.0, disc.norm_of(next));
      eta = std::move(next);
      if (inc <= cfg.tol_inner * scale) {
        inner_ok = true;
        break;
      }
    }
    if (!inner_ok) state.inner_converged = false;
    if (finish_step(disc, cfg, rho, state, std::move(u), bu, std::move(eta), inner)) {
      state.converged = true;
      break;
    }
  }
  if (!state.inner_converged) warn(cfg, state, "Alg1: inner alternation hit max_inner in at least one outer step");
  return state;
}

SolverState run_solver(const ProblemData& data, const SolverConfig& cfg, const std::optional<SolverState>& init) {
  return cfg.algorithm == Algorithm::Alg1 ? run_algorithm1(data, cfg, init) : run_algorithm2(data, cfg, init);
}

void write_trace_csv(const SolverState& state, std::ostream& out) {
  const auto old_precision = out.precision(12);
  out << "iter,residual_u,residual_constraint,residual_lambda,Jh\n";
  for (const auto& rec : state.history) {
    out << rec.iter << ',' << rec.residual_u << ',' << rec.residual_constraint << ',' << rec.residual_lambda << ','
        << rec.jh << '\n';
  }
  out.precision(old_precision);
}

}  // namespace pxdg
