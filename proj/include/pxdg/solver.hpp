#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "pxdg/dg_core.hpp"
#include "pxdg/energy.hpp"

namespace pxdg {

enum class Algorithm { Alg1, Alg2 };

/// Which quantities must be small before the outer iteration stops.
enum class StopRule {
  Primal,               // ||u^n - u^{n-1}|| only
  PrimalAndConstraint,  // additionally ||Bu^n - eta^n||
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::Alg2;
  std::optional<double> rho;  // multiplier step; defaults to r
  double tol_outer = 1e-8;
  StopRule stop_rule = StopRule::Primal;
  double tol_constraint = 1e-8;
  double tol_inner = 1e-10;  // Alg1 only
  int max_outer = 2000;
  int max_inner = 200;
  double linear_tol = 1e-10;
  bool force = false;  // proceed even when rho violates the step-size condition
  std::function<void(std::string_view)> on_warning;  // stderr when empty

  double rho_for(double r) const { return rho.value_or(r); }
};

struct StepSizeCheck {
  bool ok = true;
  double upper = 0.0;  // exclusive upper bound on rho
  std::string message;
};

/// Alg1 needs 0 < rho < 2r, Alg2 needs 0 < rho < r(1 + sqrt 5)/2.
StepSizeCheck check_step_size(Algorithm alg, double r, double rho);

struct IterationRecord {
  int iter = 0;
  double residual_u = 0.0;           // ||u^n - u^{n-1}||_{L2}
  double u_norm = 0.0;               // ||u^n||_{L2}
  double residual_constraint = 0.0;  // ||Bu^n - eta^n||
  double eta_norm = 0.0;             // ||eta^n||
  double residual_lambda = 0.0;      // ||lam^{n+1} - lam^n||
  double lambda_max = 0.0;           // max |lam^{n+1}| entry
  double jh = 0.0;                   // J_h(u^n), barycenter rule
  int inner_iterations = 0;          // Alg1 only
};

struct SolverState {
  DgScalar u;   // u^n
  DgVector eta; // eta^n
  DgVector lam; // lam^{n+1}, the multiplier the next step would use
  int iteration = 0;
  std::vector<IterationRecord> history;
  double energy = 0.0;
  bool converged = false;
  bool inner_converged = true;
  std::vector<std::string> warnings;

  static SolverState zero(std::size_t num_elements);
};

/// M_ij = int phi_i phi_j + r int B phi_i . B phi_j
///        + int_{interior} [phi_i].[phi_j] w + int_{boundary} phi_i phi_j w,
/// factorized once on construction.
class SystemMatrix {
 public:
  /// Throws std::runtime_error if the Cholesky factorization fails.
  explicit SystemMatrix(Eigen::SparseMatrix<double> m);

  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
  double entry(std::size_t i, std::size_t j) const;
  double symmetry_defect() const;

  /// Throws std::runtime_error if ||MU - rhs||_inf > linear_tol * max(1, ||rhs||_inf).
  DgScalar solve(std::span<const double> rhs, double linear_tol = 1e-10) const;

 private:
  struct Factor;
  Eigen::SparseMatrix<double> matrix_;
  std::shared_ptr<const Factor> factor_;
};

SystemMatrix assemble_matrix(const ProblemData& data);

/// Iteration-independent part of the right-hand side: int phi_j xi + int_{boundary} phi_j u_D w.
std::vector<double> load_vector(const ProblemData& data);

/// F^n_j = load_j + int (r eta - lam) . B phi_j.
std::vector<double> assemble_rhs(const DgVector& eta, const DgVector& lam, const ProblemData& data);

DgScalar solve_linear(const SystemMatrix& m, std::span<const double> rhs, double linear_tol = 1e-10);

/// Unique x >= 0 with x^{p_bar - 1} + r x = c, for p_bar in (1, 2], r > 0, c >= 0.
double scalar_root(double p_bar, double r, double c);

/// eta_k = (lam_k + bu_k) / (x^{pbar_k - 2} + r) with x = scalar_root(pbar_k, r, |lam_k + bu_k|);
/// eta_k = 0 where lam_k + bu_k = 0.
DgVector eta_update(const DgVector& bu, const DgVector& lam, std::span<const double> p_bar, double r);
DgVector eta_update(const DgScalar& u, const DgVector& lam, const ProblemData& data);

/// lam + rho (bu - eta).
DgVector lambda_update(const DgVector& lam, const DgVector& bu, const DgVector& eta, double rho);

/// Stopping test on the last history record; inclusive at the thresholds.
bool stopping_check(const SolverState& state, const SolverConfig& cfg);

SolverState run_algorithm2(const ProblemData& data, const SolverConfig& cfg,
                           const std::optional<SolverState>& init = std::nullopt);
SolverState run_algorithm1(const ProblemData& data, const SolverConfig& cfg,
                           const std::optional<SolverState>& init = std::nullopt);

/// Dispatches on cfg.algorithm.
SolverState run_solver(const ProblemData& data, const SolverConfig& cfg,
                       const std::optional<SolverState>& init = std::nullopt);

/// iter,residual_u,residual_constraint,residual_lambda,Jh
void write_trace_csv(const SolverState& state, std::ostream& out);

}  // namespace pxdg
