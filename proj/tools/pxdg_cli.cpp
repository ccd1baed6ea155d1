// pxdg: solve the P0 DG p(x)-Laplacian problem, or run the convergence study.
//
//   pxdg solve --b 0.5 --nx 22 --r 1 --out solution.csv [--trace trace.csv]
//   pxdg study --b 0,0.25,0.5 --nx 10,14,22,31,54 --r 1 --out study.csv
//
// Exit codes: 0 success, 1 input error, 2 a run did not converge.

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pxdg/solver.hpp"
#include "pxdg/study.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;

struct SolverFlags {
  double r = 1.0;
  std::optional<double> rho;
  int alg = 2;
  double tol = 1e-8;
  int max_iter = 2000;
  std::string stop = "primal";
  bool force = false;
};

void add_solver_flags(CLI::App& sub, SolverFlags& f) {
  sub.add_option("--r", f.r, "Augmentation parameter r > 0")->required()->check(CLI::PositiveNumber);
  sub.add_option("--rho", f.rho, "Multiplier step (default: r)");
  sub.add_option("--alg", f.alg, "Algorithm 1 (coupled) or 2 (uncoupled)")->check(CLI::IsMember({1, 2}));
  sub.add_option("--tol", f.tol, "Outer stopping tolerance")->check(CLI::PositiveNumber);
  sub.add_option("--max-iter", f.max_iter, "Maximum outer iterations")->check(CLI::PositiveNumber);
  sub.add_option("--stop", f.stop, "Stopping rule: primal or full (also require ||Bu - eta|| <= tol)")
      ->check(CLI::IsMember({"primal", "full"}));
  sub.add_flag("--force", f.force, "Run even if rho violates the step-size condition");
}

// Plain key=value lines apply to whichever subcommand was selected.
class SubcommandConfig : public CLI::ConfigBase {
 public:
  explicit SubcommandConfig(std::function<std::string()> active) : active_(std::move(active)) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigBase::from_config(input);
    const std::string sub = active_();
    for (auto& item : items) {
      if (item.parents.empty() && !sub.empty()) item.parents = {sub};
    }
    return items;
  }

 private:
  std::function<std::string()> active_;
};

pxdg::SolverConfig to_config(const SolverFlags& f) {
  pxdg::SolverConfig cfg;
  cfg.algorithm = f.alg == 1 ? pxdg::Algorithm::Alg1 : pxdg::Algorithm::Alg2;
  cfg.rho = f.rho;
  cfg.tol_outer = f.tol;
  cfg.tol_constraint = f.tol;
  cfg.stop_rule = f.stop == "full" ? pxdg::StopRule::PrimalAndConstraint : pxdg::StopRule::Primal;
  cfg.max_outer = f.max_iter;
  cfg.force = f.force;
  cfg.on_warning = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

int run_solve(double b, int nx, std::optional<int> ny, const SolverFlags& flags, const std::string& out_path,
              const std::string& trace_path, const std::string& mesh_path) {
  const pxdg::ManufacturedProblem prob = pxdg::manufactured_problem(b);
  const pxdg::ProblemData data = pxdg::make_problem_data(prob, nx, ny.value_or(nx), flags.r);
  const pxdg::SolverState state = pxdg::run_solver(data, to_config(flags));

  auto out = open_out(out_path);
  out.precision(12);
  out << "element,x,y,u_h,u_exact,eta_x,eta_y,lambda_x,lambda_y\n";
  for (const auto& el : data.mesh.elements()) {
    const auto k = el.index;
    out << k << ',' << el.barycenter.x << ',' << el.barycenter.y << ',' << state.u[k] << ','
        << prob.exact_u(el.barycenter) << ',' << state.eta.at(k).x << ',' << state.eta.at(k).y << ','
        << state.lam.at(k).x << ',' << state.lam.at(k).y << '\n';
  }
  if (!trace_path.empty()) {
    auto trace = open_out(trace_path);
    pxdg::write_trace_csv(state, trace);
  }
  if (!mesh_path.empty()) {
    auto mesh_out = open_out(mesh_path);
    pxdg::write_mesh_csv(data.mesh, mesh_out);
  }

  const bool ok = state.converged && state.inner_converged;
  std::cout.precision(10);
  std::cout << "b=" << b << " nx=" << data.mesh.nx() << " ny=" << data.mesh.ny() << " m=" << data.mesh.num_elements()
            << " l2_error=" << pxdg::l2_error(state.u, prob, data.mesh) << " iterations=" << state.iteration
            << " jh=" << state.energy << " seminorm=" << pxdg::broken_seminorm(state.u, prob.exponent, data.mesh)
            << " converged=" << (ok ? 1 : 0) << '\n';
  return ok ? 0 : kExitNotConverged;
}

int run_study_cmd(const std::vector<double>& b_list, const std::vector<int>& nx_list, const SolverFlags& flags,
                  const std::string& out_path) {
  const auto rows = pxdg::run_study(b_list, nx_list, to_config(flags), flags.r);
  auto out = open_out(out_path);
  pxdg::write_study_csv(rows, out);
  pxdg::write_study_csv(rows, std::cout);
  for (const auto& row : rows) {
    if (!row.converged) return kExitNotConverged;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discontinuous Galerkin solver for the variable-exponent p(x)-Laplacian"};
  app.require_subcommand(1);
  app.fallthrough();

  SolverFlags solve_flags, study_flags;

  double b = 0.0;
  int nx = 10;
  std::optional<int> ny;
  std::string out_path, trace_path, mesh_path;
  auto* solve = app.add_subcommand("solve", "Solve one manufactured problem");
  solve->add_option("--b", b, "Exponent family parameter b >= 0")->required()->check(CLI::NonNegativeNumber);
  solve->add_option("--nx", nx, "Elements along x")->required()->check(CLI::PositiveNumber);
  solve->add_option("--ny", ny, "Elements along y (default: nx)")->check(CLI::PositiveNumber);
  solve->add_option("--trace", trace_path, "Per-iteration residual CSV");
  solve->add_option("--mesh-dump", mesh_path, "Mesh element/edge CSV");
  solve->add_option("--out", out_path, "Per-element solution CSV")->required();
  add_solver_flags(*solve, solve_flags);

  std::vector<double> b_list;
  std::vector<int> nx_list;
  std::string study_out;
  auto* study = app.add_subcommand("study", "Run the manufactured-solution convergence study");
  study->add_option("--b", b_list, "Comma-separated b values")->required()->delimiter(',');
  study->add_option("--nx", nx_list, "Comma-separated nx values (square meshes)")->required()->delimiter(',');
  study->add_option("--out", study_out, "Study CSV")->required();
  add_solver_flags(*study, study_flags);

  app.set_config("--config", "", "key=value file of solver flags; command-line flags take precedence");
  app.config_formatter(std::make_shared<SubcommandConfig>([&] {
    return *solve ? std::string("solve") : *study ? std::string("study") : std::string();
  }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*solve) return run_solve(b, nx, ny, solve_flags, out_path, trace_path, mesh_path);
    for (double v : b_list) {
      if (!(v >= 0.0)) throw std::invalid_argument("--b values must be nonnegative");
    }
    for (int v : nx_list) {
      if (v < 1) throw std::invalid_argument("--nx values must be positive");
    }
    return run_study_cmd(b_list, nx_list, study_flags, study_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
