#include "fde/driver.hpp"

#include <chrono>
#include <numeric>

#include "fde/krylov.hpp"

namespace fde {

SolveReport time_march(const FdeProblem& p, const Grid& g,
                       const DriverConfig& cfg) {
  SolveReport rep;
  rep.n1 = g.n1;
  rep.n2 = g.n2;
  rep.steps = g.steps;
  rep.step_iterations.reserve(g.steps);
  rep.step_residuals.reserve(g.steps);
  rep.all_converged = true;

  const auto t0 = std::chrono::steady_clock::now();

  std::vector<double> u = sample_initial(p, g);
  StructuredFdeOperator op = assemble_step_operator(p, g, p.time_dependent_coeffs ? 0 : 1);
  std::unique_ptr<Precond> precond;
  if (!p.time_dependent_coeffs)
    precond = make_preconditioner(cfg.precond, p, g, 1, op, cfg.omega,
                                  cfg.cycles, cfg.coarse, cfg.coarse_sweeps);

  SolverConfig scfg;
  scfg.tol = cfg.tol;
  scfg.restart = cfg.restart;
  scfg.max_outer = cfg.max_outer;

  for (std::size_t m = 1; m <= g.steps; ++m) {
    StructuredFdeOperator* step_op = &op;
    StructuredFdeOperator next;
    if (p.time_dependent_coeffs) {
      // op currently holds the coefficients at t^(m-1)
      next = assemble_step_operator(p, g, m);
      step_op = &next;
      precond = make_preconditioner(cfg.precond, p, g, m, next, cfg.omega,
                                    cfg.cycles, cfg.coarse, cfg.coarse_sweeps);
    }
    const std::vector<double> b = assemble_rhs(p, g, m, u, op);
    scfg.preconditioner = precond.get();
    KrylovResult sol = gmres(*step_op, scfg, b);
    rep.step_iterations.push_back(sol.total_iterations);
    rep.step_residuals.push_back(sol.residual_history.back());
    rep.all_converged = rep.all_converged && sol.converged;
    u = std::move(sol.solution);
    if (p.time_dependent_coeffs) op = std::move(next);
  }

  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!rep.step_iterations.empty())
    rep.avg_iterations =
        static_cast<double>(std::accumulate(rep.step_iterations.begin(),
                                            rep.step_iterations.end(),
                                            std::size_t{0})) /
        static_cast<double>(rep.step_iterations.size());
  if (p.exact) {
    rep.has_error = true;
    rep.error_inf = error_inf(u, p, g, g.t_final);
  }
  rep.solution = std::move(u);
  return rep;
}

} // namespace fde
