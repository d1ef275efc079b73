#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "fde/precond.hpp"
#include "fde/problem.hpp"

namespace fde {

struct DriverConfig {
  PrecondKind precond = PrecondKind::none;
  double tol = 1e-7;
  std::size_t restart = 20;
  std::size_t max_outer = 100;
  double omega = 0.9;      // Jacobi damping inside the V-cycles
  std::size_t cycles = 1;  // V-cycle steps per preconditioner application
  mg::CoarseSolve coarse = mg::CoarseSolve::sweeps; // step-operator V-cycles
  std::size_t coarse_sweeps = 3;
};

struct SolveReport {
  std::size_t n1 = 0, n2 = 0, steps = 0;
  std::vector<std::size_t> step_iterations;
  std::vector<double> step_residuals; // final preconditioned relative residuals
  double avg_iterations = 0.0;
  bool all_converged = false;
  bool has_error = false;
  double error_inf = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;
  std::vector<double> solution; // grid values at t = T
};

// Marches the implicit scheme from the initial data to t = T, solving each
// step with GMRES and the configured preconditioner (zero initial guess per
// step).  Operators and preconditioners are cached when the coefficients do
// not depend on time and rebuilt every step otherwise.
SolveReport time_march(const FdeProblem& p, const Grid& g,
                       const DriverConfig& cfg);

} // namespace fde
