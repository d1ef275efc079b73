#pragma once

#include <cstddef>
#include <vector>

#include "fde/linop.hpp"

namespace fde {

// Left preconditioner handle: z = M^-1 r.
struct Precond {
  virtual ~Precond() = default;
  virtual void apply(const double* r, double* z) const = 0;
};

struct SolverConfig {
  double tol = 1e-7;
  std::size_t restart = 20;
  std::size_t max_outer = 100;
  const Precond* preconditioner = nullptr; // borrowed, may be null
};

struct KrylovResult {
  std::vector<double> solution;
  std::size_t total_iterations = 0; // cumulative inner count
  std::vector<double> residual_history; // preconditioned relative residuals;
                                        // entry 0 is the initial residual, the
                                        // last entry is recomputed from the
                                        // returned solution
  bool converged = false;
};

// Restarted GMRES on the left-preconditioned system.  Stops when
// ||M^-1 (b - A x)|| / ||M^-1 b|| <= tol; the per-iteration Givens estimate
// triggers an explicit residual check before convergence is declared.
// Modified Gram-Schmidt with one reorthogonalization pass when the projected
// vector loses more than eight digits.
KrylovResult gmres(const LinOp& a, const SolverConfig& cfg,
                   const std::vector<double>& b,
                   const std::vector<double>& x0 = {});

} // namespace fde
