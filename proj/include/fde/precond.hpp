#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "fde/krylov.hpp"
#include "fde/multigrid.hpp"
#include "fde/problem.hpp"
#include "fde/sparse.hpp"
#include "fde/structured.hpp"

namespace fde {

enum class PrecondKind { none, p2, p2_exact, mgm, mgm_galerkin };

std::string precond_name(PrecondKind k);
PrecondKind precond_from_name(const std::string& name); // throws on unknown

// Order-2 banded companion of the step operator: same 1/r and s/r, same
// diffusion diagonals, both Toeplitz blocks replaced by the three-point
// second-difference stencil.  Exactly five nonzero diagonals.
struct BandedP2 {
  std::size_t n1 = 0, n2 = 0;
  sparse::Csr matrix;
};

BandedP2 build_p2(const StructuredFdeOperator& op);

// z = cycles Galerkin V-cycle steps on P2 z = v, zero initial guess.
class P2VcyclePrecond final : public Precond {
public:
  P2VcyclePrecond(const StructuredFdeOperator& op, double omega,
                  std::size_t cycles);
  void apply(const double* r, double* z) const override;

private:
  std::size_t n_ = 0;
  std::size_t cycles_ = 1;
  mg::MgHierarchy hierarchy_;
};

// Direct sparse solve with P2.
class P2ExactPrecond final : public Precond {
public:
  explicit P2ExactPrecond(const StructuredFdeOperator& op);
  void apply(const double* r, double* z) const override;

private:
  std::size_t n_ = 0;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

// One geometric (rediscretized) V-cycle on the step operator itself.
class MgmPrecond final : public Precond {
public:
  MgmPrecond(const FdeProblem& p, const Grid& g, std::size_t m, double omega,
             std::size_t cycles,
             mg::CoarseSolve coarse = mg::CoarseSolve::sweeps,
             std::size_t coarse_sweeps = 3);
  void apply(const double* r, double* z) const override;

private:
  std::size_t n_ = 0;
  std::size_t cycles_ = 1;
  mg::MgHierarchy hierarchy_;
};

// Galerkin variant: V-cycle on the explicit CSR form of the step operator.
// Dense rows make this memory-hungry; guarded to n1, n2 <= 128.  An explicit
// level plan overrides full coarsening (the CSR form cannot plan for itself).
class MgmGalerkinPrecond final : public Precond {
public:
  MgmGalerkinPrecond(const StructuredFdeOperator& op, double omega,
                     std::size_t cycles,
                     mg::CoarseSolve coarse = mg::CoarseSolve::sweeps,
                     std::size_t coarse_sweeps = 3,
                     std::vector<std::pair<std::size_t, std::size_t>> plan = {});
  void apply(const double* r, double* z) const override;

private:
  std::size_t n_ = 0;
  std::size_t cycles_ = 1;
  mg::MgHierarchy hierarchy_;
};

// Factory used by the time-marching driver; returns null for PrecondKind::none.
// coarse/coarse_sweeps reach only the two step-operator V-cycles; the banded
// preconditioner always runs its Jacobi-only cycle.
std::unique_ptr<Precond> make_preconditioner(
    PrecondKind kind, const FdeProblem& p, const Grid& g, std::size_t m,
    const StructuredFdeOperator& op, double omega, std::size_t cycles,
    mg::CoarseSolve coarse = mg::CoarseSolve::sweeps,
    std::size_t coarse_sweeps = 3);

} // namespace fde
