#include "fde/precond.hpp"

#include <cstring>
#include <stdexcept>

namespace fde {
namespace {

Eigen::SparseMatrix<double> to_eigen(const sparse::Csr& a) {
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(a.rows),
                                static_cast<Eigen::Index>(a.cols));
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::uint32_t k = a.ptr[r]; k < a.ptr[r + 1]; ++k)
      trips.emplace_back(static_cast<int>(r), static_cast<int>(a.idx[k]),
                         a.val[k]);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

void cycled_apply(const mg::MgHierarchy& h, std::size_t cycles, std::size_t n,
                  const double* r, double* z) {
  std::fill_n(z, n, 0.0);
  for (std::size_t c = 0; c < cycles; ++c) h.vcycle(r, z);
}

} // namespace

std::string precond_name(PrecondKind k) {
  switch (k) {
    case PrecondKind::none: return "none";
    case PrecondKind::p2: return "p2";
    case PrecondKind::p2_exact: return "p2-exact";
    case PrecondKind::mgm: return "mgm";
    case PrecondKind::mgm_galerkin: return "mgm-galerkin";
  }
  return "unknown";
}

PrecondKind precond_from_name(const std::string& name) {
  if (name == "none") return PrecondKind::none;
  if (name == "p2") return PrecondKind::p2;
  if (name == "p2-exact") return PrecondKind::p2_exact;
  if (name == "mgm") return PrecondKind::mgm;
  if (name == "mgm-galerkin") return PrecondKind::mgm_galerkin;
  throw std::invalid_argument("unknown preconditioner: " + name);
}

BandedP2 build_p2(const StructuredFdeOperator& op) {
  const std::size_t n1 = op.n1(), n2 = op.n2();
  const std::size_t n = n1 * n2;
  std::vector<sparse::Triplet> trips;
  trips.reserve(5 * n);
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) {
      const std::uint32_t p = static_cast<std::uint32_t>(i + j * n1);
      const double cx = op.dp()[p] + op.dm()[p];
      const double cy = op.s_over_r() * (op.ep()[p] + op.em()[p]);
      trips.push_back({p, p, op.inv_r() + 2.0 * cx + 2.0 * cy});
      if (i > 0) trips.push_back({p, p - 1, -cx});
      if (i + 1 < n1) trips.push_back({p, p + 1, -cx});
      if (j > 0) trips.push_back({p, static_cast<std::uint32_t>(p - n1), -cy});
      if (j + 1 < n2)
        trips.push_back({p, static_cast<std::uint32_t>(p + n1), -cy});
    }
  }
  BandedP2 out;
  out.n1 = n1;
  out.n2 = n2;
  out.matrix = sparse::Csr::from_triplets(n, n, std::move(trips));
  return out;
}

P2VcyclePrecond::P2VcyclePrecond(const StructuredFdeOperator& op, double omega,
                                 std::size_t cycles)
    : n_(op.size()), cycles_(cycles),
      // Jacobi on every level and nothing else: the cycle never solves the
      // coarsest system, it only smooths on the way down and up
      hierarchy_(mg::build_galerkin_hierarchy(build_p2(op).matrix, op.n1(),
                                              op.n2(), omega,
                                              mg::CoarseSolve::none)) {
  if (cycles_ == 0) throw std::invalid_argument("cycles must be >= 1");
}

void P2VcyclePrecond::apply(const double* r, double* z) const {
  cycled_apply(hierarchy_, cycles_, n_, r, z);
}

P2ExactPrecond::P2ExactPrecond(const StructuredFdeOperator& op)
    : n_(op.size()), matrix_(to_eigen(build_p2(op).matrix)) {
  lu_.compute(matrix_);
  if (lu_.info() != Eigen::Success)
    throw std::runtime_error("banded order-2 factorization failed");
}

void P2ExactPrecond::apply(const double* r, double* z) const {
  Eigen::Map<const Eigen::VectorXd> rv(r, static_cast<Eigen::Index>(n_));
  Eigen::Map<Eigen::VectorXd> zv(z, static_cast<Eigen::Index>(n_));
  zv = lu_.solve(rv);
}

MgmPrecond::MgmPrecond(const FdeProblem& p, const Grid& g, std::size_t m,
                       double omega, std::size_t cycles,
                       mg::CoarseSolve coarse, std::size_t coarse_sweeps)
    : n_(g.size()), cycles_(cycles),
      hierarchy_(mg::build_geometric_hierarchy(p, g, m, omega, coarse,
                                               coarse_sweeps)) {
  if (cycles_ == 0) throw std::invalid_argument("cycles must be >= 1");
}

void MgmPrecond::apply(const double* r, double* z) const {
  cycled_apply(hierarchy_, cycles_, n_, r, z);
}

MgmGalerkinPrecond::MgmGalerkinPrecond(
    const StructuredFdeOperator& op, double omega, std::size_t cycles,
    mg::CoarseSolve coarse, std::size_t coarse_sweeps,
    std::vector<std::pair<std::size_t, std::size_t>> plan)
    : n_(op.size()), cycles_(cycles),
      hierarchy_((op.n1() > 128 || op.n2() > 128)
                     ? throw std::invalid_argument(
                           "galerkin variant limited to 128 x 128 grids")
                     : mg::build_galerkin_hierarchy(op.to_csr(), op.n1(),
                                                    op.n2(), omega, coarse,
                                                    coarse_sweeps,
                                                    std::move(plan))) {
  if (cycles_ == 0) throw std::invalid_argument("cycles must be >= 1");
}

void MgmGalerkinPrecond::apply(const double* r, double* z) const {
  cycled_apply(hierarchy_, cycles_, n_, r, z);
}

std::unique_ptr<Precond> make_preconditioner(
    PrecondKind kind, const FdeProblem& p, const Grid& g, std::size_t m,
    const StructuredFdeOperator& op, double omega, std::size_t cycles,
    mg::CoarseSolve coarse, std::size_t coarse_sweeps) {
  switch (kind) {
    case PrecondKind::none:
      return nullptr;
    case PrecondKind::p2:
      return std::make_unique<P2VcyclePrecond>(op, omega, cycles);
    case PrecondKind::p2_exact:
      return std::make_unique<P2ExactPrecond>(op);
    case PrecondKind::mgm:
      return std::make_unique<MgmPrecond>(p, g, m, omega, cycles, coarse,
                                          coarse_sweeps);
    case PrecondKind::mgm_galerkin:
      return std::make_unique<MgmGalerkinPrecond>(
          op, omega, cycles, coarse, coarse_sweeps,
          mg::plan_level_dims(g.n1, g.n2,
                              mg::anisotropy_ratio(op, p.alpha, p.beta),
                              p.alpha, p.beta));
  }
  throw std::invalid_argument("unknown preconditioner kind");
}

} // namespace fde
