#include "fde/multigrid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fde/kernels.hpp"
#include "fde/problem.hpp"
#include "fde/structured.hpp"
#include "fde/symbols.hpp"
#include "fde/weights.hpp"

namespace fde::mg {
namespace {

// 1D prolongation along x applied to nrows stacked rows.
void prolong_rows(std::size_t k, std::size_t n, int par, std::size_t nrows,
                  const double* c, double* f) {
  std::fill_n(f, n * nrows, 0.0);
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* cr = c + r * k;
    double* fr = f + r * n;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t fc = 2 * j + 1 - static_cast<std::size_t>(par);
      fr[fc] += cr[j];
      if (fc > 0) fr[fc - 1] += 0.5 * cr[j];
      if (fc + 1 < n) fr[fc + 1] += 0.5 * cr[j];
    }
  }
}

// 1D prolongation along y: whole rows of length `width` at once.
void prolong_cols(std::size_t k, std::size_t n, int par, std::size_t width,
                  const double* c, double* f) {
  std::fill_n(f, n * width, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t fc = 2 * j + 1 - static_cast<std::size_t>(par);
    const double* cr = c + j * width;
    kernels::axpy(width, 1.0, cr, f + fc * width);
    if (fc > 0) kernels::axpy(width, 0.5, cr, f + (fc - 1) * width);
    if (fc + 1 < n) kernels::axpy(width, 0.5, cr, f + (fc + 1) * width);
  }
}

void restrict_rows(std::size_t n, std::size_t k, int par, std::size_t nrows,
                   double scale, const double* f, double* c) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const double* fr = f + r * n;
    double* cr = c + r * k;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t fc = 2 * j + 1 - static_cast<std::size_t>(par);
      double v = fr[fc];
      if (fc > 0) v += 0.5 * fr[fc - 1];
      if (fc + 1 < n) v += 0.5 * fr[fc + 1];
      cr[j] = scale * v;
    }
  }
}

void restrict_cols(std::size_t n, std::size_t k, int par, std::size_t width,
                   double scale, const double* f, double* c) {
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t fc = 2 * j + 1 - static_cast<std::size_t>(par);
    double* cr = c + j * width;
    for (std::size_t i = 0; i < width; ++i) cr[i] = f[fc * width + i];
    if (fc > 0) kernels::axpy(width, 0.5, f + (fc - 1) * width, cr);
    if (fc + 1 < n) kernels::axpy(width, 0.5, f + (fc + 1) * width, cr);
    kernels::scal(width, scale, cr);
  }
}

Eigen::MatrixXd densify(const LinOp& a) {
  const std::size_t n = a.size();
  if (n > 4096) throw std::invalid_argument("operator too large to densify");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<double> e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    a.apply(e.data(), col.data());
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  return m;
}

std::vector<double> inverted_diagonal(const LinOp& a) {
  const std::vector<double>& d = a.diagonal();
  std::vector<double> dinv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw std::invalid_argument("operator diagonal must be strictly positive");
    dinv[i] = 1.0 / d[i];
  }
  return dinv;
}

// Level dimension chain down to the 8 x 8 stop.
std::vector<std::pair<std::size_t, std::size_t>> level_dims(std::size_t n1,
                                                            std::size_t n2) {
  std::vector<std::pair<std::size_t, std::size_t>> dims{{n1, n2}};
  while (dims.back().first > 8 || dims.back().second > 8) {
    const std::size_t k1 = coarse_size(dims.back().first);
    const std::size_t k2 = coarse_size(dims.back().second);
    if (k1 == 0 || k2 == 0) break;
    dims.emplace_back(k1, k2);
  }
  return dims;
}

} // namespace

std::size_t coarse_size(std::size_t n) { return (n - n % 2) / 2; }

double anisotropy_ratio(const StructuredFdeOperator& op, double alpha,
                        double beta) {
  const auto mean = [](const std::vector<double>& a,
                       const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] + b[i];
    return s / static_cast<double>(a.size());
  };
  const double cx = mean(op.dp(), op.dm()) * eval_q_gamma(alpha, M_PI);
  const double cy = op.s_over_r() * mean(op.ep(), op.em()) *
                    eval_q_gamma(beta, M_PI);
  return cy / cx;
}

std::vector<std::pair<std::size_t, std::size_t>> plan_level_dims(
    std::size_t n1, std::size_t n2, double ratio0, double alpha, double beta) {
  std::vector<std::pair<std::size_t, std::size_t>> dims{{n1, n2}};
  while (dims.back().first > 8 || dims.back().second > 8) {
    const auto [d1, d2] = dims.back();
    // coarsening a direction halves its mesh count and multiplies the ratio
    // by 2^gamma of the other direction's order, so the finest ratio plus the
    // mesh counts give every level's ratio without reassembling operators
    const double ratio =
        ratio0 *
        std::pow(static_cast<double>(n1 + 1) / static_cast<double>(d1 + 1),
                 alpha) /
        std::pow(static_cast<double>(n2 + 1) / static_cast<double>(d2 + 1),
                 beta);
    bool cx = true, cy = true;
    if (ratio > kSemiTrigger)
      cx = false;  // y couples harder: coarsen y only
    else if (ratio < 1.0 / kSemiTrigger)
      cy = false;  // x couples harder: coarsen x only
    // never stall on a direction that already reached the stop size
    if (!cx && d2 <= 8) cx = true;
    if (!cy && d1 <= 8) cy = true;
    const std::size_t k1 = cx ? coarse_size(d1) : d1;
    const std::size_t k2 = cy ? coarse_size(d2) : d2;
    if ((cx && k1 == 0) || (cy && k2 == 0)) break;
    dims.emplace_back(k1, k2);
  }
  return dims;
}

GridTransfer::GridTransfer(std::size_t n1, std::size_t n2, bool coarsen_x,
                           bool coarsen_y)
    : n1_(n1), n2_(n2), k1_(coarsen_x ? coarse_size(n1) : n1),
      k2_(coarsen_y ? coarse_size(n2) : n2),
      par1_(static_cast<int>((n1 + 1) % 2)),
      par2_(static_cast<int>((n2 + 1) % 2)), cx_(coarsen_x), cy_(coarsen_y) {
  if (k1_ == 0 || k2_ == 0 || (!cx_ && !cy_))
    throw std::invalid_argument("grid too small to coarsen");
}

void GridTransfer::prolong(const double* coarse, double* fine) const {
  if (!cx_) {
    prolong_cols(k2_, n2_, par2_, n1_, coarse, fine);
    return;
  }
  if (!cy_) {
    prolong_rows(k1_, n1_, par1_, k2_, coarse, fine);
    return;
  }
  std::vector<double> tmp(n1_ * k2_);
  prolong_rows(k1_, n1_, par1_, k2_, coarse, tmp.data());
  prolong_cols(k2_, n2_, par2_, n1_, tmp.data(), fine);
}

void GridTransfer::restrict_scaled(const double* fine, double* coarse,
                                   double scale) const {
  if (!cx_) {
    restrict_cols(n2_, k2_, par2_, k1_, scale, fine, coarse);
    return;
  }
  if (!cy_) {
    restrict_rows(n1_, k1_, par1_, n2_, scale, fine, coarse);
    return;
  }
  std::vector<double> tmp(k1_ * n2_);
  restrict_rows(n1_, k1_, par1_, n2_, scale, fine, tmp.data());
  restrict_cols(n2_, k2_, par2_, k1_, scale, tmp.data(), coarse);
}

void GridTransfer::restrict_full(const double* fine, double* coarse) const {
  restrict_scaled(fine, coarse, 0.5);
}

void GridTransfer::restrict_transpose(const double* fine, double* coarse) const {
  restrict_scaled(fine, coarse, 1.0);
}

std::vector<double> GridTransfer::prolong(const std::vector<double>& coarse) const {
  if (coarse.size() != k1_ * k2_) throw std::invalid_argument("coarse size mismatch");
  std::vector<double> fine(n1_ * n2_);
  prolong(coarse.data(), fine.data());
  return fine;
}

std::vector<double> GridTransfer::restrict_full(const std::vector<double>& fine) const {
  if (fine.size() != n1_ * n2_) throw std::invalid_argument("fine size mismatch");
  std::vector<double> coarse(k1_ * k2_);
  restrict_full(fine.data(), coarse.data());
  return coarse;
}

std::vector<double> GridTransfer::restrict_transpose(
    const std::vector<double>& fine) const {
  if (fine.size() != n1_ * n2_) throw std::invalid_argument("fine size mismatch");
  std::vector<double> coarse(k1_ * k2_);
  restrict_transpose(fine.data(), coarse.data());
  return coarse;
}

sparse::Csr GridTransfer::prolong_matrix() const {
  std::vector<sparse::Triplet> trips;
  trips.reserve(9 * k1_ * k2_);
  const double wt[3] = {0.5, 1.0, 0.5};
  // a direction that keeps its size maps index to index with unit weight
  const int ri = cx_ ? 1 : 0, rj = cy_ ? 1 : 0;
  for (std::size_t b = 0; b < k2_; ++b) {
    const std::size_t fb = cy_ ? 2 * b + 1 - static_cast<std::size_t>(par2_) : b;
    for (std::size_t a = 0; a < k1_; ++a) {
      const std::size_t fa = cx_ ? 2 * a + 1 - static_cast<std::size_t>(par1_) : a;
      const std::uint32_t col = static_cast<std::uint32_t>(a + b * k1_);
      for (int dj = -rj; dj <= rj; ++dj) {
        const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(fb) + dj;
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(n2_)) continue;
        for (int di = -ri; di <= ri; ++di) {
          const std::ptrdiff_t i = static_cast<std::ptrdiff_t>(fa) + di;
          if (i < 0 || i >= static_cast<std::ptrdiff_t>(n1_)) continue;
          trips.push_back({static_cast<std::uint32_t>(i + j * static_cast<std::ptrdiff_t>(n1_)),
                           col, wt[di + 1] * wt[dj + 1]});
        }
      }
    }
  }
  return sparse::Csr::from_triplets(n1_ * n2_, k1_ * k2_, std::move(trips));
}

void jacobi_sweep(const LinOp& a, double omega, const double* b, double* x) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  const std::size_t n = a.size();
  const std::vector<double>& d = a.diagonal();
  for (double di : d)
    if (!(di > 0.0))
      throw std::invalid_argument("jacobi needs a strictly positive diagonal");
  std::vector<double> r(n);
  a.apply(x, r.data());
  for (std::size_t i = 0; i < n; ++i) x[i] += omega * (b[i] - r[i]) / d[i];
}

double smoothing_bound_omega(double alpha, double beta, double d, double e,
                             double s_over_r, double inv_r) {
  const double w1a = wsgd_weights(alpha, 2).w[1];
  const double w1b = wsgd_weights(beta, 2).w[1];
  const double a0 = inv_r - 2.0 * (d * w1a + s_over_r * e * w1b);
  const std::size_t samples = 1024;
  double qa = 0.0, qb = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double th = -M_PI + 2.0 * M_PI * static_cast<double>(i) /
                                 static_cast<double>(samples - 1);
    qa = std::max(qa, eval_q_gamma(alpha, th));
    qb = std::max(qb, eval_q_gamma(beta, th));
  }
  const double sup_f = d * qa + e * s_over_r * qb;
  return 0.9 * 2.0 * a0 / sup_f;
}

struct MgHierarchy::Workspace {
  std::vector<std::vector<double>> r, t, bc, xc;
  explicit Workspace(const std::vector<MgLevel>& levels) {
    r.resize(levels.size());
    t.resize(levels.size());
    bc.resize(levels.size());
    xc.resize(levels.size());
    for (std::size_t l = 0; l < levels.size(); ++l) {
      const std::size_t n = levels[l].op->size();
      r[l].resize(n);
      t[l].resize(n);
      bc[l].resize(n);
      xc[l].resize(n);
    }
  }
};

MgHierarchy::MgHierarchy(std::vector<MgLevel> levels, CoarseningMode mode,
                         double omega, CoarseSolve coarse,
                         std::size_t coarse_sweeps)
    : levels_(std::move(levels)), mode_(mode), omega_(omega), coarse_(coarse),
      coarse_sweeps_(coarse_sweeps) {
  if (levels_.empty()) throw std::invalid_argument("empty hierarchy");
  if (!(omega_ > 0.0)) throw std::invalid_argument("omega must be positive");
  if (coarse_ == CoarseSolve::sweeps && coarse_sweeps_ == 0)
    throw std::invalid_argument("coarse_sweeps must be positive");
  for (MgLevel& l : levels_) {
    if (!l.op) throw std::invalid_argument("missing level operator");
    if (l.dinv.empty()) l.dinv = inverted_diagonal(*l.op);
  }
  if (coarse_ == CoarseSolve::lu)
    coarse_lu_.compute(densify(*levels_.back().op));
}

void MgHierarchy::cycle(std::size_t l, const double* b, double* x,
                        bool zero_guess, Workspace& ws) const {
  const MgLevel& lev = levels_[l];
  const std::size_t n = lev.op->size();
  if (l + 1 == levels_.size()) {
    switch (coarse_) {
    case CoarseSolve::lu: {
      Eigen::Map<const Eigen::VectorXd> bb(b, static_cast<Eigen::Index>(n));
      Eigen::VectorXd sol = coarse_lu_.solve(bb);
      std::copy_n(sol.data(), n, x);
      break;
    }
    case CoarseSolve::sweeps: {
      if (zero_guess) {
        for (std::size_t i = 0; i < n; ++i) x[i] = omega_ * lev.dinv[i] * b[i];
      } else {
        lev.op->apply(x, ws.t[l].data());
        kernels::sub(n, b, ws.t[l].data(), ws.r[l].data());
        kernels::fma_had(n, omega_, lev.dinv.data(), ws.r[l].data(), x);
      }
      for (std::size_t k = 1; k < coarse_sweeps_; ++k) {
        lev.op->apply(x, ws.t[l].data());
        kernels::sub(n, b, ws.t[l].data(), ws.r[l].data());
        kernels::fma_had(n, omega_, lev.dinv.data(), ws.r[l].data(), x);
      }
      break;
    }
    case CoarseSolve::none:
      // no coarsest correction: keep whatever guess the caller provided
      break;
    }
    return;
  }
  std::vector<double>& r = ws.r[l];
  std::vector<double>& t = ws.t[l];

  // pre-smooth; zero guess collapses to a scaled diagonal solve
  if (zero_guess) {
    for (std::size_t i = 0; i < n; ++i) x[i] = omega_ * lev.dinv[i] * b[i];
  } else {
    lev.op->apply(x, t.data());
    kernels::sub(n, b, t.data(), r.data());
    kernels::fma_had(n, omega_, lev.dinv.data(), r.data(), x);
  }

  lev.op->apply(x, t.data());
  kernels::sub(n, b, t.data(), r.data());

  const std::size_t nc = levels_[l + 1].op->size();
  std::vector<double>& bc = ws.bc[l + 1];
  std::vector<double>& xc = ws.xc[l + 1];
  if (mode_ == CoarseningMode::galerkin)
    lev.transfer.restrict_transpose(r.data(), bc.data());
  else
    lev.transfer.restrict_full(r.data(), bc.data());

  std::fill_n(xc.data(), nc, 0.0);
  cycle(l + 1, bc.data(), xc.data(), true, ws);

  lev.transfer.prolong(xc.data(), t.data());
  kernels::axpy(n, 1.0, t.data(), x);

  lev.op->apply(x, t.data());
  kernels::sub(n, b, t.data(), r.data());
  kernels::fma_had(n, omega_, lev.dinv.data(), r.data(), x);
}

void MgHierarchy::vcycle(const double* b, double* x) const {
  Workspace ws(levels_);
  bool zero = true;
  for (std::size_t i = 0; i < levels_[0].op->size(); ++i)
    if (x[i] != 0.0) {
      zero = false;
      break;
    }
  cycle(0, b, x, zero, ws);
}

std::vector<double> MgHierarchy::vcycle(const std::vector<double>& b,
                                        const std::vector<double>& x0) const {
  const std::size_t n = levels_[0].op->size();
  if (b.size() != n) throw std::invalid_argument("rhs size mismatch");
  std::vector<double> x = x0;
  if (x.empty()) x.assign(n, 0.0);
  if (x.size() != n) throw std::invalid_argument("initial guess size mismatch");
  vcycle(b.data(), x.data());
  return x;
}

MgHierarchy build_geometric_hierarchy(const FdeProblem& p, const Grid& g,
                                      std::size_t m, double omega,
                                      CoarseSolve coarse,
                                      std::size_t coarse_sweeps) {
  auto fine =
      std::make_shared<StructuredFdeOperator>(assemble_step_operator(p, g, m));
  const auto dims = plan_level_dims(
      g.n1, g.n2, anisotropy_ratio(*fine, p.alpha, p.beta), p.alpha, p.beta);
  std::vector<MgLevel> levels;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    const auto [d1, d2] = dims[l];
    MgLevel lev;
    if (l == 0) {
      lev.op = std::move(fine);
    } else {
      const Grid lg(p, d1, d2, g.steps);
      auto op = std::make_shared<StructuredFdeOperator>(
          assemble_step_operator(p, lg, m));
      // every level is hx_l^alpha times the same continuum operator; bring the
      // coarse ones onto the fine scaling so corrections land at full strength
      op->scale(std::pow(g.hx / lg.hx, p.alpha));
      lev.op = std::move(op);
    }
    lev.n1 = d1;
    lev.n2 = d2;
    levels.push_back(std::move(lev));
  }
  for (std::size_t l = 0; l + 1 < levels.size(); ++l)
    levels[l].transfer =
        GridTransfer(dims[l].first, dims[l].second,
                     dims[l + 1].first < dims[l].first,
                     dims[l + 1].second < dims[l].second);
  return MgHierarchy(std::move(levels), CoarseningMode::geometric, omega,
                     coarse, coarse_sweeps);
}

MgHierarchy build_galerkin_hierarchy(
    sparse::Csr a, std::size_t n1, std::size_t n2, double omega,
    CoarseSolve coarse, std::size_t coarse_sweeps,
    std::vector<std::pair<std::size_t, std::size_t>> plan) {
  if (a.rows != n1 * n2 || a.cols != n1 * n2)
    throw std::invalid_argument("matrix does not match grid dimensions");
  const auto dims = plan.empty() ? level_dims(n1, n2) : std::move(plan);
  if (dims.front() != std::make_pair(n1, n2))
    throw std::invalid_argument("plan does not start at the fine grid");
  std::vector<MgLevel> levels;
  for (std::size_t l = 0; l < dims.size(); ++l) {
    MgLevel lev;
    lev.n1 = dims[l].first;
    lev.n2 = dims[l].second;
    if (l > 0) {
      const sparse::Csr p =
          GridTransfer(dims[l - 1].first, dims[l - 1].second,
                       dims[l].first < dims[l - 1].first,
                       dims[l].second < dims[l - 1].second)
              .prolong_matrix();
      a = sparse::rap(p, a);
    }
    lev.op = std::make_shared<sparse::CsrOp>(a);
    levels.push_back(std::move(lev));
  }
  for (std::size_t l = 0; l + 1 < levels.size(); ++l)
    levels[l].transfer =
        GridTransfer(dims[l].first, dims[l].second,
                     dims[l + 1].first < dims[l].first,
                     dims[l + 1].second < dims[l].second);
  return MgHierarchy(std::move(levels), CoarseningMode::galerkin, omega, coarse,
                     coarse_sweeps);
}

TwoGrid::TwoGrid(std::shared_ptr<const LinOp> a, std::size_t n1, std::size_t n2,
                 double omega, std::size_t nu)
    : a_(std::move(a)), t_(n1, n2), omega_(omega), nu_(nu) {
  if (!a_) throw std::invalid_argument("missing operator");
  if (a_->size() != n1 * n2) throw std::invalid_argument("operator size mismatch");
  const std::size_t nc = t_.coarse_n1() * t_.coarse_n2();
  if (nc > 2048) throw std::invalid_argument("two-grid coarse matrix too large");
  (void)inverted_diagonal(*a_); // validates positivity up front
  // A_k = P^T A P, column by column through the transfer
  Eigen::MatrixXd ak(static_cast<Eigen::Index>(nc), static_cast<Eigen::Index>(nc));
  std::vector<double> ec(nc, 0.0), fine(a_->size()), afine(a_->size()), col(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    ec[j] = 1.0;
    t_.prolong(ec.data(), fine.data());
    ec[j] = 0.0;
    a_->apply(fine.data(), afine.data());
    t_.restrict_transpose(afine.data(), col.data());
    for (std::size_t i = 0; i < nc; ++i)
      ak(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  coarse_lu_.compute(ak);
  if (coarse_lu_.determinant() == 0.0)
    throw std::runtime_error("singular two-grid coarse matrix");
}

void TwoGrid::iterate(const double* b, double* x) const {
  const std::size_t n = a_->size();
  const std::size_t nc = t_.coarse_n1() * t_.coarse_n2();
  std::vector<double> r(n), t(n), rc(nc);
  a_->apply(x, t.data());
  kernels::sub(n, b, t.data(), r.data());
  t_.restrict_transpose(r.data(), rc.data());
  Eigen::Map<const Eigen::VectorXd> rcv(rc.data(), static_cast<Eigen::Index>(nc));
  Eigen::VectorXd ec = coarse_lu_.solve(rcv);
  t_.prolong(ec.data(), t.data());
  kernels::axpy(n, 1.0, t.data(), x);
  for (std::size_t k = 0; k < nu_; ++k) jacobi_sweep(*a_, omega_, b, x);
}

std::vector<double> TwoGrid::iterate(const std::vector<double>& b,
                                     const std::vector<double>& x0) const {
  if (b.size() != a_->size() || x0.size() != a_->size())
    throw std::invalid_argument("two-grid size mismatch");
  std::vector<double> x = x0;
  iterate(b.data(), x.data());
  return x;
}

TgmVerificationReport verify_tgm_theory(const Eigen::MatrixXd& a,
                                        const GridTransfer& t, double omega,
                                        std::size_t nu, std::size_t runs,
                                        std::uint64_t seed) {
  const Eigen::Index n = a.rows();
  TgmVerificationReport rep;
  rep.n = static_cast<std::size_t>(n);
  rep.omega = omega;

  const Eigen::VectorXd d = a.diagonal();
  const Eigen::MatrixXd dinv_a = d.cwiseInverse().asDiagonal() * a;
  const Eigen::MatrixXd s =
      Eigen::MatrixXd::Identity(n, n) - omega * dinv_a;

  // smoothing property: A - S^T A S >= delta * A D^-1 A
  const Eigen::MatrixXd g = a - s.transpose() * a * s;
  const Eigen::MatrixXd h = a * d.cwiseInverse().asDiagonal() * a;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> smo(
      0.5 * (g + g.transpose()), 0.5 * (h + h.transpose()));
  rep.delta_est = smo.eigenvalues().minCoeff();

  // approximation property: D (I - Q) <= xi * A with Q the D-orthogonal
  // projector onto the coarse space
  const Eigen::MatrixXd p = t.prolong_matrix().to_dense();
  const Eigen::MatrixXd pdp = p.transpose() * d.asDiagonal() * p;
  const Eigen::MatrixXd q = p * pdp.ldlt().solve(p.transpose() * d.asDiagonal());
  Eigen::MatrixXd w = d.asDiagonal() * (Eigen::MatrixXd::Identity(n, n) - q);
  w = 0.5 * (w + w.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> app(w, a);
  rep.xi_est = app.eigenvalues().maxCoeff();

  rep.bound = rep.xi_est > 0.0
                  ? std::sqrt(std::max(0.0, 1.0 - rep.delta_est / rep.xi_est))
                  : 1.0;

  // measured A-norm contraction of the two-grid error operator
  const Eigen::MatrixXd ak = p.transpose() * a * p;
  const Eigen::MatrixXd cgc =
      Eigen::MatrixXd::Identity(n, n) - p * ak.ldlt().solve(p.transpose() * a);
  Eigen::MatrixXd e = cgc;
  for (std::size_t k = 0; k < nu; ++k) e = (s * e).eval();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto a_norm = [&](const Eigen::VectorXd& v) {
    return std::sqrt(std::max(0.0, v.dot(a * v)));
  };
  rep.contraction_estimates.reserve(runs);
  for (std::size_t k = 0; k < runs; ++k) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = gauss(rng);
    const double before = a_norm(v);
    const double after = a_norm(e * v);
    rep.contraction_estimates.push_back(before > 0.0 ? after / before : 0.0);
  }
  const double worst = rep.contraction_estimates.empty()
                           ? 0.0
                           : *std::max_element(rep.contraction_estimates.begin(),
                                               rep.contraction_estimates.end());
  rep.ok = rep.delta_est > 0.0 &&
           rep.xi_est >= rep.delta_est * (1.0 - 1e-10) &&
           worst <= rep.bound + 0.05 && worst < 1.0;
  return rep;
}

} // namespace fde::mg
