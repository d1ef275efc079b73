#include "fde/structured.hpp"

#include <stdexcept>

#include "fde/kernels.hpp"
#include "fde/weights.hpp"

namespace fde {
namespace {

// Per-thread scratch shared by every Toeplitz apply; grown on demand.
struct FftScratch {
  std::vector<std::complex<double>> in, a, b;
};

FftScratch& scratch() {
  thread_local FftScratch s;
  return s;
}

std::vector<std::complex<double>> circulant_symbol(std::size_t n, std::size_t len,
                                                   const std::vector<double>& col,
                                                   const std::vector<double>& row,
                                                   fft::Plan& plan) {
  std::vector<std::complex<double>> c(len, 0.0);
  for (std::size_t i = 0; i < n; ++i) c[i] = col[i];
  for (std::size_t j = 1; j < n; ++j) c[len - j] = row[j];
  plan.forward(c.data());
  return c;
}

} // namespace

ToeplitzBlock::ToeplitzBlock(std::vector<double> first_col,
                             std::vector<double> first_row)
    : n_(first_col.size()), col_(std::move(first_col)), row_(std::move(first_row)) {
  if (n_ == 0 || row_.size() != n_)
    throw std::invalid_argument("toeplitz column and row sizes must match");
  if (col_[0] != row_[0])
    throw std::invalid_argument("toeplitz corner entry mismatch");
  len_ = fft::next_pow2(2 * n_ - 1);
  plan_ = fft::Plan(len_);
  spec_ = circulant_symbol(n_, len_, col_, row_, plan_);
  spec_t_ = circulant_symbol(n_, len_, row_, col_, plan_);
}

ToeplitzBlock ToeplitzBlock::fractional(double gamma, std::size_t n) {
  if (n == 0) throw std::invalid_argument("empty toeplitz block");
  const WeightTable& t = wsgd_weights(gamma, n < 2 ? 2 : n);
  std::vector<double> col(n), row(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) col[i] = -t.w[i + 1];
  row[0] = -t.w[1];
  if (n > 1) row[1] = -t.w[0];
  return ToeplitzBlock(std::move(col), std::move(row));
}

double ToeplitzBlock::entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("toeplitz entry");
  return i >= j ? col_[i - j] : row_[j - i];
}

void ToeplitzBlock::apply(const double* x, double* y, bool transpose) const {
  FftScratch& s = scratch();
  s.in.assign(len_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) s.in[i] = x[i];
  plan_.forward(s.in.data());
  s.a.resize(len_);
  const std::vector<std::complex<double>>& spec = transpose ? spec_t_ : spec_;
  kernels::cmul(len_, s.in.data(), spec.data(), s.a.data());
  plan_.inverse(s.a.data());
  for (std::size_t i = 0; i < n_; ++i) y[i] = s.a[i].real();
}

void ToeplitzBlock::apply_both(const double* x, double* y, double* yt) const {
  FftScratch& s = scratch();
  s.in.assign(len_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) s.in[i] = x[i];
  plan_.forward(s.in.data());
  s.a.resize(len_);
  s.b.resize(len_);
  kernels::cmul(len_, s.in.data(), spec_.data(), s.a.data());
  kernels::cmul(len_, s.in.data(), spec_t_.data(), s.b.data());
  plan_.inverse(s.a.data());
  plan_.inverse(s.b.data());
  for (std::size_t i = 0; i < n_; ++i) {
    y[i] = s.a[i].real();
    yt[i] = s.b[i].real();
  }
}

std::vector<double> toeplitz_matvec(const ToeplitzBlock& t,
                                    const std::vector<double>& x, bool transpose) {
  if (x.size() != t.size()) throw std::invalid_argument("matvec size mismatch");
  std::vector<double> y(x.size());
  t.apply(x.data(), y.data(), transpose);
  return y;
}

StructuredFdeOperator::StructuredFdeOperator(
    std::size_t n1, std::size_t n2, double inv_r, double s_over_r,
    ToeplitzBlock ax, ToeplitzBlock ay, std::vector<double> dp,
    std::vector<double> dm, std::vector<double> ep, std::vector<double> em)
    : n1_(n1), n2_(n2), inv_r_(inv_r), s_over_r_(s_over_r), ax_(std::move(ax)),
      ay_(std::move(ay)), dp_(std::move(dp)), dm_(std::move(dm)),
      ep_(std::move(ep)), em_(std::move(em)) {
  const std::size_t n = n1_ * n2_;
  if (n == 0) throw std::invalid_argument("empty operator");
  if (ax_.size() != n1_ || ay_.size() != n2_)
    throw std::invalid_argument("toeplitz block size mismatch");
  if (dp_.size() != n || dm_.size() != n || ep_.size() != n || em_.size() != n)
    throw std::invalid_argument("coefficient field size mismatch");
  if (!(inv_r_ > 0.0)) throw std::invalid_argument("1/r must be positive");
  if (!(s_over_r_ > 0.0)) throw std::invalid_argument("s/r must be positive");
  for (std::size_t p = 0; p < n; ++p) {
    if (dp_[p] < 0.0 || dm_[p] < 0.0 || ep_[p] < 0.0 || em_[p] < 0.0)
      throw std::invalid_argument("negative diffusion coefficient sample");
  }
  const double ax0 = ax_.first_col()[0];
  const double ay0 = ay_.first_col()[0];
  diag_.resize(n);
  for (std::size_t p = 0; p < n; ++p)
    diag_[p] = inv_r_ + (dp_[p] + dm_[p]) * ax0 + s_over_r_ * (ep_[p] + em_[p]) * ay0;
}

void StructuredFdeOperator::apply_impl(const double* x, double* y,
                                       double sign) const {
  const std::size_t n = n1_ * n2_;
  for (std::size_t p = 0; p < n; ++p) y[p] = inv_r_ * x[p];

  std::vector<double> t(n1_), tt(n1_);
  for (std::size_t j = 0; j < n2_; ++j) {
    const std::size_t off = j * n1_;
    ax_.apply_both(x + off, t.data(), tt.data());
    kernels::fma_had(n1_, sign, dp_.data() + off, t.data(), y + off);
    kernels::fma_had(n1_, sign, dm_.data() + off, tt.data(), y + off);
  }

  std::vector<double> xc(n2_), tc(n2_), ttc(n2_);
  const double c = sign * s_over_r_;
  for (std::size_t i = 0; i < n1_; ++i) {
    for (std::size_t j = 0; j < n2_; ++j) xc[j] = x[i + j * n1_];
    ay_.apply_both(xc.data(), tc.data(), ttc.data());
    for (std::size_t j = 0; j < n2_; ++j) {
      const std::size_t p = i + j * n1_;
      y[p] += c * (ep_[p] * tc[j] + em_[p] * ttc[j]);
    }
  }
}

void StructuredFdeOperator::apply(const double* x, double* y) const {
  apply_impl(x, y, 1.0);
}

void StructuredFdeOperator::scale(double s) {
  // ep_/em_ enter every code path through s_over_r_, so the two scalars and
  // the x-direction coefficient vectors cover the full matrix
  inv_r_ *= s;
  s_over_r_ *= s;
  for (double& v : dp_) v *= s;
  for (double& v : dm_) v *= s;
  for (double& v : diag_) v *= s;
}

void StructuredFdeOperator::apply_rhs(const double* x, double* y) const {
  apply_impl(x, y, -1.0);
}

sparse::Csr StructuredFdeOperator::to_csr() const {
  const std::size_t n = n1_ * n2_;
  std::vector<sparse::Triplet> trips;
  trips.reserve(n * (n1_ + n2_ + 1));
  for (std::size_t j = 0; j < n2_; ++j) {
    for (std::size_t i = 0; i < n1_; ++i) {
      const std::uint32_t p = static_cast<std::uint32_t>(i + j * n1_);
      trips.push_back({p, p, inv_r_});
      // the A part fills columns 0..i+1, the transpose part i-1..n1-1; rows
      // carry both, so the whole x-range is populated
      for (std::size_t ii = 0; ii < n1_; ++ii) {
        const double v = dp_[p] * ax_.entry(i, ii) + dm_[p] * ax_.entry(ii, i);
        if (v != 0.0)
          trips.push_back({p, static_cast<std::uint32_t>(ii + j * n1_), v});
      }
      for (std::size_t jj = 0; jj < n2_; ++jj) {
        const double v =
            s_over_r_ * (ep_[p] * ay_.entry(j, jj) + em_[p] * ay_.entry(jj, j));
        if (v != 0.0)
          trips.push_back({p, static_cast<std::uint32_t>(i + jj * n1_), v});
      }
    }
  }
  return sparse::Csr::from_triplets(n, n, std::move(trips));
}

Eigen::MatrixXd dense_assemble(const StructuredFdeOperator& op) {
  const std::size_t n = op.size();
  if (n > 4096) throw std::invalid_argument("dense_assemble limited to 4096 unknowns");
  const std::size_t n1 = op.n1(), n2 = op.n2();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n2; ++j) {
    for (std::size_t i = 0; i < n1; ++i) {
      const std::size_t p = i + j * n1;
      const Eigen::Index ep = static_cast<Eigen::Index>(p);
      m(ep, ep) += op.inv_r();
      for (std::size_t ii = 0; ii < n1; ++ii)
        m(ep, static_cast<Eigen::Index>(ii + j * n1)) +=
            op.dp()[p] * op.block_x().entry(i, ii) +
            op.dm()[p] * op.block_x().entry(ii, i);
      for (std::size_t jj = 0; jj < n2; ++jj)
        m(ep, static_cast<Eigen::Index>(i + jj * n1)) +=
            op.s_over_r() * (op.ep()[p] * op.block_y().entry(j, jj) +
                             op.em()[p] * op.block_y().entry(jj, j));
    }
  }
  return m;
}

} // namespace fde
