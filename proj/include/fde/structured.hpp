#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "fde/fft.hpp"
#include "fde/linop.hpp"
#include "fde/sparse.hpp"

namespace fde {

// Dense-free Toeplitz block.  Stored by its first column and first row and
// applied through a circulant embedding of power-of-two length >= 2n - 1, so
// one matvec costs three FFTs.  apply_both shares the forward transform
// between T x and T^T x.
class ToeplitzBlock {
public:
  ToeplitzBlock() = default;
  ToeplitzBlock(std::vector<double> first_col, std::vector<double> first_row);

  // Block of the shifted-difference discretization of order gamma in (1, 2]:
  // first_col[i] = -w_{i+1}, first_row = (-w_1, -w_0, 0, ...).  Lower
  // Hessenberg; gamma = 2 reproduces tridiag(-1, 2, -1).
  static ToeplitzBlock fractional(double gamma, std::size_t n);

  std::size_t size() const { return n_; }
  double entry(std::size_t i, std::size_t j) const;
  const std::vector<double>& first_col() const { return col_; }
  const std::vector<double>& first_row() const { return row_; }

  void apply(const double* x, double* y, bool transpose = false) const;
  void apply_both(const double* x, double* y, double* yt) const;

private:
  std::size_t n_ = 0;
  std::size_t len_ = 0; // circulant length
  std::vector<double> col_, row_;
  fft::Plan plan_;
  std::vector<std::complex<double>> spec_, spec_t_; // circulant symbols
};

std::vector<double> toeplitz_matvec(const ToeplitzBlock& t,
                                    const std::vector<double>& x,
                                    bool transpose = false);

// One implicit time step of the fractional diffusion scheme on an n1 x n2
// interior grid, x index fastest:
//   M u = (1/r) u + Dp (I (x) A) u + Dm (I (x) A^T) u
//       + (s/r) [Ep (B (x) I) u + Em (B^T (x) I) u]
// with A, B the order-alpha/order-beta Toeplitz blocks and Dp, Dm, Ep, Em
// diagonal coefficient samples.  apply_rhs evaluates the companion operator
// with the structured terms negated, used to form the right-hand side from
// the previous time level.
class StructuredFdeOperator final : public LinOp {
public:
  StructuredFdeOperator() = default;
  StructuredFdeOperator(std::size_t n1, std::size_t n2, double inv_r,
                        double s_over_r, ToeplitzBlock ax, ToeplitzBlock ay,
                        std::vector<double> dp, std::vector<double> dm,
                        std::vector<double> ep, std::vector<double> em);

  std::size_t size() const override { return n1_ * n2_; }
  void apply(const double* x, double* y) const override;
  const std::vector<double>& diagonal() const override { return diag_; }

  void apply_rhs(const double* x, double* y) const;

  // Multiplies the whole operator by a constant.  Rediscretized coarse levels
  // carry their own grid scaling, so hierarchies rescale them onto the fine
  // level before pairing them with full-weighting restriction.
  void scale(double s);

  std::size_t n1() const { return n1_; }
  std::size_t n2() const { return n2_; }
  double inv_r() const { return inv_r_; }
  double s_over_r() const { return s_over_r_; }
  const ToeplitzBlock& block_x() const { return ax_; }
  const ToeplitzBlock& block_y() const { return ay_; }
  const std::vector<double>& dp() const { return dp_; }
  const std::vector<double>& dm() const { return dm_; }
  const std::vector<double>& ep() const { return ep_; }
  const std::vector<double>& em() const { return em_; }

  sparse::Csr to_csr() const;

private:
  void apply_impl(const double* x, double* y, double sign) const;

  std::size_t n1_ = 0, n2_ = 0;
  double inv_r_ = 0.0, s_over_r_ = 0.0;
  ToeplitzBlock ax_, ay_;
  std::vector<double> dp_, dm_, ep_, em_;
  std::vector<double> diag_;
};

// Explicit dense assembly for oracle tests and coarsest-level solves.
// Refuses sizes above 4096 unknowns.
Eigen::MatrixXd dense_assemble(const StructuredFdeOperator& op);

} // namespace fde
