#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fde/linop.hpp"

namespace fde::sparse {

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  double value;
};

// Compressed sparse row matrix.  Column indices are sorted within each row and
// duplicate triplets are summed on construction.
struct Csr {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> ptr; // rows + 1
  std::vector<std::uint32_t> idx;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }

  static Csr from_triplets(std::size_t rows, std::size_t cols,
                           std::vector<Triplet> entries);

  void apply(const double* x, double* y) const; // y = A x
  Csr transpose() const;
  Csr multiply(const Csr& other) const; // A * other
  std::vector<double> diag() const;     // main diagonal (square only)
  Eigen::MatrixXd to_dense() const;
};

// P^T A P, the coarse operator of a Galerkin hierarchy.
Csr rap(const Csr& p, const Csr& a);

// LinOp adapter so CSR matrices can feed the smoother and V-cycle code.
class CsrOp final : public LinOp {
public:
  explicit CsrOp(Csr m);
  std::size_t size() const override { return m_.rows; }
  void apply(const double* x, double* y) const override { m_.apply(x, y); }
  const std::vector<double>& diagonal() const override { return diag_; }
  const Csr& matrix() const { return m_; }

private:
  Csr m_;
  std::vector<double> diag_;
};

} // namespace fde::sparse
