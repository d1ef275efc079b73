#pragma once

#include <cstddef>
#include <vector>

namespace fde {

// Square linear operator with an explicitly available diagonal (needed by the
// Jacobi smoother).  Implementations: FFT-structured operators, CSR matrices.
struct LinOp {
  virtual ~LinOp() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(const double* x, double* y) const = 0; // y = A x
  virtual const std::vector<double>& diagonal() const = 0;
};

} // namespace fde
