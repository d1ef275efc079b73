#include "fde/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace fde::sparse {

Csr Csr::from_triplets(std::size_t rows, std::size_t cols,
                       std::vector<Triplet> entries) {
  for (const Triplet& t : entries) {
    if (t.row >= rows || t.col >= cols)
      throw std::invalid_argument("triplet index out of range");
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  Csr m;
  m.rows = rows;
  m.cols = cols;
  m.ptr.assign(rows + 1, 0);
  m.idx.reserve(entries.size());
  m.val.reserve(entries.size());
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (i < entries.size() && entries[i].row == r) {
      double v = entries[i].value;
      const std::uint32_t c = entries[i].col;
      ++i;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        v += entries[i].value; // collapse duplicates
        ++i;
      }
      m.idx.push_back(c);
      m.val.push_back(v);
    }
    m.ptr[r + 1] = static_cast<std::uint32_t>(m.idx.size());
  }
  return m;
}

void Csr::apply(const double* x, double* y) const {
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::uint32_t k = ptr[r]; k < ptr[r + 1]; ++k)
      acc += val[k] * x[idx[k]];
    y[r] = acc;
  }
}

Csr Csr::transpose() const {
  Csr t;
  t.rows = cols;
  t.cols = rows;
  t.ptr.assign(cols + 1, 0);
  for (std::uint32_t c : idx) ++t.ptr[c + 1];
  for (std::size_t c = 0; c < cols; ++c) t.ptr[c + 1] += t.ptr[c];
  t.idx.resize(nnz());
  t.val.resize(nnz());
  std::vector<std::uint32_t> next(t.ptr.begin(), t.ptr.end() - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::uint32_t k = ptr[r]; k < ptr[r + 1]; ++k) {
      const std::uint32_t pos = next[idx[k]]++;
      t.idx[pos] = static_cast<std::uint32_t>(r);
      t.val[pos] = val[k];
    }
  }
  return t;
}

// Gustavson row-by-row product with a dense accumulator.
Csr Csr::multiply(const Csr& other) const {
  if (cols != other.rows) throw std::invalid_argument("csr multiply shape mismatch");
  Csr out;
  out.rows = rows;
  out.cols = other.cols;
  out.ptr.assign(rows + 1, 0);
  std::vector<double> acc(other.cols, 0.0);
  std::vector<std::uint32_t> mark(other.cols, UINT32_MAX);
  std::vector<std::uint32_t> live;
  for (std::size_t r = 0; r < rows; ++r) {
    live.clear();
    for (std::uint32_t k = ptr[r]; k < ptr[r + 1]; ++k) {
      const std::uint32_t mid = idx[k];
      const double va = val[k];
      for (std::uint32_t l = other.ptr[mid]; l < other.ptr[mid + 1]; ++l) {
        const std::uint32_t c = other.idx[l];
        if (mark[c] != r) {
          mark[c] = static_cast<std::uint32_t>(r);
          acc[c] = va * other.val[l];
          live.push_back(c);
        } else {
          acc[c] += va * other.val[l];
        }
      }
    }
    std::sort(live.begin(), live.end());
    for (std::uint32_t c : live) {
      out.idx.push_back(c);
      out.val.push_back(acc[c]);
    }
    out.ptr[r + 1] = static_cast<std::uint32_t>(out.idx.size());
  }
  return out;
}

std::vector<double> Csr::diag() const {
  if (rows != cols) throw std::invalid_argument("diag of non-square csr");
  std::vector<double> d(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::uint32_t k = ptr[r]; k < ptr[r + 1]; ++k) {
      if (idx[k] == r) {
        d[r] = val[k];
        break;
      }
      if (idx[k] > r) break;
    }
  }
  return d;
}

Eigen::MatrixXd Csr::to_dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::uint32_t k = ptr[r]; k < ptr[r + 1]; ++k)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(idx[k])) = val[k];
  return m;
}

Csr rap(const Csr& p, const Csr& a) {
  if (a.rows != a.cols || a.rows != p.rows)
    throw std::invalid_argument("rap shape mismatch");
  const Csr ap = a.multiply(p);
  return p.transpose().multiply(ap);
}

CsrOp::CsrOp(Csr m) : m_(std::move(m)), diag_(m_.diag()) {
  if (m_.rows != m_.cols) throw std::invalid_argument("CsrOp needs square matrix");
}

} // namespace fde::sparse
