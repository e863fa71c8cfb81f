#ifndef PIPECG_CSR_MATRIX_HPP
#define PIPECG_CSR_MATRIX_HPP

#include "pipecg/kernels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace pipecg {

/// Symmetric positive definite sparse matrix in CSR layout. Column indices
/// within a row are strictly increasing, and every stored (i, j, v) has a
/// matching (j, i, v). Immutable after assembly apart from the cached
/// 2-norm estimate.
template <class Scalar>
struct SparseCsr {
  Eigen::Index n = 0;
  std::vector<Eigen::Index> row_ptr;  // length n+1
  std::vector<Eigen::Index> col_idx;
  std::vector<Scalar> values;
  Eigen::Index max_row_nnz = 0;
  double norm2_estimate = 0.0;  // 0 until estimate_norm2 has run

  Eigen::Index nnz() const {
    return row_ptr.empty() ? 0 : row_ptr.back();
  }

  bool coeff(Eigen::Index i, Eigen::Index j, Scalar& out) const {
    auto first = col_idx.begin() + row_ptr[i];
    auto last = col_idx.begin() + row_ptr[i + 1];
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return false;
    out = values[static_cast<std::size_t>(it - col_idx.begin())];
    return true;
  }

  void validate() const {
    if (n < 0 || row_ptr.size() != static_cast<std::size_t>(n) + 1)
      throw std::invalid_argument("csr: row_ptr length must be n+1");
    if (row_ptr[0] != 0) throw std::invalid_argument("csr: row_ptr[0] must be 0");
    Eigen::Index widest = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (row_ptr[i + 1] < row_ptr[i])
        throw std::invalid_argument("csr: row_ptr must be nondecreasing");
      widest = std::max(widest, row_ptr[i + 1] - row_ptr[i]);
      for (Eigen::Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        if (col_idx[k] < 0 || col_idx[k] >= n)
          throw std::invalid_argument("csr: column index out of range");
        if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
          throw std::invalid_argument("csr: columns must be strictly increasing per row");
      }
    }
    if (row_ptr[n] != static_cast<Eigen::Index>(values.size()) ||
        values.size() != col_idx.size())
      throw std::invalid_argument("csr: nnz mismatch");
    if (widest != max_row_nnz)
      throw std::invalid_argument("csr: cached max row nnz is stale");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        Scalar mirror;
        if (!coeff(col_idx[k], i, mirror) || !(mirror == values[k]))
          throw std::invalid_argument("csr: matrix is not symmetric at (" +
                                      std::to_string(i) + "," +
                                      std::to_string(col_idx[k]) + ")");
      }
  }
};

using SparseMatrixD = SparseCsr<double>;

template <class Scalar>
struct Triplet {
  Eigen::Index row;
  Eigen::Index col;
  Scalar value;
};

/// Assembles CSR from unordered triplets. Duplicate (row, col) pairs are
/// rejected; the caller mirrors off-diagonal entries itself.
template <class Scalar>
SparseCsr<Scalar> build_csr(Eigen::Index n, std::vector<Triplet<Scalar>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseCsr<Scalar> A;
  A.n = n;
  A.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  A.col_idx.reserve(entries.size());
  A.values.reserve(entries.size());
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& t = entries[e];
    if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
      throw std::invalid_argument("build_csr: index out of range");
    if (e > 0 && entries[e - 1].row == t.row && entries[e - 1].col == t.col)
      throw std::invalid_argument("build_csr: duplicate entry at (" +
                                  std::to_string(t.row) + "," +
                                  std::to_string(t.col) + ")");
    A.row_ptr[static_cast<std::size_t>(t.row) + 1]++;
    A.col_idx.push_back(t.col);
    A.values.push_back(t.value);
  }
  for (Eigen::Index i = 0; i < n; ++i) A.row_ptr[i + 1] += A.row_ptr[i];
  for (Eigen::Index i = 0; i < n; ++i)
    A.max_row_nnz = std::max(A.max_row_nnz, A.row_ptr[i + 1] - A.row_ptr[i]);
  return A;
}

/// y = A x with a fixed left-to-right accumulation per row, so repeated
/// calls are bitwise identical.
template <class Scalar>
DenseVector<Scalar> matvec(const SparseCsr<Scalar>& A, const DenseVector<Scalar>& x) {
  if (x.size() != A.n) throw std::invalid_argument("matvec: length mismatch");
  DenseVector<Scalar> y(A.n);
  for (Eigen::Index i = 0; i < A.n; ++i) {
    Scalar acc(0);
    for (Eigen::Index k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      acc += A.values[k] * x[A.col_idx[k]];
    y[i] = acc;
  }
  return y;
}

}  // namespace pipecg

#endif  // PIPECG_CSR_MATRIX_HPP
