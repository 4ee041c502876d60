// Copyright 2026 The faceloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "faceloc/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "faceloc/error.hpp"

namespace faceloc {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CsrMatrix CsrMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                   std::span<const Triplet> triplets) {
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  for (const auto& t : sorted) {
    if (t.row >= rows || t.col >= cols) {
      throw InvalidArgument("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  CsrMatrix m(rows, cols);
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < sorted.size() && sorted[j].row == sorted[i].row && sorted[j].col == sorted[i].col) {
      sum += sorted[j].value;
      ++j;
    }
    if (sum != 0.0) {
      m.col_index_.push_back(sorted[i].col);
      m.values_.push_back(sum);
      ++m.row_ptr_[sorted[i].row + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < rows; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

CsrMatrix CsrMatrix::identity(std::size_t n, double scale) {
  CsrMatrix m(n, n);
  if (scale == 0.0) return m;
  m.col_index_.resize(n);
  m.values_.assign(n, scale);
  for (std::size_t i = 0; i < n; ++i) {
    m.col_index_[i] = i;
    m.row_ptr_[i + 1] = i + 1;
  }
  return m;
}

double CsrMatrix::at(std::size_t r, std::size_t c) const {
  const auto first = col_index_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
  const auto last = col_index_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(it - col_index_.begin())];
}

std::vector<Triplet> CsrMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out.push_back({r, col_index_[k], values_[k]});
    }
  }
  return out;
}

Matrix CsrMatrix::to_dense() const {
  Matrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) m(r, col_index_[k]) = values_[k];
  }
  return m;
}

bool CsrMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (std::abs(values_[k] - at(col_index_[k], r)) > tol) return false;
    }
  }
  return true;
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  if (x.size() != cols_) {
    throw InvalidArgument("sparse matvec: vector length " + std::to_string(x.size()) +
                          " does not match " + std::to_string(cols_) + " columns");
  }
  std::vector<double> y(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += values_[k] * x[col_index_[k]];
    y[r] = sum;
  }
  return y;
}

Matrix CsrMatrix::multiply(const Matrix& x) const {
  Matrix out(rows_, x.cols());
  multiply_add(x, 1.0, Matrix(), 0.0, out);
  return out;
}

void CsrMatrix::multiply_add(const Matrix& x, double alpha, const Matrix& z, double beta,
                             Matrix& out) const {
  if (x.rows() != cols_) {
    throw InvalidArgument("sparse matmul: operand has " + std::to_string(x.rows()) +
                          " rows, expected " + std::to_string(cols_));
  }
  const bool use_z = beta != 0.0;
  if (use_z && (z.rows() != rows_ || z.cols() != x.cols())) {
    throw InvalidArgument("sparse matmul: addend shape mismatch");
  }
  if (out.rows() != rows_ || out.cols() != x.cols()) out = Matrix(rows_, x.cols());
  const std::size_t c = x.cols();
  for (std::size_t r = 0; r < rows_; ++r) {
    auto dst = out.row(r);
    if (use_z) {
      const auto src = z.row(r);
      for (std::size_t j = 0; j < c; ++j) dst[j] = beta * src[j];
    } else {
      std::fill(dst.begin(), dst.end(), 0.0);
    }
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const double a = alpha * values_[k];
      const auto xr = x.row(col_index_[k]);
      for (std::size_t j = 0; j < c; ++j) dst[j] += a * xr[j];
    }
  }
}

CsrMatrix CsrMatrix::add(const CsrMatrix& a, double alpha, const CsrMatrix& b, double beta) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("sparse add: shape mismatch");
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (auto e : a.to_triplets()) t.push_back({e.row, e.col, alpha * e.value});
  for (auto e : b.to_triplets()) t.push_back({e.row, e.col, beta * e.value});
  return from_triplets(a.rows(), a.cols(), t);
}

}  // namespace faceloc
