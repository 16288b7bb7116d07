// Copyright 2026 The partctx Authors. All Rights Reserved.
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


#include "partctx/sparse.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include "partctx/error.hpp"

namespace partctx {

CsrMatrix::CsrMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), row_ptr_(std::size_t(rows) + 1, 0) {}

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  CsrMatrix m(rows, cols);
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw DimensionError("sparse: triplet index out of range");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    const Triplet& t = triplets[i];
    double v = 0.0;
    std::size_t j = i;
    for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j) {
      v += triplets[j].value;
    }
    m.col_idx_.push_back(t.col);
    m.values_.push_back(v);
    ++m.row_ptr_[std::size_t(t.row) + 1];
    i = j;
  }
  for (int r = 0; r < rows; ++r) m.row_ptr_[std::size_t(r) + 1] += m.row_ptr_[std::size_t(r)];
  return m;
}

CsrMatrix CsrMatrix::from_csr(int rows, int cols, std::vector<std::size_t> row_ptr,
                              std::vector<int> col_idx, std::vector<double> values) {
  if (row_ptr.size() != std::size_t(rows) + 1 || row_ptr.front() != 0 ||
      row_ptr.back() != col_idx.size() || col_idx.size() != values.size()) {
    throw DimensionError("sparse: inconsistent CSR arrays");
  }
  for (int r = 0; r < rows; ++r) {
    if (row_ptr[std::size_t(r)] > row_ptr[std::size_t(r) + 1]) {
      throw DimensionError("sparse: row pointers not monotone");
    }
    for (std::size_t k = row_ptr[std::size_t(r)]; k < row_ptr[std::size_t(r) + 1]; ++k) {
      if (col_idx[k] < 0 || col_idx[k] >= cols ||
          (k > row_ptr[std::size_t(r)] && col_idx[k] <= col_idx[k - 1])) {
        throw DimensionError("sparse: column indices out of range or unsorted");
      }
    }
  }
  CsrMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_ = std::move(row_ptr);
  m.col_idx_ = std::move(col_idx);
  m.values_ = std::move(values);
  return m;
}

double CsrMatrix::at(int r, int c) const {
  const auto cols = row_cols(r);
  const auto it = std::lower_bound(cols.begin(), cols.end(), c);
  if (it == cols.end() || *it != c) return 0.0;
  return row_values(r)[std::size_t(it - cols.begin())];
}

double CsrMatrix::row_sum(int r) const {
  double s = 0.0;
  for (double v : row_values(r)) s += v;
  return s;
}

CsrMatrix CsrMatrix::transpose() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (int r = 0; r < rows_; ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) t.push_back({cols[k], r, vals[k]});
  }
  return from_triplets(cols_, rows_, std::move(t));
}

bool CsrMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  const CsrMatrix t = transpose();
  return t.row_ptr_ == row_ptr_ && t.col_idx_ == col_idx_ && t.values_ == values_;
}

std::vector<Triplet> CsrMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (int r = 0; r < rows_; ++r) {
    const auto cols = row_cols(r);
    const auto vals = row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({r, cols[k], vals[k]});
  }
  return out;
}

void CsrMatrix::write_coo(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(17);
  for (const auto& t : triplets()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

namespace kernels {

void spmv_serial(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  for (int r = 0; r < a.rows(); ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    double s = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[std::size_t(cols[k])];
    y[std::size_t(r)] = s;
  }
}

void spmv_parallel(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  const int rows = a.rows();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    const auto cols = a.row_cols(r);
    const auto vals = a.row_values(r);
    double s = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) s += vals[k] * x[std::size_t(cols[k])];
    y[std::size_t(r)] = s;
  }
}

}  // namespace kernels
}  // namespace partctx
