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


#ifndef PARTCTX_SPARSE_HPP_
#define PARTCTX_SPARSE_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace partctx {

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed sparse row matrix with column indices sorted within each row.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(int rows, int cols);

  // Duplicate (row, col) entries are summed in input order.
  static CsrMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);
  // Takes ownership of raw CSR arrays; validates shape and column order.
  static CsrMatrix from_csr(int rows, int cols, std::vector<std::size_t> row_ptr,
                            std::vector<int> col_idx, std::vector<double> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const int> row_cols(int r) const {
    return {col_idx_.data() + row_ptr_[std::size_t(r)],
            std::size_t(row_ptr_[std::size_t(r) + 1] - row_ptr_[std::size_t(r)])};
  }
  std::span<const double> row_values(int r) const {
    return {values_.data() + row_ptr_[std::size_t(r)],
            std::size_t(row_ptr_[std::size_t(r) + 1] - row_ptr_[std::size_t(r)])};
  }
  std::span<double> row_values(int r) {
    return {values_.data() + row_ptr_[std::size_t(r)],
            std::size_t(row_ptr_[std::size_t(r) + 1] - row_ptr_[std::size_t(r)])};
  }

  // 0 for entries outside the sparsity pattern.
  double at(int r, int c) const;
  double row_sum(int r) const;

  CsrMatrix transpose() const;
  // Exact structural and value equality with the transpose.
  bool is_symmetric() const;

  std::vector<Triplet> triplets() const;
  // "row col weight" per line, 17 significant digits.
  void write_coo(const std::filesystem::path& path) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

namespace kernels {

// y = A x. Each output row accumulates its entries left to right in both
// variants, so serial and parallel results are bit-identical.
void spmv_serial(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
void spmv_parallel(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

}  // namespace kernels
}  // namespace partctx

#endif  // PARTCTX_SPARSE_HPP_
