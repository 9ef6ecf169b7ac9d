#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace orthofit {

/// Dense column-major storage; columns are contiguous so per-column kernels
/// (inner products, axpy) stream through memory.
template <class Real>
class ColumnMatrix {
 public:
  ColumnMatrix() = default;
  ColumnMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Real& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }
  const Real& operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }

  std::span<Real> col(std::size_t c) noexcept {
    assert(c < cols_);
    return {data_.data() + c * rows_, rows_};
  }
  std::span<const Real> col(std::size_t c) const noexcept {
    assert(c < cols_);
    return {data_.data() + c * rows_, rows_};
  }

  /// Appends a column; rows must match (or the matrix is empty, which fixes the row count).
  void push_back(std::span<const Real> column) {
    if (cols_ == 0 && rows_ == 0) rows_ = column.size();
    assert(column.size() == rows_);
    data_.insert(data_.end(), column.begin(), column.end());
    ++cols_;
  }

  void reserve_cols(std::size_t cols) { data_.reserve(cols * rows_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

}  // namespace orthofit
