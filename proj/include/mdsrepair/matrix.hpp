#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mdsrepair {

/// Integer code of a field element (see gf.hpp for the encoding).
using Symbol = std::uint32_t;

/// Row vector over F_q.
using Vec = std::vector<Symbol>;

/// Dense row-major matrix of base-field symbols. Carries no field; every
/// arithmetic routine takes the field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Symbol> entries);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Vec> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Symbol operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

  std::span<const Symbol> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Symbol> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;

  const std::vector<Symbol>& entries() const noexcept { return data_; }

  bool is_zero() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

Matrix transpose(const Matrix& a);
Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix hstack(const Matrix& left, const Matrix& right);
/// Columns [first, first + count) of a.
Matrix column_slice(const Matrix& a, std::size_t first, std::size_t count);

}  // namespace mdsrepair
