#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "starpir/field.hpp"

namespace starpir {

// Dense row-major matrix over F_p. Entries are canonical representatives.
// Immutable use is the norm: operations allocate fresh results.
class MatrixFp {
 public:
  MatrixFp(const FieldSpec& field, std::size_t rows, std::size_t cols);

  static MatrixFp identity(const FieldSpec& field, std::size_t n);
  // Entries are reduced mod p. Rows must have equal length.
  static MatrixFp from_rows(const FieldSpec& field,
                            const std::vector<std::vector<std::uint64_t>>& rows);
  static MatrixFp row_vector(const FieldSpec& field, const std::vector<std::uint64_t>& values);
  static MatrixFp column_vector(const FieldSpec& field, const std::vector<std::uint64_t>& values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldSpec& field() const noexcept { return field_; }

  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint64_t v) {
    data_[r * cols_ + c] = field_.reduce(v);
  }

  bool is_zero() const noexcept;
  MatrixFp transpose() const;
  MatrixFp row(std::size_t r) const;
  std::vector<std::uint64_t> row_values(std::size_t r) const;
  MatrixFp select_columns(std::span<const std::size_t> cols) const;

  MatrixFp operator*(const MatrixFp& o) const;
  MatrixFp operator+(const MatrixFp& o) const;
  MatrixFp operator-(const MatrixFp& o) const;
  bool operator==(const MatrixFp& o) const noexcept;

  static MatrixFp vstack(const MatrixFp& top, const MatrixFp& bottom);

  // elementary row operations (in place), used by the elimination routines
  void swap_rows(std::size_t a, std::size_t b);
  void scale_row(std::size_t r, std::uint64_t factor);
  void add_scaled_row(std::size_t dst, std::size_t src, std::uint64_t factor);

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

struct RrefResult {
  MatrixFp matrix;
  std::vector<std::size_t> pivots;  // pivot column indices, ascending
};

// Reduced row echelon form by Gaussian elimination with first-nonzero
// pivoting. Exact arithmetic, deterministic output.
RrefResult rref(const MatrixFp& m);

std::size_t rank(const MatrixFp& m);

// Basis of { v : m * v^T = 0 } as rows, in the standard RREF
// parametrization (one basis row per free column, ascending). Returns a
// matrix with zero rows when the null space is trivial.
MatrixFp null_space(const MatrixFp& m);

// Unique solution x of a*x = y for a with full column rank; y may have
// multiple columns. Throws Inconsistent or RankDeficient.
MatrixFp solve(const MatrixFp& a, const MatrixFp& y);

}  // namespace starpir
