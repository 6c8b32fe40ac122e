#include "starpir/matrix.hpp"

#include <algorithm>
#include <utility>

namespace starpir {

namespace {
void require_same_field(const MatrixFp& a, const MatrixFp& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("MatrixFp: fields differ");
}
}  // namespace

MatrixFp::MatrixFp(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatrixFp MatrixFp::identity(const FieldSpec& field, std::size_t n) {
  MatrixFp m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

MatrixFp MatrixFp::from_rows(const FieldSpec& field,
                             const std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  MatrixFp m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("MatrixFp::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

MatrixFp MatrixFp::row_vector(const FieldSpec& field, const std::vector<std::uint64_t>& values) {
  return from_rows(field, {values});
}

MatrixFp MatrixFp::column_vector(const FieldSpec& field,
                                 const std::vector<std::uint64_t>& values) {
  MatrixFp m(field, values.size(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m.set(i, 0, values[i]);
  return m;
}

bool MatrixFp::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t v) { return v == 0; });
}

MatrixFp MatrixFp::transpose() const {
  MatrixFp t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = at(i, j);
  return t;
}

MatrixFp MatrixFp::row(std::size_t r) const {
  if (r >= rows_) throw IndexOutOfRange("MatrixFp::row");
  MatrixFp m(field_, 1, cols_);
  for (std::size_t j = 0; j < cols_; ++j) m.data_[j] = at(r, j);
  return m;
}

std::vector<std::uint64_t> MatrixFp::row_values(std::size_t r) const {
  if (r >= rows_) throw IndexOutOfRange("MatrixFp::row_values");
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

MatrixFp MatrixFp::select_columns(std::span<const std::size_t> cols) const {
  MatrixFp m(field_, rows_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= cols_) throw IndexOutOfRange("MatrixFp::select_columns");
    for (std::size_t i = 0; i < rows_; ++i) m.data_[i * cols.size() + j] = at(i, cols[j]);
  }
  return m;
}

MatrixFp MatrixFp::operator*(const MatrixFp& o) const {
  require_same_field(*this, o);
  if (cols_ != o.rows_) throw DimensionMismatch("MatrixFp: product shape mismatch");
  const std::uint64_t p = field_.modulus();
  MatrixFp out(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t t = 0; t < cols_; ++t) {
      const std::uint64_t a = at(i, t);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        std::uint64_t& acc = out.data_[i * o.cols_ + j];
        acc = (acc + a * o.at(t, j)) % p;
      }
    }
  }
  return out;
}

MatrixFp MatrixFp::operator+(const MatrixFp& o) const {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("MatrixFp: sum shape");
  MatrixFp out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = field_.add(data_[i], o.data_[i]);
  return out;
}

MatrixFp MatrixFp::operator-(const MatrixFp& o) const {
  require_same_field(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("MatrixFp: diff shape");
  MatrixFp out(field_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    out.data_[i] = field_.sub(data_[i], o.data_[i]);
  return out;
}

bool MatrixFp::operator==(const MatrixFp& o) const noexcept {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

MatrixFp MatrixFp::vstack(const MatrixFp& top, const MatrixFp& bottom) {
  require_same_field(top, bottom);
  if (top.cols_ != bottom.cols_) throw DimensionMismatch("MatrixFp::vstack: column count");
  MatrixFp out(top.field_, top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(),
            out.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
  return out;
}

void MatrixFp::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j)
    std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
}

void MatrixFp::scale_row(std::size_t r, std::uint64_t factor) {
  for (std::size_t j = 0; j < cols_; ++j)
    data_[r * cols_ + j] = field_.mul(data_[r * cols_ + j], factor);
}

void MatrixFp::add_scaled_row(std::size_t dst, std::size_t src, std::uint64_t factor) {
  for (std::size_t j = 0; j < cols_; ++j) {
    data_[dst * cols_ + j] =
        field_.add(data_[dst * cols_ + j], field_.mul(data_[src * cols_ + j], factor));
  }
}

RrefResult rref(const MatrixFp& m) {
  MatrixFp r = m;
  const FieldSpec& f = r.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    std::size_t sel = row;
    while (sel < r.rows() && r.at(sel, col) == 0) ++sel;
    if (sel == r.rows()) continue;
    r.swap_rows(row, sel);
    r.scale_row(row, f.inv(r.at(row, col)));
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row) continue;
      const std::uint64_t factor = r.at(i, col);
      if (factor != 0) r.add_scaled_row(i, row, f.neg(factor));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

std::size_t rank(const MatrixFp& m) { return rref(m).pivots.size(); }

MatrixFp null_space(const MatrixFp& m) {
  const auto [r, pivots] = rref(m);
  const FieldSpec& f = m.field();
  const std::size_t n = m.cols();
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (pi < pivots.size() && pivots[pi] == c) {
        ++pi;
      } else {
        free_cols.push_back(c);
      }
    }
  }
  MatrixFp basis(f, free_cols.size(), n);
  for (std::size_t bi = 0; bi < free_cols.size(); ++bi) {
    const std::size_t fc = free_cols[bi];
    basis.set(bi, fc, 1);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) {
      basis.set(bi, pivots[pr], f.neg(r.at(pr, fc)));
    }
  }
  return basis;
}

MatrixFp solve(const MatrixFp& a, const MatrixFp& y) {
  if (!(a.field() == y.field())) throw FieldMismatch("solve: fields differ");
  if (a.rows() != y.rows()) throw DimensionMismatch("solve: row counts differ");
  const std::size_t c = a.cols();
  const std::size_t w = y.cols();
  MatrixFp aug(a.field(), a.rows(), c + w);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < c; ++j) aug.set(i, j, a.at(i, j));
    for (std::size_t j = 0; j < w; ++j) aug.set(i, c + j, y.at(i, j));
  }
  const auto [r, pivots] = rref(aug);
  for (std::size_t p : pivots) {
    if (p >= c) throw Inconsistent("solve: system has no solution");
  }
  if (pivots.size() < c) throw RankDeficient("solve: coefficient matrix lacks full column rank");
  MatrixFp x(a.field(), c, w);
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < w; ++j) x.set(i, j, r.at(i, c + j));
  }
  return x;
}

}  // namespace starpir
