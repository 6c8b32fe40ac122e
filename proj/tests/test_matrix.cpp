#include <doctest.h>

#include "starpir/matrix.hpp"
#include "starpir/rng.hpp"

using namespace starpir;

namespace {
MatrixFp random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, Rng& rng) {
  MatrixFp m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng.next_below(f.modulus()));
  return m;
}
}  // namespace

TEST_CASE("matrix product") {
  const FieldSpec f5(5);
  const MatrixFp m = MatrixFp::from_rows(f5, {{1, 2, 3}, {4, 0, 1}});
  CHECK(MatrixFp::identity(f5, 2) * m == m);

  CHECK(MatrixFp::from_rows(f5, {{1, 1}}) * MatrixFp::from_rows(f5, {{2}, {3}}) ==
        MatrixFp::from_rows(f5, {{0}}));

  // one file row through the systematic storage generator
  const MatrixFp gc = MatrixFp::from_rows(f5, {{1, 0, 4, 3, 2}, {0, 1, 2, 3, 4}});
  CHECK(MatrixFp::from_rows(f5, {{1, 2}}) * gc ==
        MatrixFp::from_rows(f5, {{1, 2, 3, 4, 0}}));

  CHECK_THROWS_AS(m * m, DimensionMismatch);
  CHECK_THROWS_AS(m * MatrixFp::identity(FieldSpec(7), 3), FieldMismatch);
}

TEST_CASE("rref") {
  const FieldSpec f5(5);
  SUBCASE("zero matrix") {
    const MatrixFp z(f5, 2, 3);
    const auto [r, pivots] = rref(z);
    CHECK(r == z);
    CHECK(pivots.empty());
  }
  SUBCASE("identity") {
    const MatrixFp id = MatrixFp::identity(f5, 3);
    const auto [r, pivots] = rref(id);
    CHECK(r == id);
    CHECK(pivots == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("dependent rows") {
    const auto [r, pivots] = rref(MatrixFp::from_rows(f5, {{2, 4}, {1, 2}}));
    CHECK(r == MatrixFp::from_rows(f5, {{1, 2}, {0, 0}}));
    CHECK(pivots == std::vector<std::size_t>{0});
  }
}

TEST_CASE("rank") {
  const FieldSpec f5(5);
  CHECK(rank(MatrixFp::identity(f5, 4)) == 4);
  CHECK(rank(MatrixFp(f5, 3, 3)) == 0);
  // Vandermonde rows with distinct points
  CHECK(rank(MatrixFp::from_rows(f5, {{1, 1, 1, 1, 1}, {0, 1, 2, 3, 4}})) == 2);

  Rng rng(1);
  for (int i = 0; i < 60; ++i) {
    const FieldSpec f(i % 2 ? 5 : 13);
    const MatrixFp m = random_matrix(f, 1 + rng.next_below(5), 1 + rng.next_below(6), rng);
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("null space") {
  const FieldSpec f5(5);
  CHECK(null_space(MatrixFp::identity(f5, 4)).rows() == 0);

  const MatrixFp ones = MatrixFp::from_rows(f5, {{1, 1, 1, 1, 1}});
  const MatrixFp ns = null_space(ones);
  CHECK(ns.rows() == 4);
  CHECK(rank(ns) == 4);
  CHECK((ones * ns.transpose()).is_zero());

  // null space of a degree-2 evaluation code equals the lower-degree code
  const MatrixFp g3 = MatrixFp::from_rows(f5, {{1, 1, 1, 1, 1}, {0, 1, 2, 3, 4}, {0, 1, 4, 4, 1}});
  const MatrixFp g2 = MatrixFp::from_rows(f5, {{1, 1, 1, 1, 1}, {0, 1, 2, 3, 4}});
  CHECK(rref(null_space(g3)).matrix == rref(g2).matrix);

  Rng rng(2);
  for (int i = 0; i < 60; ++i) {
    const FieldSpec f(i % 2 ? 3 : 7);
    const MatrixFp m = random_matrix(f, 1 + rng.next_below(4), 1 + rng.next_below(6), rng);
    const MatrixFp basis = null_space(m);
    CHECK(basis.rows() + rank(m) == m.cols());
    if (basis.rows() > 0) CHECK((m * basis.transpose()).is_zero());
  }
}

TEST_CASE("solve") {
  const FieldSpec f5(5);
  const MatrixFp y = MatrixFp::column_vector(f5, {2, 0});
  CHECK(solve(MatrixFp::identity(f5, 2), y) == y);
  CHECK(solve(MatrixFp::from_rows(f5, {{1, 0}, {1, 1}}), y) ==
        MatrixFp::column_vector(f5, {2, 3}));
  CHECK_THROWS_AS(
      solve(MatrixFp::from_rows(f5, {{1, 1}, {2, 2}}), MatrixFp::column_vector(f5, {0, 1})),
      Inconsistent);
  CHECK_THROWS_AS(
      solve(MatrixFp::from_rows(f5, {{1, 1}, {2, 2}}), MatrixFp::column_vector(f5, {1, 2})),
      RankDeficient);

  // substitution round trip on random full-column-rank systems
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const FieldSpec f(7);
    const std::size_t c = 1 + rng.next_below(4);
    const std::size_t r = c + rng.next_below(3);
    MatrixFp a = random_matrix(f, r, c, rng);
    if (rank(a) != c) continue;
    const MatrixFp x = random_matrix(f, c, 2, rng);
    const MatrixFp rhs = a * x;
    CHECK(solve(a, rhs) == x);
    CHECK(a * solve(a, rhs) == rhs);
  }
}

TEST_CASE("select_columns and vstack") {
  const FieldSpec f5(5);
  const MatrixFp m = MatrixFp::from_rows(f5, {{1, 2, 3}, {4, 0, 1}});
  const std::vector<std::size_t> cols{2, 0};
  CHECK(m.select_columns(cols) == MatrixFp::from_rows(f5, {{3, 1}, {1, 4}}));
  CHECK(MatrixFp::vstack(m, m).rows() == 4);
  const std::vector<std::size_t> bad{3};
  CHECK_THROWS_AS(m.select_columns(bad), IndexOutOfRange);
}
