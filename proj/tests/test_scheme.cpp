#include <doctest.h>

#include <json.hpp>

#include "starpir/combinatorics.hpp"
#include "starpir/grs.hpp"
#include "starpir/serialize.hpp"

using namespace starpir;

namespace {
const FieldSpec f5(5);

SchemeParams grs_params(const FieldSpec& f, std::size_t n, std::size_t k, std::size_t t,
                        const SchemeOptions& opts = {}) {
  return derive_params(as_code(GrsSpec::with_defaults(f, n, k), GeneratorForm::systematic),
                       as_code(GrsSpec::with_defaults(f, n, t), GeneratorForm::canonical),
                       opts);
}

using Sets = std::vector<std::vector<std::vector<std::size_t>>>;
}  // namespace

TEST_CASE("worked-example parameters") {
  const SchemeParams params = grs_params(f5, 5, 2, 2);
  CHECK(params.symbols_per_iteration() == 2);
  CHECK(params.rows_per_file() == 1);
  CHECK(params.iterations() == 1);
  CHECK(params.stride() == 2);
  CHECK(params.j_set() == std::vector<std::size_t>{0, 1});
  CHECK(achieved_rate(params) == make_rational(2, 5));
  CHECK(same_code(LinearCode::from_generator(params.star_dual_generator()),
                  params.storage_code()));
  // the one iteration targets both retrieval servers for the single row
  CHECK(params.index_sets() == Sets{{{0, 1}}});
}

TEST_CASE("iteration schedule for k=6, c=4, n=10") {
  // storage [10,6] with a repetition retrieval code: b=2 rows, s=3 iterations
  const FieldSpec f11(11);
  const SchemeParams params = grs_params(f11, 10, 6, 1);
  CHECK(params.symbols_per_iteration() == 4);
  CHECK(params.rows_per_file() == 2);
  CHECK(params.iterations() == 3);
  CHECK(params.stride() == 2);
  CHECK(params.j_set() == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(params.index_sets() == Sets{{{0, 1}, {2, 3}},
                                    {{2, 3}, {4, 5}},
                                    {{4, 5}, {0, 1}}});
}

TEST_CASE("iteration schedule for k=4, c=6, n=10") {
  // storage [10,4]: b=3 rows, s=2 iterations, J grows to size c=6
  const FieldSpec f11(11);
  const SchemeParams params = grs_params(f11, 10, 4, 1);
  CHECK(params.symbols_per_iteration() == 6);
  CHECK(params.rows_per_file() == 3);
  CHECK(params.iterations() == 2);
  CHECK(params.stride() == 2);
  CHECK(params.j_set() == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(params.index_sets() == Sets{{{0, 1}, {2, 3}, {4, 5}},
                                    {{2, 3}, {4, 5}, {0, 1}}});
}

TEST_CASE("position table invariants") {
  for (std::size_t g = 1; g <= 3; ++g) {
    for (std::size_t s = 1; s <= 4; ++s) {
      for (std::size_t b = 1; b <= 4; ++b) {
        const std::size_t k = s * g;
        const std::size_t c = b * g;
        const std::size_t j_size = std::max(c, k);
        const auto table = build_index_positions(j_size, b, s, g);
        // per-row coverage: the union over iterations has exactly k positions
        for (std::size_t a = 0; a < b; ++a) {
          std::set<std::size_t> seen;
          for (std::size_t u = 0; u < s; ++u)
            for (std::size_t pos : table[u][a]) seen.insert(pos);
          CHECK(seen.size() == k);
        }
        // within one iteration all rows target disjoint servers
        for (std::size_t u = 0; u < s; ++u) {
          std::set<std::size_t> seen;
          for (std::size_t a = 0; a < b; ++a)
            for (std::size_t pos : table[u][a]) seen.insert(pos);
          CHECK(seen.size() == c);
        }
      }
    }
  }
}

TEST_CASE("rate-zero pairs are rejected") {
  CHECK_THROWS_AS(grs_params(f5, 5, 2, 4), RateZero);
}

TEST_CASE("every c columns of the decoder matrix are independent") {
  const FieldSpec f11(11);
  for (const SchemeParams& params :
       {grs_params(f5, 5, 2, 2), grs_params(f11, 10, 4, 2), grs_params(f11, 10, 6, 1)}) {
    const std::size_t c = params.symbols_per_iteration();
    const MatrixFp& s = params.star_dual_generator();
    const bool all_independent =
        for_each_combination(s.cols(), c, [&](const std::vector<std::size_t>& cols) {
          return rank(s.select_columns(cols)) == c;
        });
    CHECK(all_independent);
  }
}

TEST_CASE("J search succeeds for a non-MDS storage code with c > k") {
  // [4,1] code with a zero column: d = 3, so c = 2 > k = 1 and the MDS
  // shortcut does not apply; the subset search must find J = {0,1}
  const LinearCode storage =
      LinearCode::from_generator(MatrixFp::from_rows(f5, {{1, 1, 1, 0}}));
  const SchemeParams params = derive_params(storage, LinearCode::repetition(4, f5));
  CHECK(params.symbols_per_iteration() == 2);
  CHECK(params.rows_per_file() == 2);
  CHECK(params.iterations() == 1);
  CHECK(params.j_set() == std::vector<std::size_t>{0, 1});

  Rng rng(30);
  const Database db = Database::random(f5, 2, 2, 1, rng);
  const auto nodes = encode(db, storage);
  auto [file, transcript] = run_retrieval(nodes, params, 0, 12);
  CHECK(file == db.file(0));
}

TEST_CASE("relaxed J validation accepts the standard construction") {
  SchemeOptions relaxed;
  relaxed.relaxed_j = true;
  const FieldSpec f11(11);
  const SchemeParams strict = grs_params(f11, 10, 4, 1);
  const SchemeParams loose = grs_params(f11, 10, 4, 1, relaxed);
  CHECK(strict.j_set() == loose.j_set());
  CHECK(strict.index_sets() == loose.index_sets());
}

TEST_CASE("mismatched codes are rejected") {
  const LinearCode c5 = as_code(GrsSpec::with_defaults(f5, 5, 2));
  CHECK_THROWS_AS(derive_params(c5, LinearCode::repetition(5, FieldSpec(7))), FieldMismatch);
  CHECK_THROWS_AS(derive_params(c5, LinearCode::repetition(4, f5)), DimensionMismatch);
}

TEST_CASE("no admissible J exists for a two-direction storage code") {
  // ten columns spanning only two directions: d = 5, so c = 4 > k = 2,
  // but no four columns are pairwise independent
  const LinearCode storage = LinearCode::from_generator(MatrixFp::from_rows(
      f5, {{1, 1, 1, 1, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}}));
  const LinearCode retrieval = LinearCode::repetition(10, f5);
  CHECK_THROWS_AS(derive_params(storage, retrieval), NoValidJ);
}

TEST_CASE("caller-supplied J") {
  SchemeOptions opts;
  opts.j_choice = std::vector<std::size_t>{1, 2};
  const SchemeParams params = grs_params(f5, 5, 2, 2, opts);
  CHECK(params.j_set() == std::vector<std::size_t>{1, 2});

  Rng rng(19);
  const Database db = Database::random(f5, 2, 1, 2, rng);
  const auto nodes = encode(db, params.storage_code());
  auto [file, transcript] = run_retrieval(nodes, params, 1, 21);
  CHECK(file == db.file(1));

  SchemeOptions bad_size;
  bad_size.j_choice = std::vector<std::size_t>{1};
  CHECK_THROWS_AS(grs_params(f5, 5, 2, 2, bad_size), InvalidArgument);

  SchemeOptions dup;
  dup.j_choice = std::vector<std::size_t>{1, 1};
  CHECK_THROWS_AS(grs_params(f5, 5, 2, 2, dup), InvalidArgument);

  // a J through the zero column of a degenerate code is rejected
  const LinearCode degenerate =
      LinearCode::from_generator(MatrixFp::from_rows(f5, {{1, 1, 0}}));
  SchemeOptions through_zero;
  through_zero.j_choice = std::vector<std::size_t>{2};
  CHECK_THROWS_AS(
      derive_params(degenerate, LinearCode::repetition(3, f5), through_zero), NoValidJ);
}

TEST_CASE("query structure") {
  const SchemeParams params = grs_params(f5, 5, 2, 2);
  Rng rng(20);
  const QuerySet qs = make_queries(params, 3, 1, 0, rng);
  CHECK(qs.queries.rows() == 5);
  CHECK(qs.queries.cols() == 3);  // b*m upload symbols per server
  // q_j = d_j everywhere except the unit probe at the targeted servers
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t col = 0; col < 3; ++col) {
      const std::uint64_t d = qs.codewords.at(col, j);
      const bool probed = (j == 0 || j == 1) && col == 1;
      CHECK(qs.queries.at(j, col) == (probed ? f5.add(d, 1) : d));
    }
  }
  // codewords really come from the retrieval code
  for (std::size_t r = 0; r < qs.codewords.rows(); ++r) {
    CHECK(MatrixFp::row_vector(f5, qs.messages.row_values(r)) *
              params.retrieval_code().generator() ==
          MatrixFp::row_vector(f5, qs.codewords.row_values(r)));
  }

  // deterministic given the rng state
  Rng rng_a(77), rng_b(77);
  CHECK(make_queries(params, 3, 0, 0, rng_a).queries ==
        make_queries(params, 3, 0, 0, rng_b).queries);

  Rng rng_c(78);
  CHECK_THROWS_AS(make_queries(params, 3, 3, 0, rng_c), IndexOutOfRange);
  CHECK_THROWS_AS(make_queries(params, 3, 0, 1, rng_c), IndexOutOfRange);
}

TEST_CASE("responses decompose into a star-product codeword plus the probe") {
  const FieldSpec f11(11);
  const SchemeParams params = grs_params(f11, 10, 4, 2);
  Rng rng(21);
  const Database db = Database::random(f11, 2, params.rows_per_file(), 4, rng);
  const auto nodes = encode(db, params.storage_code());
  const std::size_t i = 1;
  auto [file, transcript] = run_retrieval(nodes, params, i, 22);
  CHECK(file == db.file(i));

  const MatrixFp y = db.data() * params.storage_code().generator();
  for (std::size_t u = 0; u < params.iterations(); ++u) {
    MatrixFp probe(f11, 10, 1);
    for (std::size_t a = 0; a < params.rows_per_file(); ++a) {
      for (std::size_t j : params.index_sets()[u][a]) {
        probe.set(j, 0, y.at(i * params.rows_per_file() + a, j));
      }
    }
    const MatrixFp residual = transcript.iterations[u].responses - probe;
    // membership in C*D, checked by rank join against the star basis
    CHECK(rank(MatrixFp::vstack(params.star_code().generator(), residual.transpose())) ==
          params.star_code().dimension());
  }
}

TEST_CASE("retrieval is exact across parameter sweeps") {
  for (std::size_t n = 4; n <= 9; ++n) {
    const FieldSpec f(smallest_prime_at_least(n));
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t t = 1; t + k <= n; ++t) {
        const SchemeParams params = grs_params(f, n, k, t);
        Rng rng(1000 + n * 100 + k * 10 + t);
        const std::size_t m = 2;
        const Database db = Database::random(f, m, params.rows_per_file(), k, rng);
        const auto nodes = encode(db, params.storage_code());
        for (std::size_t i = 0; i < m; ++i) {
          auto [file, transcript] = run_retrieval(nodes, params, i, 31 * n + i);
          CHECK(file == db.file(i));
          CHECK(transcript.iterations.size() == params.iterations());
        }
      }
    }
  }
}

TEST_CASE("zero database retrieves a zero file") {
  const SchemeParams params = grs_params(f5, 5, 2, 2);
  const Database db(f5, 2, 1, 2, MatrixFp(f5, 2, 2));
  const auto nodes = encode(db, params.storage_code());
  auto [file, transcript] = run_retrieval(nodes, params, 0, 5);
  CHECK(file.is_zero());
}

TEST_CASE("achieved_rate") {
  CHECK(achieved_rate(grs_params(f5, 5, 2, 2)) == make_rational(2, 5));
  const FieldSpec f13(13);
  CHECK(achieved_rate(grs_params(f13, 12, 4, 2)) == make_rational(7, 12));
  // retrieval code = dual of storage: rate 1/n
  const LinearCode c = as_code(GrsSpec::with_defaults(f13, 12, 4));
  CHECK(achieved_rate(derive_params(c, dual(c))) == make_rational(1, 12));
}

TEST_CASE("reconstruct validates transcript shape and integrity") {
  const SchemeParams params = grs_params(f5, 5, 2, 2);
  Rng rng(23);
  const Database db = Database::random(f5, 2, 1, 2, rng);
  const auto nodes = encode(db, params.storage_code());
  auto [file, transcript] = run_retrieval(nodes, params, 0, 9);

  RetrievalTranscript missing = transcript;
  missing.iterations.clear();
  CHECK_THROWS_AS(reconstruct(params, missing), InvalidArgument);
}

TEST_CASE("a corrupted response is rejected when the star code is not MDS") {
  // star product = storage code here, with distance 2 < n - dim + 1, so the
  // per-iteration solve is overdetermined and inconsistency is detectable
  const LinearCode storage =
      LinearCode::from_generator(MatrixFp::from_rows(f5, {{1, 1, 0, 0}, {0, 0, 1, 1}}));
  const SchemeParams params = derive_params(storage, LinearCode::repetition(4, f5));
  CHECK(params.symbols_per_iteration() == 1);
  CHECK(params.iterations() == 2);
  Rng rng(29);
  const Database db = Database::random(f5, 2, params.rows_per_file(), 2, rng);
  const auto nodes = encode(db, storage);
  auto [file, transcript] = run_retrieval(nodes, params, 1, 17);
  CHECK(file == db.file(1));

  RetrievalTranscript corrupted = transcript;
  MatrixFp& r = corrupted.iterations[0].responses;
  r.set(3, 0, f5.add(r.at(3, 0), 1));
  CHECK_THROWS_AS(reconstruct(params, corrupted), SingularSystem);
}

TEST_CASE("transcript export and replay") {
  const FieldSpec f7(7);
  const SchemeParams params = grs_params(f7, 7, 3, 2);
  Rng rng(24);
  const std::size_t m = 3;
  const Database db = Database::random(f7, m, params.rows_per_file(), 3, rng);
  const auto nodes = encode(db, params.storage_code());
  auto [file, transcript] = run_retrieval(nodes, params, 2, 40);

  const nlohmann::json j = transcript_to_json(params, m, transcript);
  const ParsedTranscript parsed = transcript_from_json(j);
  CHECK(parsed.file_count == m);
  CHECK(parsed.transcript.file_index == 2);
  CHECK(parsed.params.j_set() == params.j_set());
  CHECK(reconstruct(parsed.params, parsed.transcript) == file);
}

TEST_CASE("database document round trip and strict validation") {
  using nlohmann::json;
  Rng rng(25);
  const Database db = Database::random(f5, 2, 2, 3, rng);
  CHECK(database_from_json(database_to_json(db)) == db);

  json bad = database_to_json(db);
  bad["files"][0][0][1] = 5;  // == p: out of range is rejected, not reduced
  CHECK_THROWS_AS(database_from_json(bad), InvalidArgument);

  json negative = database_to_json(db);
  negative["files"][1][0][0] = -1;
  CHECK_THROWS_AS(database_from_json(negative), InvalidArgument);

  json short_file = database_to_json(db);
  short_file["files"][0].erase(1);
  CHECK_THROWS_AS(database_from_json(short_file), InvalidArgument);

  json composite = database_to_json(db);
  composite["p"] = 6;
  CHECK_THROWS_AS(database_from_json(composite), InvalidArgument);
}
