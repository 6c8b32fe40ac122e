#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "starpir/storage.hpp"

namespace starpir {

// Exact rate as a reduced fraction.
struct Rational {
  long long num = 0;
  long long den = 1;
  bool operator==(const Rational&) const = default;
};

Rational make_rational(long long num, long long den);

struct SchemeOptions {
  // Ordered server subset to retrieve from; size must be max{c, k}. When
  // absent a deterministic default is derived (see derive_params).
  std::optional<std::vector<std::size_t>> j_choice;
  // Validate only the per-row unions of target sets instead of every
  // k-subset of J. Sharper than the stated sufficient condition.
  bool relaxed_j = false;
};

// Validated parameter bundle for one storage/retrieval code pair:
//   c = d_{C*D} - 1 symbols decoded per iteration,
//   b = lcm(c,k)/k rows per file, s = lcm(c,k)/c iterations,
//   g = k/s = c/b symbols per row per iteration,
//   J the ordered retrieval set, |J| = max{c,k},
//   index_sets()[u][a] the servers whose responses carry row a in
//   iteration u (cyclic shifts by g within J).
class SchemeParams {
 public:
  const LinearCode& storage_code() const noexcept { return storage_; }
  const LinearCode& retrieval_code() const noexcept { return retrieval_; }
  const LinearCode& star_code() const noexcept { return star_; }
  const MatrixFp& star_dual_generator() const noexcept { return star_dual_gen_; }

  std::size_t symbols_per_iteration() const noexcept { return c_; }  // c
  std::size_t rows_per_file() const noexcept { return b_; }          // b
  std::size_t iterations() const noexcept { return s_; }             // s
  std::size_t stride() const noexcept { return g_; }                 // g
  const std::vector<std::size_t>& j_set() const noexcept { return j_; }
  bool relaxed_j() const noexcept { return relaxed_j_; }

  const std::vector<std::vector<std::vector<std::size_t>>>& index_sets() const noexcept {
    return sets_;
  }

 private:
  friend SchemeParams derive_params(const LinearCode&, const LinearCode&, const SchemeOptions&);
  SchemeParams(LinearCode storage, LinearCode retrieval, LinearCode star,
               MatrixFp star_dual_gen)
      : storage_(std::move(storage)),
        retrieval_(std::move(retrieval)),
        star_(std::move(star)),
        star_dual_gen_(std::move(star_dual_gen)) {}

  LinearCode storage_;
  LinearCode retrieval_;
  LinearCode star_;
  MatrixFp star_dual_gen_;
  std::size_t c_ = 0, b_ = 0, s_ = 0, g_ = 0;
  std::vector<std::size_t> j_;
  std::vector<std::vector<std::vector<std::size_t>>> sets_;  // [s][b] -> server ids
  bool relaxed_j_ = false;
};

// Validates the pair (C, D) and derives all scheme parameters.
//   RateZero  - d_{C*D} = 1, no symbols can be decoded per iteration
//   NoValidJ  - no admissible retrieval set J exists (or the supplied
//               j_choice fails validation)
// Default J: the lexicographically first information set of C when c <= k;
// the first c servers when c > k and C is MDS; otherwise an exhaustive
// search over size-|J| subsets (budget C(n,|J|) <= 1e5).
SchemeParams derive_params(const LinearCode& storage_code, const LinearCode& retrieval_code,
                           const SchemeOptions& opts = {});

// Target-set table as 0-based positions into an ordered J of size j_size:
// block a of width g in the first iteration, then cyclic right shifts by g.
std::vector<std::vector<std::vector<std::size_t>>> build_index_positions(
    std::size_t j_size, std::size_t rows_per_file, std::size_t iterations, std::size_t stride);

// How the per-query randomness is drawn. fixed_codeword reuses one
// codeword for every draw; it exists so the audits can exhibit a broken
// scheme, never for production use.
enum class QueryPolicy { uniform, fixed_codeword };

// One iteration's queries plus the secret randomness behind them.
// queries row j is q_j; column l*b + a carries codeword d^{l,a}.
struct QuerySet {
  std::size_t iteration = 0;
  MatrixFp queries;    // n x (b*m)
  MatrixFp codewords;  // (m*b) x n, row l*b + a = d^{l,a}
  MatrixFp messages;   // (m*b) x dim(D), the sampled message vectors
};

// Deterministic query construction from given message vectors.
QuerySet queries_from_messages(const SchemeParams& params, std::size_t file_count,
                               std::size_t file_index, std::size_t iteration,
                               const MatrixFp& messages);

// Samples fresh randomness (row-major draw order from rng) and builds the
// iteration's queries. Identical rng state yields identical queries.
QuerySet make_queries(const SchemeParams& params, std::size_t file_count,
                      std::size_t file_index, std::size_t iteration, Rng& rng,
                      QueryPolicy policy = QueryPolicy::uniform);

struct IterationRecord {
  QuerySet query_set;
  MatrixFp responses;  // n x 1
};

// Complete record of one retrieval: everything needed to re-run the
// reconstruction and to audit what each server saw.
struct RetrievalTranscript {
  std::size_t file_index = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> iterations;
};

// Recovers the b x k file from a complete transcript.
//   SingularSystem    - responses inconsistent with the star-product
//                       structure (corrupted transcript)
//   NotInformationSet - the accumulated column sets cannot be inverted
MatrixFp reconstruct(const SchemeParams& params, const RetrievalTranscript& transcript);

// bk/(ns) = c/n, exactly.
Rational achieved_rate(const SchemeParams& params);

// Drives s iterations of query/respond/collect against the given nodes,
// then reconstructs. The client owns the single seeded PRNG; servers draw
// no randomness. Iterations consume randomness in order.
std::pair<MatrixFp, RetrievalTranscript> run_retrieval(std::span<const ServerNode> nodes,
                                                       const SchemeParams& params,
                                                       std::size_t file_index,
                                                       std::uint64_t seed,
                                                       QueryPolicy policy = QueryPolicy::uniform);

}  // namespace starpir
