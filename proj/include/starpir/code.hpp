#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "starpir/matrix.hpp"

namespace starpir {

// A linear [n,k] code given by a full-row-rank generator matrix. Codes are
// immutable after construction except for the minimum-distance cache, which
// is written at most once (atomically) and shared between copies.
class LinearCode {
 public:
  // Builds a code from any nonzero generator matrix. Rank-deficient input
  // is reduced to a basis (the nonzero RREF rows) and was_reduced() is set.
  static LinearCode from_generator(const MatrixFp& gen);

  // Same, but records a caller-asserted minimum distance so that later
  // min_distance() calls skip enumeration (e.g. for GRS codes).
  static LinearCode from_generator_with_distance(const MatrixFp& gen, std::size_t distance);

  // Rep(n)_q, generated by the all-ones vector; distance n is cached.
  static LinearCode repetition(std::size_t n, const FieldSpec& field);

  std::size_t length() const noexcept { return gen_.cols(); }     // n
  std::size_t dimension() const noexcept { return gen_.rows(); }  // k
  const MatrixFp& generator() const noexcept { return gen_; }
  const FieldSpec& field() const noexcept { return gen_.field(); }
  bool was_reduced() const noexcept { return was_reduced_; }

  std::optional<std::size_t> cached_min_distance() const;

  // Minimum Hamming weight over all nonzero codewords, by exhaustive
  // message enumeration. Throws BudgetExceeded when p^k > 2^22; callers
  // with structural knowledge should use from_generator_with_distance.
  std::size_t min_distance() const;

 private:
  LinearCode(MatrixFp gen, bool was_reduced, std::size_t known_distance);

  MatrixFp gen_;
  bool was_reduced_ = false;
  std::shared_ptr<std::atomic<std::size_t>> distance_cache_;  // 0 = unset
};

// Dual code via null_space of the generator. Throws TrivialDual if k = n.
LinearCode dual(const LinearCode& c);

// Star (Schur) product: the span of all pairwise Hadamard products of
// basis rows of c and d.
LinearCode star_product(const LinearCode& c, const LinearCode& d);

// True iff the k columns indexed by cols are linearly independent.
bool is_information_set(const LinearCode& c, std::span<const std::size_t> cols);

// Every k-subset of columns is an information set (equivalent to
// d = n-k+1). Combinatorial check; throws BudgetExceeded when C(n,k) > 1e6.
bool is_mds(const LinearCode& c);

// Coordinates where some codeword is nonzero, ascending.
std::vector<std::size_t> support(const LinearCode& c);

// Row-space equality, the notion of code equality used throughout.
bool same_code(const LinearCode& a, const LinearCode& b);

// Row space of inner is contained in the row space of outer.
bool contains_code(const LinearCode& outer, const LinearCode& inner);

}  // namespace starpir
