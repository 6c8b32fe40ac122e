#pragma once

#include <vector>

#include "starpir/code.hpp"

namespace starpir {

// Parameters of a generalized Reed-Solomon code: n distinct evaluation
// points alpha, n nonzero column multipliers v, and the dimension k.
// Immutable value type.
class GrsSpec {
 public:
  GrsSpec(const FieldSpec& field, std::vector<std::uint64_t> alpha,
          std::vector<std::uint64_t> v, std::size_t k);

  // alpha = [0, 1, ..., n-1], v = all ones. Deterministic default used by
  // the CLI and most tests; requires n <= p.
  static GrsSpec with_defaults(const FieldSpec& field, std::size_t n, std::size_t k);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t length() const noexcept { return alpha_.size(); }
  std::size_t dimension() const noexcept { return k_; }
  const std::vector<std::uint64_t>& alpha() const noexcept { return alpha_; }
  const std::vector<std::uint64_t>& multipliers() const noexcept { return v_; }

 private:
  FieldSpec field_;
  std::vector<std::uint64_t> alpha_;
  std::vector<std::uint64_t> v_;
  std::size_t k_;
};

// Vandermonde-style rows alpha^0 ... alpha^(k-1), scaled by diag(v).
MatrixFp canonical_generator(const GrsSpec& spec);

// Lagrange-basis generator with the identity in the first k columns.
MatrixFp systematic_generator(const GrsSpec& spec);

// Closed-form dual: same alpha, multipliers u_i = (v_i * prod_{j!=i}
// (alpha_i - alpha_j))^{-1}, dimension n-k. Throws FullDimension if k = n.
GrsSpec grs_dual(const GrsSpec& spec);

// Closed-form star product for specs sharing alpha:
// dimension min{k_a + k_b - 1, n}, multipliers v_a * v_b elementwise.
GrsSpec grs_star(const GrsSpec& a, const GrsSpec& b);

enum class GeneratorForm { canonical, systematic };

// LinearCode view with the MDS distance n-k+1 cached (no enumeration).
LinearCode as_code(const GrsSpec& spec, GeneratorForm form = GeneratorForm::canonical);

}  // namespace starpir
