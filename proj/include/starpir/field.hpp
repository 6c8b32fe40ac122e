#pragma once

#include <cstdint>

#include "starpir/errors.hpp"

namespace starpir {

bool is_prime(std::uint64_t n);
std::uint64_t smallest_prime_at_least(std::uint64_t n);

// The prime field F_p. Immutable value type; equality means same modulus.
// All element-level operations work on canonical representatives in [0, p).
class FieldSpec {
 public:
  // Throws InvalidArgument unless p is prime (trial division) and small
  // enough that products of two representatives fit in 64 bits.
  explicit FieldSpec(std::uint64_t p);

  std::uint64_t modulus() const noexcept { return p_; }
  bool operator==(const FieldSpec&) const noexcept = default;

  std::uint64_t reduce(std::uint64_t x) const noexcept { return x % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return (a * b) % p_; }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }

  // Square-and-multiply exponentiation; used for Vandermonde rows.
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;

  // Multiplicative inverse; throws DivisionByZero for a = 0.
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t p_;
};

// One element of F_p, tagged with its field. Operations between elements
// of different fields throw FieldMismatch.
class FieldElement {
 public:
  FieldElement(const FieldSpec& field, std::uint64_t value)
      : field_(field), value_(field.reduce(value)) {}

  const FieldSpec& field() const noexcept { return field_; }
  std::uint64_t value() const noexcept { return value_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  bool operator==(const FieldElement& o) const noexcept {
    return field_ == o.field_ && value_ == o.value_;
  }

 private:
  FieldSpec field_;
  std::uint64_t value_;
};

FieldElement inv(const FieldElement& a);

}  // namespace starpir
