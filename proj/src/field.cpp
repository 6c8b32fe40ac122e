#include "starpir/field.hpp"

namespace starpir {

namespace {
// Big enough for any code length this library targets, small enough that
// a*b never overflows uint64.
constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 31) - 1;
}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t smallest_prime_at_least(std::uint64_t n) {
  std::uint64_t p = n < 2 ? 2 : n;
  while (!is_prime(p)) ++p;
  return p;
}

FieldSpec::FieldSpec(std::uint64_t p) : p_(p) {
  if (p > kMaxModulus) throw InvalidArgument("FieldSpec: modulus too large");
  if (!is_prime(p)) throw InvalidArgument("FieldSpec: modulus must be prime");
}

std::uint64_t FieldSpec::pow(std::uint64_t base, std::uint64_t exp) const noexcept {
  std::uint64_t result = 1 % p_;
  std::uint64_t b = base % p_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, b);
    b = mul(b, b);
    exp >>= 1;
  }
  return result;
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw DivisionByZero("FieldSpec::inv: zero has no inverse");
  return pow(a, p_ - 2);
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch("FieldElement: operands belong to different fields");
  }
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_field(*this, o);
  return {field_, field_.add(value_, o.value_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_field(*this, o);
  return {field_, field_.sub(value_, o.value_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_field(*this, o);
  return {field_, field_.mul(value_, o.value_)};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same_field(*this, o);
  return {field_, field_.mul(value_, field_.inv(o.value_))};
}

FieldElement inv(const FieldElement& a) { return {a.field(), a.field().inv(a.value())}; }

}  // namespace starpir
