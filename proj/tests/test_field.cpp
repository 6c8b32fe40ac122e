#include <doctest.h>

#include "starpir/field.hpp"

using namespace starpir;

TEST_CASE("prime field construction accepts primes only") {
  CHECK_NOTHROW(FieldSpec(2));
  CHECK_NOTHROW(FieldSpec(5));
  CHECK_NOTHROW(FieldSpec(65537));
  CHECK_THROWS_AS(FieldSpec(0), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec(1), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec(4), InvalidArgument);
  CHECK_THROWS_AS(FieldSpec(91), InvalidArgument);  // 7 * 13
}

TEST_CASE("smallest_prime_at_least") {
  CHECK(smallest_prime_at_least(0) == 2);
  CHECK(smallest_prime_at_least(2) == 2);
  CHECK(smallest_prime_at_least(4) == 5);
  CHECK(smallest_prime_at_least(8) == 11);
  CHECK(smallest_prime_at_least(12) == 13);
  CHECK(smallest_prime_at_least(13) == 13);
  CHECK(smallest_prime_at_least(14) == 17);
}

TEST_CASE("element arithmetic in F_5 and F_2") {
  const FieldSpec f5(5);
  const FieldSpec f2(2);
  CHECK((FieldElement(f5, 4) + FieldElement(f5, 3)).value() == 2);
  CHECK((FieldElement(f2, 1) + FieldElement(f2, 1)).value() == 0);
  CHECK((FieldElement(f5, 4) * FieldElement(f5, 2)).value() == 3);
  CHECK(inv(FieldElement(f5, 2)).value() == 3);
  CHECK(inv(FieldElement(f5, 1)).value() == 1);
  CHECK(inv(FieldElement(f5, 4)).value() == 4);
  CHECK((-FieldElement(f5, 1)).value() == 4);
  CHECK((-FieldElement(f5, 0)).value() == 0);
  CHECK((-FieldElement(f2, 1)).value() == 1);

  for (std::uint64_t x = 0; x < 5; ++x) {
    CHECK((FieldElement(f5, 0) + FieldElement(f5, x)).value() == x);
    CHECK((FieldElement(f5, 1) * FieldElement(f5, x)).value() == x);
    CHECK((FieldElement(f5, 0) * FieldElement(f5, x)).value() == 0);
  }
}

TEST_CASE("operations across fields are rejected") {
  const FieldSpec f5(5);
  const FieldSpec f7(7);
  CHECK_THROWS_AS(FieldElement(f5, 1) + FieldElement(f7, 1), FieldMismatch);
  CHECK_THROWS_AS(FieldElement(f5, 1) * FieldElement(f7, 1), FieldMismatch);
  CHECK_THROWS_AS(FieldElement(f5, 2) / FieldElement(f7, 2), FieldMismatch);
}

TEST_CASE("zero has no inverse") {
  const FieldSpec f5(5);
  CHECK_THROWS_AS(inv(FieldElement(f5, 0)), DivisionByZero);
  CHECK_THROWS_AS(FieldElement(f5, 1) / FieldElement(f5, 0), DivisionByZero);
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    const FieldSpec f(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      // Fermat: a^p = a
      CHECK(f.pow(a, p) == a);
      if (a != 0) CHECK(f.inv(f.inv(a)) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      for (std::uint64_t b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (std::uint64_t c = 0; c < p; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("pow matches repeated multiplication") {
  const FieldSpec f(13);
  for (std::uint64_t base = 0; base < 13; ++base) {
    std::uint64_t acc = 1;
    for (std::uint64_t e = 0; e < 30; ++e) {
      CHECK(f.pow(base, e) == acc);
      acc = f.mul(acc, base);
    }
  }
}
