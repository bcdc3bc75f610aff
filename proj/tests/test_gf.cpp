#include <cstdint>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "gf.hpp"

using batchcode::Elem;
using batchcode::Errc;
using batchcode::Error;
using batchcode::Field;

namespace {

// Reference arithmetic, deliberately independent of the library's
// table-driven path: schoolbook polynomial product followed by long division
// by the (monic) modulus.  Element codes use base-p digits, constant term
// first, exactly as the library defines them.
std::vector<uint32_t> ref_digits(uint32_t code, uint32_t p, uint32_t len) {
  std::vector<uint32_t> d(len, 0);
  for (uint32_t i = 0; i < len; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

uint32_t ref_code(const std::vector<uint32_t>& d, uint32_t p) {
  uint32_t code = 0;
  for (size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

uint32_t ref_mul(uint32_t p, const std::vector<uint32_t>& modulus, uint32_t a, uint32_t b) {
  uint32_t deg = static_cast<uint32_t>(modulus.size()) - 1;
  std::vector<uint32_t> da = ref_digits(a, p, deg), db = ref_digits(b, p, deg);
  std::vector<uint32_t> prod(2 * deg - 1, 0);
  for (uint32_t i = 0; i < deg; ++i)
    for (uint32_t j = 0; j < deg; ++j)
      prod[i + j] = static_cast<uint32_t>((prod[i + j] + static_cast<uint64_t>(da[i]) * db[j]) % p);
  for (uint32_t i = static_cast<uint32_t>(prod.size()); i-- > deg;) {
    uint32_t c = prod[i];
    if (c == 0) continue;
    for (uint32_t j = 0; j <= deg; ++j) {
      uint32_t sub = static_cast<uint32_t>(static_cast<uint64_t>(c) * modulus[j] % p);
      prod[i - deg + j] = (prod[i - deg + j] + p - sub) % p;
    }
  }
  prod.resize(deg);
  return ref_code(prod, p);
}

bool ref_is_prime_power(uint32_t x) {
  if (x < 2) return false;
  for (uint32_t p = 2; static_cast<uint64_t>(p) * p <= x; ++p) {
    if (x % p != 0) continue;
    // p is the smallest factor of x, hence prime; x must be a pure power of it
    uint64_t v = p;
    while (v < x) v *= p;
    return v == x;
  }
  return true;  // no factor up to sqrt(x): x is prime
}

template <typename Fn>
Errc thrown_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvalidParams;
}

}  // namespace

TEST_CASE("gf: prime power detection matches trial factorization") {
  for (uint32_t x = 0; x <= 2000; ++x) {
    CAPTURE(x);
    CHECK(batchcode::is_prime_power(x) == ref_is_prime_power(x));
  }
  uint32_t p = 0, deg = 0;
  REQUIRE(batchcode::is_prime_power(27, &p, &deg));
  CHECK(p == 3);
  CHECK(deg == 3);
  REQUIRE(batchcode::is_prime_power(1024, &p, &deg));
  CHECK(p == 2);
  CHECK(deg == 10);
  CHECK_FALSE(batchcode::is_prime_power(1));
  CHECK_FALSE(batchcode::is_prime_power(12));
}

TEST_CASE("gf: canonical moduli and generators are the frozen values") {
  struct Expect {
    uint32_t q;
    std::vector<uint32_t> modulus;  // low-to-high, monic
    Elem alpha;
  };
  // Values fixed by hand from the canonical-representation rule: the modulus
  // is the lexicographically smallest monic irreducible (coefficients
  // compared constant-term first), alpha the smallest code of order q-1.
  const std::vector<Expect> table = {
      {2, {0, 1}, 1},          {3, {0, 1}, 2},           {5, {0, 1}, 2},
      {7, {0, 1}, 3},          {4, {1, 1, 1}, 2},        {8, {1, 0, 1, 1}, 2},
      {9, {1, 0, 1}, 4},       {16, {1, 0, 0, 1, 1}, 2},
  };
  for (const Expect& e : table) {
    CAPTURE(e.q);
    Field f(e.q);
    CHECK(f.modulus() == e.modulus);
    CHECK(f.alpha() == e.alpha);
  }
}

TEST_CASE("gf: frozen products in GF(4), GF(8), GF(9)") {
  Field f4(4);
  CHECK(f4.mul(2, 2) == 3);  // x * x = x + 1
  CHECK(f4.mul(2, 3) == 1);  // x * (x+1) = x^2 + x = 1
  CHECK(f4.inv(2) == 3);
  CHECK(f4.inv(3) == 2);

  Field f8(8);
  CHECK(f8.mul(2, 2) == 4);  // x * x = x^2
  CHECK(f8.mul(4, 4) == 7);  // x^4 = x^2 + x + 1 under x^3 = x^2 + 1
  CHECK(f8.mul(2, 4) == 5);  // x^3 = x^2 + 1

  Field f9(9);
  CHECK(f9.mul(3, 3) == 2);  // x^2 = -1 = 2 under x^2 + 1
  CHECK(f9.mul(4, 6) == 7);  // (1+x)(2x) = 2x^2 + 2x = 1 + 2x
  CHECK(f9.pow(4, 2) == 6);  // (1+x)^2 = 2x
}

TEST_CASE("gf: multiplication agrees with reference polynomial arithmetic") {
  for (uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u}) {
    CAPTURE(q);
    Field f(q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) {
        CAPTURE(a);
        CAPTURE(b);
        CHECK(f.mul(a, b) == ref_mul(f.p(), f.modulus(), a, b));
      }
  }
}

TEST_CASE("gf: field axioms hold exhaustively for small q") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    CAPTURE(q);
    Field f(q);
    for (Elem a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      CHECK(f.sub(a, a) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.sub(a, b) == f.add(a, f.neg(b)));
        for (Elem c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("gf: powers, orders and the Frobenius map") {
  for (uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u, 49u, 64u}) {
    CAPTURE(q);
    Field f(q);
    CHECK(f.element_order(f.alpha()) == q - 1);
    CHECK(f.pow(0, 0) == 1);
    for (Elem a = 1; a < q; ++a) {
      CHECK((q - 1) % f.element_order(a) == 0);
      CHECK(f.pow(a, static_cast<int64_t>(q) - 1) == 1);
      CHECK(f.pow(a, -1) == f.inv(a));
      CHECK(f.mul(f.pow(a, 5), f.pow(a, -5)) == 1);
    }
    // (a + b)^p = a^p + b^p in characteristic p
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b)
        CHECK(f.pow(f.add(a, b), f.p()) == f.add(f.pow(a, f.p()), f.pow(b, f.p())));
  }
}

TEST_CASE("gf: error paths carry the right codes") {
  CHECK(thrown_code([] { Field f(6); }) == Errc::NotPrimePower);
  CHECK(thrown_code([] { Field f(0); }) == Errc::NotPrimePower);
  CHECK(thrown_code([] { Field f(1); }) == Errc::NotPrimePower);
  Field f(9);
  CHECK(thrown_code([&] { f.inv(0); }) == Errc::DivisionByZero);
  CHECK(thrown_code([&] { f.pow(0, -2); }) == Errc::DivisionByZero);
  CHECK(thrown_code([&] { f.add(9, 0); }) == Errc::IndexOutOfRange);
  CHECK(thrown_code([&] { f.mul(1, 100); }) == Errc::IndexOutOfRange);
  CHECK(thrown_code([&] { f.element_order(0); }) == Errc::DivisionByZero);
}
