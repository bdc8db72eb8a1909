#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "inca/rng.hpp"
#include "inca/scalar.hpp"

using namespace inca;

TEST_CASE("prime field construction checks primality and size") {
  CHECK_NOTHROW(Field::prime(2));
  CHECK_NOTHROW(Field::prime(65521));  // largest prime below 2^16
  CHECK_THROWS_AS(Field::prime(1), Error);
  CHECK_THROWS_AS(Field::prime(4), Error);
  CHECK_THROWS_AS(Field::prime(65536), Error);
  CHECK_THROWS_AS(Field::prime(65535), Error);
}

TEST_CASE("arithmetic examples") {
  auto f3 = Field::prime(3);
  CHECK(Scalar::of(f3, 2).inverse() == Scalar::of(f3, 2));  // 2*2 = 4 = 1 mod 3

  CHECK(Scalar::fraction(1, 2) + Scalar::fraction(1, 3) == Scalar::fraction(5, 6));

  auto f2 = Field::prime(2);
  CHECK(-Scalar::of(f2, 1) == Scalar::of(f2, 1));

  auto f5 = Field::prime(5);
  CHECK(Scalar::of(f5, 2) * Scalar::of(f5, 3) == Scalar::one(f5));
  CHECK(Scalar::of(f5, 2) / Scalar::of(f5, 3) == Scalar::of(f5, 4));
}

TEST_CASE("errors: mixed fields and division by zero") {
  auto f2 = Field::prime(2);
  auto f3 = Field::prime(3);
  CHECK_THROWS_AS(Scalar::of(f2, 1) + Scalar::of(f3, 1), Error);
  CHECK_THROWS_AS(Scalar::of(f3, 1) / Scalar::zero(f3), Error);
  CHECK_THROWS_AS(Scalar::zero(Field::rationals()).inverse(), Error);
  try {
    Scalar::of(f2, 1) * Scalar::fraction(1, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MixedFields);
  }
}

TEST_CASE("enumerate_field") {
  auto f2 = Field::prime(2);
  auto e2 = enumerate_field(f2);
  REQUIRE(e2.size() == 2);
  CHECK(e2[0] == Scalar::zero(f2));
  CHECK(e2[1] == Scalar::one(f2));

  auto e3 = enumerate_field(Field::prime(3));
  REQUIRE(e3.size() == 3);
  CHECK(e3[0].residue() == 0);
  CHECK(e3[1].residue() == 1);
  CHECK(e3[2].residue() == 2);

  CHECK_THROWS_AS(enumerate_field(Field::rationals()), Error);

  auto e7 = enumerate_field(Field::prime(7));
  for (std::size_t i = 0; i < e7.size(); ++i)
    for (std::size_t j = i + 1; j < e7.size(); ++j) CHECK(e7[i] != e7[j]);
}

TEST_CASE("canonical string forms") {
  CHECK(Scalar::fraction(-6, 14).to_string() == "-3/7");
  CHECK(Scalar::fraction(4, 2).to_string() == "2");
  CHECK(Scalar::fraction(0, 5).to_string() == "0");
  CHECK(Scalar::of(Field::prime(5), -3).to_string() == "2");

  auto q = Field::rationals();
  CHECK(Scalar::parse(q, "-3/7") == Scalar::fraction(-3, 7));
  CHECK(Scalar::parse(q, "10/4") == Scalar::fraction(5, 2));
  CHECK(Scalar::parse(Field::prime(5), "7") == Scalar::of(Field::prime(5), 2));
  CHECK_THROWS_AS(Scalar::parse(q, "1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse(q, "x"), Error);
  CHECK_THROWS_AS(Scalar::parse(q, "1/-2"), Error);
  CHECK_THROWS_AS(Scalar::parse(q, ""), Error);
}

namespace {

Scalar random_scalar(Field f, Rng& rng) {
  if (f.is_prime_field()) return Scalar::of(f, static_cast<long long>(rng.below(f.modulus())));
  return Scalar::fraction(static_cast<long long>(rng.below(19)) - 9,
                          static_cast<long long>(rng.below(9)) + 1);
}

}  // namespace

TEST_CASE("field axioms on random triples, exact") {
  for (Field f : {Field::prime(2), Field::prime(5), Field::prime(65521), Field::rationals()}) {
    Rng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
      Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a + Scalar::zero(f) == a);
      CHECK(a * Scalar::one(f) == a);
      CHECK(a - a == Scalar::zero(f));
      if (!a.is_zero()) {
        CHECK(a * a.inverse() == Scalar::one(f));
        CHECK(a.inverse() * a == Scalar::one(f));
      }
    }
  }
}
