#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "inca/error.hpp"

namespace inca {

bool is_prime_number(std::uint32_t n);

/// Field descriptor: a prime field F_p (p prime, p < 2^16) or the rationals.
class Field {
public:
  static Field prime(std::uint32_t p);
  static Field rationals() { return Field(0); }

  bool is_prime_field() const { return p_ != 0; }
  bool is_rational() const { return p_ == 0; }
  std::uint32_t modulus() const;
  /// 0 for the rationals.
  std::uint32_t characteristic() const { return p_; }
  std::uint64_t order_or_zero() const { return p_; }
  std::string to_string() const;

  friend bool operator==(Field a, Field b) { return a.p_ == b.p_; }
  friend bool operator!=(Field a, Field b) { return a.p_ != b.p_; }

private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;  // 0 encodes Q
};

/// Exact field element in canonical form: residue in [0,p) for prime fields,
/// reduced fraction with positive denominator for the rationals. Equality is
/// representational.
class Scalar {
public:
  Scalar() : field_(Field::rationals()), value_(mpq_class(0)) {}

  static Scalar zero(Field f);
  static Scalar one(Field f);
  static Scalar of(Field f, long long n);
  static Scalar fraction(long long num, long long den);  // rationals
  /// Parses the grammar: integer | integer "/" positive-integer.
  static Scalar parse(Field f, std::string_view text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inverse() const;  // DivisionByZero on 0

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Total order within one field (residue order / rational order), used for
  /// canonical sorting only.
  friend bool operator<(const Scalar& a, const Scalar& b);

  std::uint32_t residue() const;  // prime fields only
  const mpq_class& rational() const;
  std::string to_string() const;

private:
  Scalar(Field f, std::uint32_t residue) : field_(f), value_(residue) {}
  Scalar(Field f, mpq_class q) : field_(f), value_(std::move(q)) {}

  Field field_;
  std::variant<std::uint32_t, mpq_class> value_;
};

/// All p elements of a prime field, 0 first then 1..p-1.
/// Throws InfiniteField for the rationals.
std::vector<Scalar> enumerate_field(Field f);

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p);

}  // namespace inca
