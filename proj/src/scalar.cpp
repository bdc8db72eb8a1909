#include "inca/scalar.hpp"

#include <cctype>

namespace inca {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MixedFields: return "MixedFields";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InfiniteField: return "InfiniteField";
    case Errc::DuplicateElement: return "DuplicateElement";
    case Errc::UnknownElement: return "UnknownElement";
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::NotComparable: return "NotComparable";
    case Errc::EmptyPoset: return "EmptyPoset";
    case Errc::WouldBeEmpty: return "WouldBeEmpty";
    case Errc::MixedAlgebras: return "MixedAlgebras";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::Singular: return "Singular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::CocycleViolation: return "CocycleViolation";
    case Errc::ZeroValue: return "ZeroValue";
    case Errc::TooLargeForExhaustive: return "TooLargeForExhaustive";
    case Errc::NotConnected: return "NotConnected";
    case Errc::NoPreserver: return "NoPreserver";
    case Errc::BadOptions: return "BadOptions";
    case Errc::NotAutomorphism: return "NotAutomorphism";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadFile: return "BadFile";
    case Errc::UsageError: return "UsageError";
  }
  return "UnknownError";
}

bool is_prime_number(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 16))
    fail(Errc::BadOptions, "prime modulus must be < 2^16, got " + std::to_string(p));
  if (!is_prime_number(p))
    fail(Errc::BadOptions, std::to_string(p) + " is not prime");
  return Field(p);
}

std::uint32_t Field::modulus() const {
  if (!is_prime_field()) fail(Errc::InfiniteField, "the rationals have no modulus");
  return p_;
}

std::string Field::to_string() const {
  return is_rational() ? "Q" : "F_" + std::to_string(p_);
}

std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  // extended Euclid on (a, p), p prime
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) fail(Errc::DivisionByZero, "no inverse of " + std::to_string(a));
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Scalar Scalar::zero(Field f) {
  return f.is_prime_field() ? Scalar(f, 0u) : Scalar(f, mpq_class(0));
}

Scalar Scalar::one(Field f) {
  return f.is_prime_field() ? Scalar(f, 1u % f.modulus()) : Scalar(f, mpq_class(1));
}

Scalar Scalar::of(Field f, long long n) {
  if (f.is_rational()) return Scalar(f, mpq_class(static_cast<long>(n)));
  std::int64_t p = f.modulus();
  std::int64_t r = n % p;
  if (r < 0) r += p;
  return Scalar(f, static_cast<std::uint32_t>(r));
}

Scalar Scalar::fraction(long long num, long long den) {
  if (den == 0) fail(Errc::DivisionByZero, "fraction with zero denominator");
  mpq_class q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return Scalar(Field::rationals(), q);
}

Scalar Scalar::parse(Field f, std::string_view text) {
  auto bad = [&] { fail(Errc::BadFile, "bad scalar literal '" + std::string(text) + "'"); };
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == num_begin) bad();
  std::string num(text.substr(0, i));
  std::string den = "1";
  if (i < text.size()) {
    if (text[i] != '/') bad();
    ++i;
    std::size_t den_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) bad();
    den = std::string(text.substr(den_begin));
  }
  mpz_class n(num), d(den);
  if (d == 0) fail(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  if (f.is_rational()) {
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(f, q);
  }
  std::uint32_t p = f.modulus();
  mpz_class nm = n % p, dm = d % p;
  std::uint32_t nr = static_cast<std::uint32_t>(nm.get_si() < 0 ? nm.get_si() + p : nm.get_si());
  std::uint32_t dr = static_cast<std::uint32_t>(dm.get_si() < 0 ? dm.get_si() + p : dm.get_si());
  if (dr == 0) fail(Errc::DivisionByZero, "denominator vanishes mod " + std::to_string(p));
  return Scalar(f, static_cast<std::uint32_t>(std::uint64_t(nr) * mod_inverse(dr, p) % p));
}

bool Scalar::is_zero() const {
  if (field_.is_prime_field()) return std::get<std::uint32_t>(value_) == 0;
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_prime_field())
    return std::get<std::uint32_t>(value_) == 1u % field_.modulus();
  return std::get<mpq_class>(value_) == 1;
}

std::uint32_t Scalar::residue() const {
  if (!field_.is_prime_field()) fail(Errc::MixedFields, "residue() on a rational scalar");
  return std::get<std::uint32_t>(value_);
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rational()) fail(Errc::MixedFields, "rational() on a prime-field scalar");
  return std::get<mpq_class>(value_);
}

namespace {
void require_same_field(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field())
    fail(Errc::MixedFields,
         a.field().to_string() + " vs " + b.field().to_string());
}
}  // namespace

Scalar Scalar::operator-() const {
  if (field_.is_prime_field()) {
    std::uint32_t p = field_.modulus();
    std::uint32_t r = std::get<std::uint32_t>(value_);
    return Scalar(field_, r == 0 ? 0 : p - r);
  }
  return Scalar(field_, mpq_class(-std::get<mpq_class>(value_)));
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero");
  if (field_.is_prime_field())
    return Scalar(field_, mod_inverse(std::get<std::uint32_t>(value_), field_.modulus()));
  return Scalar(field_, mpq_class(1) / std::get<mpq_class>(value_));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) {
    std::uint32_t p = a.field_.modulus();
    return Scalar(a.field_, (a.residue() + b.residue()) % p);
  }
  return Scalar(a.field_, mpq_class(a.rational() + b.rational()));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) {
    std::uint32_t p = a.field_.modulus();
    return Scalar(a.field_, (a.residue() + p - b.residue()) % p);
  }
  return Scalar(a.field_, mpq_class(a.rational() - b.rational()));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) {
    std::uint32_t p = a.field_.modulus();
    return Scalar(a.field_, static_cast<std::uint32_t>(
                                std::uint64_t(a.residue()) * b.residue() % p));
  }
  return Scalar(a.field_, mpq_class(a.rational() * b.rational()));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (a.field_.is_prime_field()) return a.residue() == b.residue();
  return a.rational() == b.rational();
}

bool operator<(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field_.is_prime_field()) return a.residue() < b.residue();
  return a.rational() < b.rational();
}

std::string Scalar::to_string() const {
  if (field_.is_prime_field()) return std::to_string(std::get<std::uint32_t>(value_));
  return std::get<mpq_class>(value_).get_str();
}

std::vector<Scalar> enumerate_field(Field f) {
  if (f.is_rational()) fail(Errc::InfiniteField, "cannot enumerate the rationals");
  std::vector<Scalar> out;
  out.reserve(f.modulus());
  for (std::uint32_t r = 0; r < f.modulus(); ++r) out.push_back(Scalar::of(f, r));
  return out;
}

}  // namespace inca
