#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "nomic/errors.hpp"

namespace nomic {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// A coefficient field: Z_p for a prime p, or the rationals. Value type,
// cheap to copy; modulus 0 encodes the rationals.
class Field {
 public:
  static Field prime(long long p);  // throws NotPrimeError
  static Field rationals() { return Field(0); }

  bool is_prime_field() const { return p_ != 0; }
  long long modulus() const;

  // "Z2", "Z3", ..., "Q". parse() accepts those names case-insensitively.
  std::string name() const;
  static std::optional<Field> parse(std::string_view s);

  bool operator==(const Field&) const = default;

 private:
  explicit Field(long long p) : p_(p) {}
  long long p_;
};

// One field element in canonical form: residue in [0, p) for prime fields,
// reduced fraction with positive denominator for the rationals.
class Scalar {
 public:
  Scalar() : field_(Field::rationals()) {}  // rational zero
  Scalar(const Field& f, long long value);  // reduces mod p / embeds into Q
  Scalar(const Field& f, const Rational& value);

  const Field& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  long long residue() const;      // prime fields only
  const Rational& rat() const;    // rationals only
  std::string str() const;        // "2", "-3/4"

  Scalar operator-() const;
  Scalar inverse() const;  // throws ValueError on zero

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }
  // Total order used only for canonical sorting of outputs.
  bool less(const Scalar& b) const;

 private:
  static void check_same_field(const Scalar& a, const Scalar& b);
  Field field_;
  long long res_ = 0;  // prime-field residue
  Rational rat_;       // rational value
};

}  // namespace nomic
