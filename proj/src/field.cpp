#include "nomic/field.hpp"

#include <cctype>

namespace nomic {

namespace {
bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace

Field Field::prime(long long p) {
  // Residue products must fit in long long; desk-scale moduli only.
  if (!is_prime(p) || p > 1'000'000) throw NotPrimeError(p);
  return Field(p);
}

long long Field::modulus() const {
  if (!is_prime_field()) throw ValueError("the rationals have no modulus");
  return p_;
}

std::string Field::name() const {
  return is_prime_field() ? "Z" + std::to_string(p_) : "Q";
}

std::optional<Field> Field::parse(std::string_view s) {
  std::string up;
  for (char c : s) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "Q") return rationals();
  if (up.size() >= 2 && up[0] == 'Z') {
    long long p = 0;
    for (std::size_t i = 1; i < up.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(up[i]))) return std::nullopt;
      p = p * 10 + (up[i] - '0');
      if (p > 1'000'000) return std::nullopt;
    }
    if (!is_prime(p)) return std::nullopt;
    return prime(p);
  }
  return std::nullopt;
}

Scalar::Scalar(const Field& f, long long value) : field_(f) {
  if (f.is_prime_field()) {
    long long p = f.modulus();
    res_ = ((value % p) + p) % p;
  } else {
    rat_ = value;
  }
}

Scalar::Scalar(const Field& f, const Rational& value) : field_(f) {
  if (f.is_prime_field()) {
    // A rational embeds into Z_p only when its denominator is a unit.
    long long p = f.modulus();
    BigInt num = numerator(value) % p;
    BigInt den = denominator(value) % p;
    if (den == 0) throw ValueError("denominator not invertible mod " + std::to_string(p));
    Scalar n(f, num.convert_to<long long>());
    Scalar d(f, den.convert_to<long long>());
    res_ = (n * d.inverse()).res_;
  } else {
    rat_ = value;
  }
}

bool Scalar::is_zero() const { return field_.is_prime_field() ? res_ == 0 : rat_ == 0; }
bool Scalar::is_one() const { return field_.is_prime_field() ? res_ == 1 : rat_ == 1; }

long long Scalar::residue() const {
  if (!field_.is_prime_field()) throw ValueError("residue() on a rational scalar");
  return res_;
}

const Rational& Scalar::rat() const {
  if (field_.is_prime_field()) throw ValueError("rat() on a prime-field scalar");
  return rat_;
}

std::string Scalar::str() const {
  if (field_.is_prime_field()) return std::to_string(res_);
  if (denominator(rat_) == 1) return numerator(rat_).str();
  return numerator(rat_).str() + "/" + denominator(rat_).str();
}

void Scalar::check_same_field(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_))
    throw FieldMismatchError("scalar fields differ: " + a.field_.name() + " vs " + b.field_.name());
}

Scalar Scalar::operator-() const {
  if (field_.is_prime_field()) return Scalar(field_, -res_);
  return Scalar(field_, Rational(-rat_));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ValueError("zero has no inverse");
  if (!field_.is_prime_field()) return Scalar(field_, Rational(1) / rat_);
  // Fermat: res^(p-2) mod p.
  long long p = field_.modulus();
  long long base = res_, e = p - 2, acc = 1;
  while (e > 0) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return Scalar(field_, acc);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar::check_same_field(a, b);
  if (a.field_.is_prime_field()) return Scalar(a.field_, a.res_ + b.res_);
  return Scalar(a.field_, Rational(a.rat_ + b.rat_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar::check_same_field(a, b);
  if (a.field_.is_prime_field()) return Scalar(a.field_, a.res_ - b.res_);
  return Scalar(a.field_, Rational(a.rat_ - b.rat_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar::check_same_field(a, b);
  if (a.field_.is_prime_field()) return Scalar(a.field_, a.res_ * b.res_);
  return Scalar(a.field_, Rational(a.rat_ * b.rat_));
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool Scalar::operator==(const Scalar& b) const {
  check_same_field(*this, b);
  return field_.is_prime_field() ? res_ == b.res_ : rat_ == b.rat_;
}

bool Scalar::less(const Scalar& b) const {
  check_same_field(*this, b);
  return field_.is_prime_field() ? res_ < b.res_ : rat_ < b.rat_;
}

}  // namespace nomic
