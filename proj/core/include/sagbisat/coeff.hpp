#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace sagbisat {

/// Coefficient field: the rationals or a prime field Z/p with p < 2^63.
class Field {
 public:
  enum class Kind { Rational, Prime };

  static Field rationals() { return Field(Kind::Rational, 0); }
  /// Throws InvalidArgument unless p is a prime below 2^63.
  static Field prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  std::uint64_t characteristic() const { return p_; }

  /// "QQ" or "ZZ/p".
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class FieldElement;
  Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// Residue class modulo p, stored in [0, p).
struct Residue {
  std::uint64_t value;
  std::uint64_t modulus;
  friend bool operator==(const Residue&, const Residue&) = default;
};

/// An exact element of a Field. Rationals are kept reduced with a positive
/// denominator; mixing elements of different fields throws FieldMismatch.
class FieldElement {
 public:
  FieldElement() : rep_(mpq_class(0)) {}
  FieldElement(const Field& field, long value);
  FieldElement(const Field& field, const mpq_class& value);

  static FieldElement zero(const Field& f) { return FieldElement(f, 0L); }
  static FieldElement one(const Field& f) { return FieldElement(f, 1L); }

  /// Parses an integer or `p/q` literal into the given field.
  static FieldElement parse(const Field& f, std::string_view text);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;
  /// True for a rational with negative value; residues are never negative.
  bool is_negative() const;

  FieldElement inverse() const;
  FieldElement pow(unsigned long e) const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement operator-() const;

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Rational value (QQ only).
  const mpq_class& rational() const;
  /// Residue value (Z/p only).
  std::uint64_t residue() const;

  std::string to_string() const;

 private:
  std::variant<mpq_class, Residue> rep_;
};

/// (i!)^{-1} in the field; over Z/p requires i < p.
FieldElement inv_factorial(unsigned i, const Field& field);

/// Inverse of a modulo the prime p (extended Euclid).
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);

}  // namespace sagbisat
