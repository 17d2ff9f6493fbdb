#include "sagbisat/coeff.hpp"

#include "sagbisat/error.hpp"

namespace sagbisat {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 base, u64 e, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 reduce_mpz(const mpz_class& z, u64 p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

u64 inverse_mod(u64 a, u64 p) {
  // Extended Euclid on signed 128-bit to avoid overflow.
  __int128 old_r = static_cast<__int128>(a % p), r = static_cast<__int128>(p);
  __int128 old_s = 1, s = 0;
  if (old_r == 0) throw DivisionByZero("inverse of 0 mod " + std::to_string(p));
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  __int128 res = old_s % static_cast<__int128>(p);
  if (res < 0) res += p;
  return static_cast<u64>(res);
}

Field Field::prime(u64 p) {
  if (p >= (1ULL << 63) || !is_prime(p)) {
    throw InvalidArgument("field characteristic " + std::to_string(p) + " is not a prime below 2^63");
  }
  return Field(Kind::Prime, p);
}

std::string Field::name() const {
  return kind_ == Kind::Rational ? std::string("QQ") : "ZZ/" + std::to_string(p_);
}

FieldElement::FieldElement(const Field& field, long value) {
  if (field.is_rational()) {
    rep_ = mpq_class(value);
  } else {
    const u64 p = field.characteristic();
    long m = value % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    rep_ = Residue{static_cast<u64>(m), p};
  }
}

FieldElement::FieldElement(const Field& field, const mpq_class& value) {
  if (field.is_rational()) {
    mpq_class v = value;
    v.canonicalize();
    rep_ = std::move(v);
  } else {
    const u64 p = field.characteristic();
    const u64 num = reduce_mpz(value.get_num(), p);
    const u64 den = reduce_mpz(value.get_den(), p);
    if (den == 0) throw DivisionByZero("denominator divisible by " + std::to_string(p));
    rep_ = Residue{mul_mod(num, inverse_mod(den, p), p), p};
  }
}

FieldElement FieldElement::parse(const Field& f, std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("bad coefficient literal '" + s + "'");
  if (q.get_den() == 0) throw DivisionByZero("literal '" + s + "' has zero denominator");
  q.canonicalize();
  return FieldElement(f, q);
}

Field FieldElement::field() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return Field(Field::Kind::Prime, r->modulus);
  return Field::rationals();
}

bool FieldElement::is_zero() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value == 0;
  return sgn(std::get<mpq_class>(rep_)) == 0;
}

bool FieldElement::is_one() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value == 1;
  return std::get<mpq_class>(rep_) == 1;
}

bool FieldElement::is_negative() const {
  if (auto* q = std::get_if<mpq_class>(&rep_)) return sgn(*q) < 0;
  return false;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  FieldElement out = *this;
  if (auto* r = std::get_if<Residue>(&out.rep_)) {
    r->value = inverse_mod(r->value, r->modulus);
  } else {
    auto& q = std::get<mpq_class>(out.rep_);
    q = 1 / q;
  }
  return out;
}

FieldElement FieldElement::pow(unsigned long e) const {
  FieldElement result = one(field()), base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

namespace {

[[noreturn]] void mismatch() { throw FieldMismatch("arithmetic between elements of different fields"); }

}  // namespace

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (auto* r = std::get_if<Residue>(&rep_)) {
    auto* s = std::get_if<Residue>(&o.rep_);
    if (!s || s->modulus != r->modulus) mismatch();
    u64 v = r->value + s->value;
    if (v >= r->modulus) v -= r->modulus;
    r->value = v;
  } else {
    auto* s = std::get_if<mpq_class>(&o.rep_);
    if (!s) mismatch();
    std::get<mpq_class>(rep_) += *s;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  if (auto* r = std::get_if<Residue>(&rep_)) {
    auto* s = std::get_if<Residue>(&o.rep_);
    if (!s || s->modulus != r->modulus) mismatch();
    r->value = r->value >= s->value ? r->value - s->value : r->value + (r->modulus - s->value);
  } else {
    auto* s = std::get_if<mpq_class>(&o.rep_);
    if (!s) mismatch();
    std::get<mpq_class>(rep_) -= *s;
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (auto* r = std::get_if<Residue>(&rep_)) {
    auto* s = std::get_if<Residue>(&o.rep_);
    if (!s || s->modulus != r->modulus) mismatch();
    r->value = mul_mod(r->value, s->value, r->modulus);
  } else {
    auto* s = std::get_if<mpq_class>(&o.rep_);
    if (!s) mismatch();
    std::get<mpq_class>(rep_) *= *s;
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  if (auto* r = std::get_if<Residue>(&out.rep_)) {
    if (r->value != 0) r->value = r->modulus - r->value;
  } else {
    auto& q = std::get<mpq_class>(out.rep_);
    q = -q;
  }
  return out;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (a.rep_.index() != b.rep_.index()) mismatch();
  if (auto* r = std::get_if<Residue>(&a.rep_)) {
    const auto& s = std::get<Residue>(b.rep_);
    if (r->modulus != s.modulus) mismatch();
    return r->value == s.value;
  }
  return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

const mpq_class& FieldElement::rational() const {
  if (auto* q = std::get_if<mpq_class>(&rep_)) return *q;
  throw FieldMismatch("rational() on a residue");
}

u64 FieldElement::residue() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return r->value;
  throw FieldMismatch("residue() on a rational");
}

std::string FieldElement::to_string() const {
  if (auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->value);
  return std::get<mpq_class>(rep_).get_str();
}

FieldElement inv_factorial(unsigned i, const Field& field) {
  if (!field.is_rational() && i >= field.characteristic()) {
    throw DividedPowerUndefined(std::to_string(i) + "! is zero in " + field.name());
  }
  FieldElement fact = FieldElement::one(field);
  for (unsigned k = 2; k <= i; ++k) fact *= FieldElement(field, static_cast<long>(k));
  return fact.inverse();
}

}  // namespace sagbisat
