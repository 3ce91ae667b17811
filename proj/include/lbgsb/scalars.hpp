#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lbgsb {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct FieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

class FieldElement;

// A field is identified by its characteristic: 0 for the rationals, p for GF(p).
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }

  static Field prime(std::uint64_t p) {
    if (!is_prime(p)) throw FieldError("not a prime modulus: " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 62)) throw FieldError("modulus too large");
    Field f;
    f.p_ = p;
    return f;
  }

  static Field of_characteristic(std::uint64_t c) { return c == 0 ? rationals() : prime(c); }

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long long v) const;
  FieldElement from_integer(const Integer& v) const;
  FieldElement from_rational(const Rational& v) const;
  FieldElement parse(std::string_view text) const;

  std::string name() const { return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")"; }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint64_t p_ = 0;
};

inline std::uint64_t characteristic(const Field& f) { return f.characteristic(); }

class FieldElement {
 public:
  FieldElement() = default;

  const Field& field() const { return field_; }
  bool is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  // Rational value; for GF(p) the representative in [0, p).
  Rational rational() const { return field_.is_rational() ? q_ : Rational(r_); }
  std::uint64_t residue() const { return r_; }

  // True when the printed form carries a leading minus sign.
  bool is_negative() const { return field_.is_rational() && q_ < 0; }

  std::string to_string() const {
    if (!field_.is_rational()) return std::to_string(r_);
    if (denominator(q_) == 1) return numerator(q_).str();
    return numerator(q_).str() + "/" + denominator(q_).str();
  }

  FieldElement operator-() const {
    FieldElement out = *this;
    if (field_.is_rational())
      out.q_ = -q_;
    else
      out.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
    return out;
  }

  FieldElement& operator+=(const FieldElement& o) {
    check(o);
    if (field_.is_rational()) {
      q_ += o.q_;
    } else {
      std::uint64_t p = field_.characteristic();
      r_ = (r_ + o.r_) % p;
    }
    return *this;
  }

  FieldElement& operator-=(const FieldElement& o) { return *this += -o; }

  FieldElement& operator*=(const FieldElement& o) {
    check(o);
    if (field_.is_rational()) {
      q_ *= o.q_;
    } else {
      unsigned __int128 t = static_cast<unsigned __int128>(r_) * o.r_;
      r_ = static_cast<std::uint64_t>(t % field_.characteristic());
    }
    return *this;
  }

  FieldElement inverse() const {
    if (is_zero()) throw FieldError("inversion of zero");
    FieldElement out = *this;
    if (field_.is_rational()) {
      out.q_ = 1 / q_;
    } else {
      out.r_ = pow_mod(r_, field_.characteristic() - 2, field_.characteristic());
    }
    return out;
  }

  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && (a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_);
  }

 private:
  friend class Field;

  void check(const FieldElement& o) const {
    if (!(field_ == o.field_))
      throw FieldError("field mismatch: " + field_.name() + " vs " + o.field_.name());
  }

  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, x = b % m;
    while (e) {
      if (e & 1) r = r * x % m;
      x = x * x % m;
      e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
  }

  Field field_;
  Rational q_;
  std::uint64_t r_ = 0;
};

inline FieldElement field_add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement field_mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement field_neg(const FieldElement& a) { return -a; }
inline FieldElement field_inv(const FieldElement& a) { return a.inverse(); }

inline FieldElement Field::zero() const { return from_int(0); }
inline FieldElement Field::one() const { return from_int(1); }

inline FieldElement Field::from_int(long long v) const { return from_integer(Integer(v)); }

inline FieldElement Field::from_integer(const Integer& v) const {
  FieldElement e;
  e.field_ = *this;
  if (p_ == 0) {
    e.q_ = Rational(v);
  } else {
    Integer m = v % p_;
    if (m < 0) m += p_;
    e.r_ = static_cast<std::uint64_t>(m);
  }
  return e;
}

inline FieldElement Field::from_rational(const Rational& v) const {
  if (p_ == 0) {
    FieldElement e;
    e.field_ = *this;
    e.q_ = v;
    return e;
  }
  FieldElement num = from_integer(numerator(v));
  FieldElement den = from_integer(denominator(v));
  if (den.is_zero()) throw FieldError("denominator divisible by the characteristic");
  return num / den;
}

// Accepts "5", "-3/2", "+7"; in GF(p) integers are reduced mod p.
inline FieldElement Field::parse(std::string_view text) const {
  std::string s(text);
  auto bad = [&] { return FieldError("malformed coefficient '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto integer = [&](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) throw bad();
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') throw bad();
    Integer v(t.substr(i));
    return t[0] == '-' ? Integer(-v) : v;
  };
  if (slash == std::string::npos) return from_integer(integer(s));
  Integer n = integer(s.substr(0, slash));
  std::string d = s.substr(slash + 1);
  if (d.empty() || d[0] == '-' || d[0] == '+') throw bad();
  Integer den = integer(d);
  if (den == 0) throw FieldError("zero denominator in '" + s + "'");
  return from_rational(Rational(n, den));
}

}  // namespace lbgsb
