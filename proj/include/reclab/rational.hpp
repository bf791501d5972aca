#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace reclab {

/// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "p/q" or an integer. Decimal and exponent forms are rejected.
  static Rational parse(std::string_view text);
  /// Parses a terminating decimal such as "0.2401" exactly. Used only for
  /// constants that are written in decimal form.
  static Rational from_decimal(std::string_view text);

  std::string str() const;
  double to_double() const { return q_.get_d(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }
  const mpq_class& raw() const { return q_; }

  /// floor(this * 2^bits), clamped to [0, 2^bits].
  std::uint64_t scaled_floor(unsigned bits) const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);
Rational pow(const Rational& base, unsigned exponent);

}  // namespace reclab
