#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace walras {

// Exact rational quantity used for every value, price, payment and utility.
// Always kept in canonical (reduced, positive denominator) form.
class Money {
 public:
  Money() = default;
  Money(long v) : q_(v) {}  // NOLINT: implicit from integers is intended
  Money(int v) : q_(static_cast<long>(v)) {}  // NOLINT
  Money(long num, long den);
  explicit Money(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "3", "-2", "1.25", "3/4", "-7/8".
  static Money parse(std::string_view text);

  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_negative() const { return sgn(q_) < 0; }
  bool is_positive() const { return sgn(q_) > 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  // Decimal string when the expansion terminates, "num/den" otherwise.
  std::string to_string() const;
  // Always "num/den" (or "num" for integers).
  std::string to_fraction_string() const;
  double to_double() const { return q_.get_d(); }

  Money& operator+=(const Money& o) { q_ += o.q_; return *this; }
  Money& operator-=(const Money& o) { q_ -= o.q_; return *this; }
  Money& operator*=(const Money& o) { q_ *= o.q_; return *this; }
  Money& operator/=(const Money& o);

  friend Money operator+(Money a, const Money& b) { return a += b; }
  friend Money operator-(Money a, const Money& b) { return a -= b; }
  friend Money operator*(Money a, const Money& b) { return a *= b; }
  friend Money operator/(Money a, const Money& b) { return a /= b; }
  friend Money operator-(const Money& a) { return Money(mpq_class(-a.q_)); }

  friend bool operator==(const Money& a, const Money& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Money& a, const Money& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Money& m);

Money min(const Money& a, const Money& b);
Money max(const Money& a, const Money& b);
Money abs(const Money& a);

// Rational gcd: the largest g such that every input is an integer multiple of g.
// Zero inputs are ignored; returns 0 when all inputs are zero.
Money rational_gcd(const Money& a, const Money& b);

// A non-negative quantity that may be +infinity (exposure factors, ratios
// against a zero denominator).
class ExtendedMoney {
 public:
  ExtendedMoney() = default;
  ExtendedMoney(Money v) : value_(std::move(v)) {}  // NOLINT
  static ExtendedMoney infinity() {
    ExtendedMoney e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  // Precondition: !is_infinite().
  const Money& value() const;

  std::string to_string() const { return infinite_ ? "inf" : value_.to_string(); }

  friend bool operator==(const ExtendedMoney& a, const ExtendedMoney& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtendedMoney& a, const ExtendedMoney& b) {
    if (a.infinite_ || b.infinite_) {
      if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
      return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return a.value_ <=> b.value_;
  }

 private:
  Money value_;
  bool infinite_ = false;
};

}  // namespace walras
