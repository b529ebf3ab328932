#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <utility>

#include "linerdv/errors.hpp"

namespace linerdv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Floor division; `den` must be positive.
BigInt floor_div(const BigInt& num, const BigInt& den);

// Greatest integer <= v.
BigInt floor_rational(const Rational& v);

// An exact element a + b*sqrt(5) of the quadratic field Q(sqrt5).
// Rationals embed as b == 0. Values are immutable; every operator
// returns a fresh value. Ordering is real-number order, decided
// exactly (no floating point is ever consulted).
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long value) : a_(value) {}  // NOLINT: implicit for literals
  Scalar(const Rational& a) : a_(a) {}    // NOLINT: rationals embed
  Scalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Scalar sqrt5() { return Scalar(Rational(0), Rational(1)); }
  static Scalar phi() { return Scalar(Rational(1, 2), Rational(1, 2)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  bool is_integer() const {
    return b_.is_zero() && denominator(a_) == 1;
  }
  // Pre: is_integer().
  BigInt integer_value() const;

  int sign() const;

  Scalar operator-() const { return Scalar(-a_, -b_); }
  Scalar operator+(const Scalar& o) const { return Scalar(a_ + o.a_, b_ + o.b_); }
  Scalar operator-(const Scalar& o) const { return Scalar(a_ - o.a_, b_ - o.b_); }
  Scalar operator*(const Scalar& o) const {
    return Scalar(a_ * o.a_ + 5 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
  }
  Scalar operator/(const Scalar& o) const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const Scalar& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const Scalar& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const Scalar& o) const { return (*this - o).sign() >= 0; }

  // Canonical text form: INT, INT/INT, with an optional "+(INT/INT)*r5"
  // term. Examples: "3/2", "-2+(1/1)*r5".
  std::string str() const;

  // Decimal approximation with `sig` significant digits, rounded to
  // nearest. Advisory rendering only; no comparison uses it.
  std::string decimal(int sig = 12) const;

 private:
  Rational a_;
  Rational b_;
};

inline int sign(const Scalar& v) { return v.sign(); }
Scalar abs(const Scalar& v);

// Greatest integer <= v, exact for irrational values too.
BigInt floor_scalar(const Scalar& v);

// Parses the canonical grammar (whitespace-free). Throws ParseError with
// the offending byte position.
Scalar parse_scalar(std::string_view text);

inline std::string format_scalar(const Scalar& v) { return v.str(); }

inline Scalar phi() { return Scalar::phi(); }

}  // namespace linerdv
