#include "linerdv/exactnum.hpp"

#include <cctype>
#include <cstddef>

namespace linerdv {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw InternalError("floor_div requires a positive denominator");
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

BigInt floor_rational(const Rational& v) {
  return floor_div(numerator(v), denominator(v));
}

BigInt Scalar::integer_value() const {
  if (!is_integer()) throw PreconditionError("scalar is not an integer: " + str());
  return numerator(a_);
}

int Scalar::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the term with the larger square dominates.
  const Rational a2 = a_ * a_;
  const Rational b25 = 5 * b_ * b_;
  if (a2 > b25) return sa;
  if (a2 < b25) return sb;
  // a^2 = 5 b^2 with both nonzero would make sqrt5 rational.
  throw InternalError("impossible equality a^2 = 5 b^2");
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw PreconditionError("division by zero scalar");
  // Multiply by the conjugate: 1/(a + b*sqrt5) = (a - b*sqrt5)/(a^2 - 5 b^2).
  const Rational norm = o.a_ * o.a_ - 5 * o.b_ * o.b_;
  if (norm.is_zero()) throw InternalError("zero field norm for nonzero scalar");
  return Scalar((a_ * o.a_ - 5 * b_ * o.b_) / norm,
                (b_ * o.a_ - a_ * o.b_) / norm);
}

Scalar abs(const Scalar& v) { return v.sign() < 0 ? -v : v; }

std::string Scalar::str() const {
  std::string out = numerator(a_).str();
  if (denominator(a_) != 1) out += "/" + denominator(a_).str();
  if (!b_.is_zero()) {
    out += "+(" + numerator(b_).str() + "/" + denominator(b_).str() + ")*r5";
  }
  return out;
}

BigInt floor_scalar(const Scalar& v) {
  if (v.b().is_zero()) return floor_rational(v.a());
  // Write v = (P + Q*sqrt5) / R with integer P, Q and positive R.
  const BigInt pa = numerator(v.a()), qa = denominator(v.a());
  const BigInt pb = numerator(v.b()), qb = denominator(v.b());
  const BigInt g = gcd(qa, qb);
  const BigInt r = qa / g * qb;
  const BigInt p = pa * (r / qa);
  const BigInt q = pb * (r / qb);
  // floor(Q*sqrt5): 5*Q^2 is never a perfect square for Q != 0.
  const BigInt root = sqrt(BigInt(5 * q * q));
  const BigInt fy = q >= 0 ? root : BigInt(-(root + 1));
  BigInt n = floor_div(p + fy, r);
  // The floor is n or n+1; decide with one exact comparison.
  const BigInt lhs = (n + 1) * r - p;  // n+1 <= v  iff  lhs <= Q*sqrt5
  if (Scalar(Rational(-lhs), Rational(q)).sign() >= 0) ++n;
  return n;
}

std::string Scalar::decimal(int sig) const {
  if (sig < 1) throw PreconditionError("significant digit count must be >= 1");
  const int sg = sign();
  if (sg == 0) return "0";
  const Scalar t = sg < 0 ? -*this : *this;

  auto pow10 = [](int k) {
    Rational p = 1;
    for (int i = 0; i < k; ++i) p *= 10;
    return Scalar(p);
  };

  // Exponent e with 10^(e-1) <= t < 10^e.
  int e;
  const BigInt ip = floor_scalar(t);
  if (ip > 0) {
    e = static_cast<int>(ip.str().size());
  } else {
    int k = 0;
    Scalar u = t;
    const Scalar one(1);
    while (u < one) {
      u *= Scalar(10);
      ++k;
    }
    e = 1 - k;
  }

  const Scalar half(Rational(1, 2));
  auto round_digits = [&](int exp) {
    const Scalar scaled = sig >= exp ? t * pow10(sig - exp) : t / pow10(exp - sig);
    return floor_scalar(scaled + half);
  };
  BigInt digits = round_digits(e);
  std::string ds = digits.str();
  if (static_cast<int>(ds.size()) > sig) {
    // Rounding carried into a new leading digit (e.g. 9.99... -> 10.0).
    ++e;
    ds = round_digits(e).str();
  }
  while (static_cast<int>(ds.size()) < sig) ds.insert(ds.begin(), '0');

  std::string out;
  if (e >= sig) {
    out = ds + std::string(e - sig, '0');
  } else if (e >= 1) {
    out = ds.substr(0, e) + "." + ds.substr(e);
  } else {
    out = "0." + std::string(-e, '0') + ds;
  }
  return sg < 0 ? "-" + out : out;
}

namespace {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar parse() {
    const Rational a = parse_rational();
    Rational b = 0;
    if (!done() && peek() == '+') {
      ++pos_;
      expect('(');
      b = parse_rational();
      expect(')');
      expect('*');
      expect('r');
      expect('5');
    }
    if (!done()) fail("unexpected trailing characters");
    return Scalar(a, b);
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos_);
  }

  void expect(char c) {
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  BigInt parse_int() {
    const std::size_t start = pos_;
    if (!done() && peek() == '-') ++pos_;
    const std::size_t first_digit = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == first_digit) fail("expected integer");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  Rational parse_rational() {
    const BigInt num = parse_int();
    if (!done() && peek() == '/') {
      ++pos_;
      const std::size_t den_pos = pos_;
      const BigInt den = parse_int();
      if (den == 0) throw ParseError("zero denominator", den_pos);
      return Rational(num, den);
    }
    return Rational(num);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return ScalarParser(text).parse(); }

}  // namespace linerdv
