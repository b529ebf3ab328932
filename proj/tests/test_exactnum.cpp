#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "linerdv/exactnum.hpp"
#include "test_helpers.hpp"

using namespace linerdv;
using linerdv::testing::rand_in;
using linerdv::testing::rand_nonzero_scalar;
using linerdv::testing::rand_scalar;

namespace {
Scalar sc(long long an, long long ad, long long bn = 0, long long bd = 1) {
  return Scalar(Rational(an, ad), Rational(bn, bd));
}
}  // namespace

TEST_CASE("field arithmetic matches the golden-ratio identities") {
  const Scalar ph = phi();
  CHECK(ph * ph == ph + Scalar(1));          // phi^2 = phi + 1
  CHECK(ph * ph == sc(3, 2, 1, 2));
  CHECK(Scalar(1) / Scalar::sqrt5() == sc(0, 1, 1, 5));  // 1/sqrt5 = sqrt5/5
  CHECK(sc(1, 3) + sc(1, 6) == sc(1, 2));
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), PreconditionError);
}

TEST_CASE("division rationalizes by the conjugate") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Scalar a = rand_scalar(rng);
    const Scalar b = rand_nonzero_scalar(rng);
    CHECK((a / b) * b == a);
  }
}

TEST_CASE("sign handles mixed-sign components exactly") {
  CHECK(sc(-2, 1, 1, 1).sign() == 1);   // 5*1 > 4
  CHECK(sc(7, 3, -1, 1).sign() == 1);   // 49/9 > 5
  CHECK(Scalar(0).sign() == 0);
  CHECK(sc(0, 1, -3, 7).sign() == -1);
  CHECK((phi() - sc(8, 5)).sign() == 1);  // phi > 1.6
}

TEST_CASE("sign agrees with a 50-digit decimal oracle") {
  using Dec = boost::multiprecision::cpp_dec_float_50;
  const Dec root5 = sqrt(Dec(5));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Scalar s = rand_scalar(rng);
    const Dec approx = Dec(numerator(s.a()).str()) / Dec(denominator(s.a()).str()) +
                       root5 * Dec(numerator(s.b()).str()) / Dec(denominator(s.b()).str());
    const int oracle = approx == 0 ? 0 : (approx > 0 ? 1 : -1);
    CHECK(s.sign() == oracle);
  }
}

TEST_CASE("field axioms hold on random scalars") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 400; ++i) {
    const Scalar a = rand_scalar(rng), b = rand_scalar(rng), c = rand_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == Scalar(0));
    const Scalar nz = rand_nonzero_scalar(rng);
    CHECK(nz / nz == Scalar(1));
  }
}

TEST_CASE("floor_rational") {
  // k = floor(n/6 - 2/3) for n = 9 evaluates via 9/6 - 2/3 = 5/6.
  const Rational v = Rational(9, 6) - Rational(2, 3);
  CHECK(v == Rational(5, 6));
  CHECK(floor_rational(v) == 0);
  CHECK(floor_rational(Rational(-1, 2)) == -1);
  CHECK(floor_rational(Rational(7, 2)) == 3);

  // Long-division oracle on random fractions.
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const long long num = rand_in(rng, -500, 500);
    const long long den = rand_in(rng, 1, 40);
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;  // independent floor via trunc fixup
    CHECK(floor_rational(Rational(num, den)) == q);
  }
}

TEST_CASE("floor_scalar is exact for irrational values") {
  CHECK(floor_scalar(Scalar::sqrt5()) == 2);
  CHECK(floor_scalar(-Scalar::sqrt5()) == -3);
  CHECK(floor_scalar(phi()) == 1);
  CHECK(floor_scalar(sc(0, 1, 100, 1)) == 223);   // 100*sqrt5 = 223.60...
  CHECK(floor_scalar(sc(1, 2, -1, 3)) == -1);     // 0.5 - 0.745...
  std::mt19937_64 rng(19);
  for (int i = 0; i < 500; ++i) {
    const Scalar s = rand_scalar(rng);
    const BigInt f = floor_scalar(s);
    CHECK(Scalar(Rational(f)) <= s);
    CHECK(s < Scalar(Rational(f + 1)));
  }
}

TEST_CASE("parse and format follow the canonical grammar") {
  CHECK(parse_scalar("3/2") == sc(3, 2));
  CHECK(parse_scalar("-2+(1/1)*r5") == sc(-2, 1, 1, 1));
  CHECK(parse_scalar("7") == Scalar(7));
  CHECK(format_scalar(phi()) == "1/2+(1/2)*r5");
  CHECK(format_scalar(sc(-2, 1, 1, 1)) == "-2+(1/1)*r5");
  CHECK(format_scalar(sc(3, 2)) == "3/2");
  CHECK(format_scalar(Scalar(0)) == "0");
  CHECK(parse_scalar("2/4") == sc(1, 2));  // normalizes on input
}

TEST_CASE("parse errors carry the offending position") {
  auto pos_of = [](const char* text) {
    try {
      parse_scalar(text);
    } catch (const ParseError& e) {
      return static_cast<long long>(e.position);
    }
    return -1LL;
  };
  CHECK(pos_of("") == 0);
  CHECK(pos_of("3/") == 2);
  CHECK(pos_of("1/0") == 2);
  CHECK(pos_of("1+") == 2);
  CHECK(pos_of("1+(1/2)r5") == 7);
  CHECK(pos_of(" 1") == 0);
  CHECK(pos_of("1 ") == 1);
  CHECK(pos_of("1+(1/2)*r6") == 9);
}

TEST_CASE("round trip on random scalars") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 1000; ++i) {
    const Scalar s = rand_scalar(rng);
    CHECK(parse_scalar(format_scalar(s)) == s);
  }
}

TEST_CASE("phi constant") {
  CHECK(phi() == sc(1, 2, 1, 2));
  CHECK(phi() * phi() - phi() - Scalar(1) == Scalar(0));
  CHECK(sign(phi() - sc(8, 5)) == 1);
}

TEST_CASE("decimal rendering") {
  CHECK(sc(31, 11).decimal() == "2.81818181818");
  CHECK(phi().decimal() == "1.61803398875");
  CHECK((Scalar(1) + phi()).decimal() == "2.61803398875");
  CHECK(Scalar(0).decimal() == "0");
  CHECK(Scalar(7).decimal(3) == "7.00");
  CHECK(sc(-1, 4).decimal(3) == "-0.250");
  CHECK(sc(1, 1000).decimal(4) == "0.001000");
  CHECK(sc(999999, 1).decimal(3) == "1000000");  // carry into a new digit
  CHECK(Scalar(123456).decimal(3) == "123000");
}

TEST_CASE("total order is consistent") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const Scalar a = rand_scalar(rng), b = rand_scalar(rng);
    CHECK(((a < b) + (a == b) + (b < a)) == 1);
    if (a < b) CHECK(-b < -a);
  }
}
