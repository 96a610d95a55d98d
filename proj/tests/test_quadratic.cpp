#include <catch2/catch.hpp>

#include <random>

#include "waveset/bigfloat.hpp"
#include "waveset/quadratic.hpp"

using waveset::BigFloat;
using waveset::Ordering;
using waveset::Quad;
using waveset::Rational;

namespace {

std::mt19937 rng(20240);

Rational random_rational(long max_den = 64, long span = 16) {
  std::uniform_int_distribution<long> num(-span * max_den, span * max_den);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rational(num(rng), den(rng));
}

//! Independent high-precision evaluation of a + b sqrt(2): Newton iteration
//! for sqrt(2) from a double seed doubles the correct digits each step, so
//! eight steps exhaust the 256-bit precision.
BigFloat value_of(const Quad& x) {
  BigFloat two(Rational(2));
  BigFloat s(1.41421356237309515);
  for (int i = 0; i < 8; ++i)
    s = (s + two / s) / BigFloat(Rational(2));
  return BigFloat(x.rational_part()) + BigFloat(x.sqrt2_part()) * s;
}

}  // namespace

TEST_CASE("comparison resolves mixed-sign components by squaring") {
  // opposite component signs: (7/5)^2 = 49/25 < 2, the sqrt2 part wins
  CHECK(quad_compare(Quad(Rational(1), Rational(1)),
                     Quad(Rational(12, 5), Rational(0))) == Ordering::Greater);
  Quad x(Rational(5, 3), Rational(-2, 7));
  CHECK(quad_compare(x, x) == Ordering::Equal);
  CHECK(quad_compare(Quad::sqrt2(), Quad(Rational(0))) == Ordering::Greater);
  // 7/5 < sqrt(2) < 3/2
  CHECK(quad_compare(Quad::sqrt2(), Quad(Rational(7, 5))) ==
        Ordering::Greater);
  CHECK(quad_compare(Quad::sqrt2(), Quad(Rational(3, 2))) == Ordering::Less);
}

TEST_CASE("comparison agrees with 256-bit floating evaluation") {
  for (int i = 0; i < 1000; ++i) {
    Quad x(random_rational(), random_rational());
    Quad y(random_rational(), random_rational());
    Ordering ord = quad_compare(x, y);
    if (ord == Ordering::Equal) {
      CHECK(x == y);
      continue;
    }
    int float_sign = (value_of(x) - value_of(y)).cmp(BigFloat());
    CHECK((ord == Ordering::Greater ? 1 : -1) == float_sign);
  }
}

TEST_CASE("affine action examples") {
  CHECK(quad_affine(Quad(Rational(1, 2), Rational(1, 2)), 1, Rational(-1)) ==
        Quad::sqrt2());
  Quad x(Rational(-3, 4), Rational(5, 9));
  CHECK(quad_affine(x, 0, Rational(0)) == x);
  CHECK(quad_affine(Quad::sqrt2(), -1, Rational(3)) ==
        Quad(Rational(3), Rational(1, 2)));
}

TEST_CASE("affine actions compose as a group") {
  for (int i = 0; i < 200; ++i) {
    Quad x(random_rational(), random_rational());
    std::uniform_int_distribution<long> js(-6, 6);
    long j1 = js(rng), j2 = js(rng);
    Rational q1 = random_rational(), q2 = random_rational();
    Quad lhs = quad_affine(quad_affine(x, j1, q1), j2, q2);
    Quad rhs = quad_affine(x, j1 + j2, q1.mul_pow2(j2) + q2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("affine parameters are forced for irrational points") {
  for (int trial = 0; trial < 20; ++trial) {
    Rational b = random_rational();
    if (b.is_zero()) b = Rational(1, 3);
    Quad x(random_rational(), b);
    Rational q = random_rational();
    for (long j = -8; j <= 8; ++j) {
      Quad y = quad_affine(x, j, q);
      for (long j2 = -8; j2 <= 8; ++j2) {
        // the only candidate q2 matching the rational part
        Rational q2 = y.rational_part() - x.rational_part().mul_pow2(j2);
        Quad y2 = quad_affine(x, j2, q2);
        if (j2 == j) {
          CHECK(y2 == y);
          CHECK(q2 == q);
        } else {
          CHECK(!(y2 == y));
        }
      }
    }
  }
}

TEST_CASE("floor is exact on both rational and irrational values") {
  CHECK(Quad(Rational(7, 2)).floor() == 3);
  CHECK(Quad(Rational(-7, 2)).floor() == -4);
  CHECK(Quad::sqrt2().floor() == 1);
  CHECK((-Quad::sqrt2()).floor() == -2);
  CHECK(Quad(Rational(0), Rational(5)).floor() == 7);   // 5 sqrt2 = 7.07...
  CHECK(Quad(Rational(0), Rational(-5)).floor() == -8);
  CHECK(Quad(Rational(3), Rational(100)).floor() == 144);  // 3 + 141.42...
  for (int i = 0; i < 300; ++i) {
    Quad x(random_rational(), random_rational());
    mpz_class n = x.floor();
    CHECK(Quad(Rational(n)) <= x);
    CHECK(x < Quad(Rational(mpz_class(n + 1))));
  }
}
