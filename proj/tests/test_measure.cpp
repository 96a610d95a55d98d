#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "waveset/bigfloat.hpp"
#include "waveset/fixtures.hpp"
#include "waveset/measure.hpp"

using waveset::BigFloat;
using waveset::IntervalSet;
using waveset::LogSum;
using waveset::NuValue;
using waveset::Rational;

namespace {
std::mt19937 rng(5150);
}

TEST_CASE("nu of the wavelet-set fixtures is exactly 1") {
  NuValue a = nu(waveset::fixtures::shannon());
  REQUIRE(a.is_exact());
  CHECK(a.exact_value() == Rational(1));
  NuValue b = nu(waveset::fixtures::journe());
  REQUIRE(b.is_exact());
  CHECK(b.exact_value() == Rational(1));
  NuValue c = nu(waveset::fixtures::example2());
  REQUIRE(c.is_exact());
  CHECK(c.exact_value() == Rational(1));
}

TEST_CASE("nu is infinite exactly when the closure meets 0") {
  CHECK(nu(IntervalSet::single(Rational(-1), Rational(1))).is_infinite());
  CHECK(nu(IntervalSet::single(Rational(0), Rational(1))).is_infinite());
  CHECK(nu(IntervalSet::single(Rational(-1), Rational(0))).is_infinite());
  CHECK_FALSE(nu(IntervalSet::single(Rational(1, 100), Rational(1)))
                  .is_infinite());
}

TEST_CASE("the fixture that matches the measures is not exactly 1 in nu") {
  // product of ratios (3/2)(3/2)(2) = 9/2 is not a dyadic power, so the
  // value is irrational: log2(9/2)/2 = log2(3) - 1/2
  NuValue v = nu(waveset::fixtures::toostrong());
  REQUIRE_FALSE(v.is_infinite());
  CHECK_FALSE(v.is_exact());
  BigFloat expected =
      BigFloat::log2_of(Rational(9, 2)) / BigFloat(Rational(2));
  CHECK((v.approx() - expected).abs() < BigFloat(1e-60));
  // strictly above 1: the claimed normalization does not hold
  CHECK(v.cmp(NuValue::exact(Rational(1))) > 0);
}

TEST_CASE("nu agrees with numerical quadrature") {
  // independent oracle: midpoint rule on the density 1 / (|x| log 4)
  auto quadrature = [](const IntervalSet& e) {
    const double log4 = 1.3862943611198906;
    double total = 0;
    for (const auto& iv : e.parts()) {
      double lo = iv.lo.to_double(), hi = iv.hi.to_double();
      const int n = 200000;
      double h = (hi - lo) / n;
      for (int i = 0; i < n; ++i) {
        double x = lo + (i + 0.5) * h;
        total += h / (std::abs(x) * log4);
      }
    }
    return total;
  };
  auto check = [&](const IntervalSet& e) {
    double numeric = quadrature(e);
    double exact = nu(e).to_double();
    CHECK(std::abs(numeric - exact) < 1e-6);
  };
  check(waveset::fixtures::shannon());
  check(waveset::fixtures::journe());
  check(waveset::fixtures::toostrong());
  check(IntervalSet::single(Rational(4), Rational(5)));
  check(IntervalSet::single(Rational(-7), Rational(-3)));
}

TEST_CASE("nu is invariant under dilation and reflection") {
  std::uniform_int_distribution<long> coord(1, 64);
  for (int i = 0; i < 100; ++i) {
    long a = coord(rng), b = coord(rng), c = coord(rng), d = coord(rng);
    if (a == b || c == d) continue;
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    IntervalSet e = IntervalSet::normalize(
        {{Rational(a, 8), Rational(b, 8)},
         {Rational(-d, 8) - Rational(10), Rational(-c, 8) - Rational(10)}});
    NuValue base = nu(e);
    std::uniform_int_distribution<long> js(-4, 4);
    NuValue dil = nu(e.act(js(rng), Rational(0)));
    NuValue refl = nu(e.reflect());
    if (base.is_exact()) {
      CHECK(dil.is_exact());
      CHECK(dil.exact_value() == base.exact_value());
      CHECK(refl.exact_value() == base.exact_value());
    } else {
      CHECK((dil.approx() - base.approx()).abs() < BigFloat(1e-60));
      CHECK((refl.approx() - base.approx()).abs() < BigFloat(1e-60));
    }
  }
}

TEST_CASE("lebesgue is invariant under translation") {
  std::uniform_int_distribution<long> coord(-40, 40);
  for (int i = 0; i < 100; ++i) {
    long a = coord(rng), b = coord(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    IntervalSet e = IntervalSet::single(Rational(a, 8), Rational(b, 8));
    Rational k(coord(rng), 4);
    CHECK(e.act(0, k).lebesgue() == e.lebesgue());
  }
}

TEST_CASE("log sums collapse to rationals exactly on dyadic products") {
  LogSum s;
  s.add(Rational(1, 2), Rational(8, 7));
  s.add(Rational(1, 2), Rational(7, 4));
  NuValue v = s.value();  // (1/2) log2 2 = 1/2
  REQUIRE(v.is_exact());
  CHECK(v.exact_value() == Rational(1, 2));

  LogSum t;
  t.add(Rational(1, 3), Rational(2));
  t.add(Rational(1, 3), Rational(4));
  NuValue w = t.value();  // (1/3)(1 + 2) = 1
  REQUIRE(w.is_exact());
  CHECK(w.exact_value() == Rational(1));

  LogSum u;
  u.add(Rational(1), Rational(3));
  NuValue x = u.value();
  CHECK_FALSE(x.is_exact());
  CHECK((x.approx() - BigFloat::log2_of(Rational(3))).abs() <
        BigFloat(1e-60));
}

TEST_CASE("nu arithmetic tracks exactness") {
  NuValue a = NuValue::exact(Rational(3, 2));
  NuValue b = NuValue::exact(Rational(1, 2));
  CHECK((a + b).is_exact());
  CHECK((a - b).exact_value() == Rational(1));
  NuValue c = NuValue::approximate(BigFloat::log2_of(Rational(3)));
  CHECK_FALSE((a + c).is_exact());
  CHECK((a + c).cmp(a) > 0);
  CHECK(NuValue::infinite().is_infinite());
  CHECK((a + NuValue::infinite()).is_infinite());
  CHECK(a.within(NuValue::exact(Rational(3, 2)), Rational(0)));
  CHECK(a.within(NuValue::exact(Rational(14, 10)), Rational(1, 10)));
  CHECK_FALSE(a.within(NuValue::exact(Rational(1)), Rational(1, 10)));
}
