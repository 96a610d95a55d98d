#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include "waveset/fixtures.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/quadratic.hpp"

using waveset::Interval;
using waveset::IntervalSet;
using waveset::Quad;
using waveset::Rational;
using waveset::SetOp;

namespace {

std::mt19937 rng(7711);

//! Random canonical set with endpoints on the grid (1/den) Z inside
//! [-span, span].
IntervalSet random_grid_set(long den = 16, long span = 2, int pieces = 3) {
  std::uniform_int_distribution<long> coord(-span * den, span * den);
  std::vector<Interval> parts;
  for (int i = 0; i < pieces; ++i) {
    long a = coord(rng), b = coord(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    parts.push_back({Rational(a, den), Rational(b, den)});
  }
  return IntervalSet::normalize(std::move(parts));
}

//! Membership table oracle on the elementary grid cells of [-span, span].
std::vector<bool> membership(const IntervalSet& e, long den, long span) {
  std::vector<bool> table;
  for (long k = -span * den + 1; k <= span * den; ++k)
    table.push_back(e.contains_point(Rational(k, den)));
  return table;
}

}  // namespace

TEST_CASE("normalize merges overlaps and adjacencies") {
  IntervalSet a = IntervalSet::normalize(
      {{Rational(0), Rational(1)}, {Rational(1), Rational(2)}});
  CHECK(a == IntervalSet::single(Rational(0), Rational(2)));
  IntervalSet b = IntervalSet::normalize(
      {{Rational(1), Rational(3)}, {Rational(0), Rational(2)}});
  CHECK(b == IntervalSet::single(Rational(0), Rational(3)));
  IntervalSet c = IntervalSet::normalize(
      {{Rational(1, 2), Rational(1)}, {Rational(-1), Rational(-1, 2)}});
  REQUIRE(c.size() == 2);
  CHECK(c.parts()[0].lo == Rational(-1));
  CHECK(c == waveset::fixtures::shannon());
  CHECK_THROWS_AS(IntervalSet::normalize({{Rational(1), Rational(1)}}),
                  waveset::MalformedInterval);
  CHECK_THROWS_AS(IntervalSet::normalize({{Rational(2), Rational(1)}}),
                  waveset::MalformedInterval);
}

TEST_CASE("normalize is idempotent on random input") {
  for (int i = 0; i < 100; ++i) {
    IntervalSet e = random_grid_set();
    std::vector<Interval> parts = e.parts();
    CHECK(IntervalSet::normalize(parts) == e);
  }
}

TEST_CASE("set algebra examples") {
  IntervalSet a = IntervalSet::single(Rational(0), Rational(2));
  IntervalSet b = IntervalSet::single(Rational(1), Rational(3));
  CHECK(set_algebra(a, b, SetOp::Intersect) ==
        IntervalSet::single(Rational(1), Rational(2)));
  IntervalSet sh = waveset::fixtures::shannon();
  CHECK(set_algebra(sh, sh, SetOp::Difference).is_empty());
  IntervalSet c = IntervalSet::normalize(
      {{Rational(0), Rational(1)}, {Rational(2), Rational(3)}});
  IntervalSet d = IntervalSet::single(Rational(1, 2), Rational(5, 2));
  IntervalSet expected = IntervalSet::normalize(
      {{Rational(0), Rational(1, 2)}, {Rational(5, 2), Rational(3)}});
  CHECK(set_algebra(c, d, SetOp::Difference) == expected);
}

TEST_CASE("set algebra matches the grid membership oracle") {
  const long den = 16, span = 2;
  for (int i = 0; i < 200; ++i) {
    IntervalSet a = random_grid_set(den, span);
    IntervalSet b = random_grid_set(den, span);
    auto ta = membership(a, den, span), tb = membership(b, den, span);
    auto tu = membership(set_union(a, b), den, span);
    auto ti = membership(set_intersection(a, b), den, span);
    auto td = membership(set_difference(a, b), den, span);
    for (std::size_t k = 0; k < ta.size(); ++k) {
      CHECK(tu[k] == (ta[k] || tb[k]));
      CHECK(ti[k] == (ta[k] && tb[k]));
      CHECK(td[k] == (ta[k] && !tb[k]));
    }
  }
}

TEST_CASE("valuation identity holds exactly") {
  for (int i = 0; i < 200; ++i) {
    IntervalSet a = random_grid_set(24, 3);
    IntervalSet b = random_grid_set(24, 3);
    CHECK(set_union(a, b).lebesgue() + set_intersection(a, b).lebesgue() ==
          a.lebesgue() + b.lebesgue());
  }
}

TEST_CASE("affine action on sets") {
  IntervalSet sh = waveset::fixtures::shannon();
  IntervalSet doubled = IntervalSet::normalize(
      {{Rational(-2), Rational(-1)}, {Rational(1), Rational(2)}});
  CHECK(sh.act(1, Rational(0)) == doubled);
  CHECK(IntervalSet::single(Rational(2, 3), Rational(4, 3))
            .act(0, Rational(-1)) ==
        IntervalSet::single(Rational(-1, 3), Rational(1, 3)));
  CHECK(IntervalSet::single(Rational(19, 100), Rational(21, 100))
            .act(1, Rational(2)) ==
        IntervalSet::single(Rational(238, 100), Rational(242, 100)));
}

TEST_CASE("measure scales with the action") {
  for (int i = 0; i < 100; ++i) {
    IntervalSet e = random_grid_set();
    std::uniform_int_distribution<long> js(-5, 5);
    long j = js(rng);
    Rational k(js(rng), 3);
    CHECK(e.act(j, k).lebesgue() == e.lebesgue().mul_pow2(j));
    CHECK(e.act(0, k).lebesgue() == e.lebesgue());
  }
}

TEST_CASE("lebesgue examples") {
  CHECK(waveset::fixtures::shannon().lebesgue() == Rational(1));
  CHECK(waveset::fixtures::journe().lebesgue() == Rational(1));
  CHECK(waveset::fixtures::example2().lebesgue() == Rational(1));
  CHECK(waveset::fixtures::toostrong().lebesgue() == Rational(1));
  CHECK(IntervalSet().lebesgue() == Rational(0));
}

TEST_CASE("membership honors the half-open convention") {
  IntervalSet e = IntervalSet::single(Rational(0), Rational(1));
  CHECK(e.contains_point(Rational(1)));
  CHECK_FALSE(e.contains_point(Rational(0)));
  CHECK(e.contains_point(Quad(Rational(1))));
  CHECK_FALSE(e.contains_point(Quad(Rational(0))));
  // sqrt(2)/2 lies in (1/2, 1]
  IntervalSet w = IntervalSet::single(Rational(1, 2), Rational(1));
  CHECK(w.contains_point(Quad::sqrt2(Rational(1, 2))));
  CHECK_FALSE(w.contains_point(Quad::sqrt2(Rational(1, 3))));
}

TEST_CASE("reflection is a measure-preserving involution") {
  for (int i = 0; i < 100; ++i) {
    IntervalSet e = random_grid_set();
    IntervalSet r = e.reflect();
    CHECK(r.lebesgue() == e.lebesgue());
    CHECK(r.reflect() == e);
  }
  IntervalSet sh = waveset::fixtures::shannon();
  CHECK(sh.reflect() == sh);  // Shannon is symmetric
}

TEST_CASE("subset and prefix extraction") {
  IntervalSet e = IntervalSet::normalize(
      {{Rational(0), Rational(1)}, {Rational(2), Rational(4)}});
  CHECK(IntervalSet::single(Rational(2), Rational(3)).subset_of(e));
  CHECK_FALSE(IntervalSet::single(Rational(1), Rational(3)).subset_of(e));
  IntervalSet pre = e.take_prefix(Rational(3, 2));
  CHECK(pre.lebesgue() == Rational(3, 2));
  CHECK(pre.subset_of(e));
  CHECK(pre == IntervalSet::normalize(
                   {{Rational(0), Rational(1)}, {Rational(2), Rational(5, 2)}}));
  CHECK_THROWS_AS(e.take_prefix(Rational(100)), waveset::ZeroMass);
}

TEST_CASE("magnitude clipping") {
  IntervalSet e = IntervalSet::normalize(
      {{Rational(-3), Rational(-1)}, {Rational(2), Rational(4)}});
  CHECK(e.clip_magnitude_below(Rational(2)) ==
        IntervalSet::single(Rational(-2), Rational(-1)));
  CHECK(e.clip_magnitude_above(Rational(3)) ==
        IntervalSet::single(Rational(3), Rational(4)));
  auto [lo, hi] = e.magnitude_bounds();
  CHECK(lo == Rational(1));
  CHECK(hi == Rational(4));
  CHECK(IntervalSet::single(Rational(-1), Rational(1)).closure_contains_zero());
  CHECK(IntervalSet::single(Rational(0), Rational(1)).closure_contains_zero());
  CHECK_FALSE(e.closure_contains_zero());
}
