#include <catch2/catch.hpp>

#include <random>

#include "waveset/fixtures.hpp"
#include "waveset/json_io.hpp"

using waveset::IntervalSet;
using waveset::Json;
using waveset::Quad;
using waveset::Rational;
using waveset::StepFunction;

namespace {
std::mt19937 rng(8086);
}

TEST_CASE("interval set round trip") {
  for (const auto& e :
       {waveset::fixtures::shannon(), waveset::fixtures::journe(),
        waveset::fixtures::toostrong(), IntervalSet()}) {
    Json j = to_json(e);
    IntervalSet back = waveset::interval_set_from_json(j);
    CHECK(back == e);
    CHECK(to_json(back).dump() == j.dump());
  }
}

TEST_CASE("random round trips are byte identical") {
  std::uniform_int_distribution<long> num(-400, 400), den(1, 60);
  for (int i = 0; i < 50; ++i) {
    std::vector<waveset::Interval> parts;
    for (int p = 0; p < 3; ++p) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      parts.push_back({a, b});
    }
    if (parts.empty()) continue;
    IntervalSet e = IntervalSet::normalize(std::move(parts));
    std::string s1 = to_json(e).dump(2);
    std::string s2 =
        to_json(waveset::interval_set_from_json(Json::parse(s1))).dump(2);
    CHECK(s1 == s2);
  }
}

TEST_CASE("step function and profile round trips") {
  StepFunction mix = waveset::fixtures::mix();
  CHECK(waveset::step_function_from_json(to_json(mix)) == mix);

  auto psi = waveset::ComplexProfile::indicator(
      waveset::fixtures::shannon(), {Rational(3, 5), Rational(4, 5)});
  auto back = waveset::profile_from_json(to_json(psi));
  CHECK(back.cells() == psi.cells());
}

TEST_CASE("matrix parsing accepts bare arrays and wrapped entries") {
  Json bare = Json::parse(R"([["1/2","1/2"],["1/2","1/2"]])");
  auto m = waveset::matrix_from_json(bare);
  REQUIRE(m.size() == 2);
  CHECK(m[0][0] == Rational(1, 2));
  Json wrapped;
  wrapped["entries"] = bare;
  CHECK(waveset::matrix_from_json(wrapped) == m);
}

TEST_CASE("quad values round trip") {
  Quad x(Rational(-3, 4), Rational(5, 9));
  CHECK(waveset::quad_from_json(to_json(x)) == x);
  CHECK(to_json(waveset::quad_from_json(to_json(x))).dump() ==
        to_json(x).dump());
}

TEST_CASE("quad literals") {
  CHECK(waveset::quad_from_string("1/2√2") ==
        Quad(Rational(0), Rational(1, 2)));
  CHECK(waveset::quad_from_string("3+1/2sqrt2") ==
        Quad(Rational(3), Rational(1, 2)));
  CHECK(waveset::quad_from_string("-1/4+2sqrt(2)") ==
        Quad(Rational(-1, 4), Rational(2)));
  CHECK(waveset::quad_from_string("7/5") == Quad(Rational(7, 5)));
  CHECK(waveset::quad_from_string("sqrt2") == Quad::sqrt2());
  CHECK(waveset::quad_from_string("-sqrt2") == Quad(Rational(0), Rational(-1)));
  CHECK(waveset::quad_from_string("1-2sqrt2") ==
        Quad(Rational(1), Rational(-2)));
  CHECK_THROWS_AS(waveset::quad_from_string("sqrt2+1"), waveset::ParseError);
}

TEST_CASE("malformed payloads raise parse errors") {
  CHECK_THROWS_AS(waveset::interval_set_from_json(Json::parse("{}")),
                  waveset::ParseError);
  CHECK_THROWS_AS(
      waveset::rational_from_json(Json::parse("3.5")),
      waveset::ParseError);
  CHECK_THROWS_AS(waveset::points_from_json(Json::parse(R"({"a": 1})")),
                  waveset::ParseError);
}
