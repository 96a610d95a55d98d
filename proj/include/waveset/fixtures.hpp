#pragma once

#include <string>
#include <variant>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/step_function.hpp"

namespace waveset {
namespace fixtures {

//! Shannon wavelet set (-1, -1/2] u (1/2, 1].
inline IntervalSet shannon() {
  return IntervalSet::normalize({Interval{Rational(-1), Rational(-1, 2)},
                                 Interval{Rational(1, 2), Rational(1)}});
}

//! The second basic wavelet set (-2/3, -1/3] u (2/3, 4/3].
inline IntervalSet example2() {
  return IntervalSet::normalize({Interval{Rational(-2, 3), Rational(-1, 3)},
                                 Interval{Rational(2, 3), Rational(4, 3)}});
}

//! Journe wavelet set (-16/7, -2] u (-1/2, -2/7] u (2/7, 1/2] u (2, 16/7].
inline IntervalSet journe() {
  return IntervalSet::normalize({Interval{Rational(-16, 7), Rational(-2)},
                                 Interval{Rational(-1, 2), Rational(-2, 7)},
                                 Interval{Rational(2, 7), Rational(1, 2)},
                                 Interval{Rational(2), Rational(16, 7)}});
}

//! A set with m = 1 and the right log measure that still contains no
//! wavelet set: (1/3, 1/2] u (4/3, 2] u (-1/3, -1/6].
inline IntervalSet toostrong() {
  return IntervalSet::normalize({Interval{Rational(1, 3), Rational(1, 2)},
                                 Interval{Rational(4, 3), Rational(2)},
                                 Interval{Rational(-1, 3), Rational(-1, 6)}});
}

//! The three-point set {1/5, 12/5, 34/5} (12/5 = 2 * 1/5 + 2 and
//! 34/5 = 4 * 1/5 + 6).
inline std::vector<Rational> paper_x() {
  return {Rational(1, 5), Rational(12, 5), Rational(34, 5)};
}

//! The six-cell step function of the matrix-form example: value 1/2 on
//! G, G+1, 2(G+1), 2(G+1)+1, 4G and 4G+6 with G = (1/5 - 1/100, 1/5 + 1/100].
inline StepFunction h_cells() {
  Rational g(1, 5), r(1, 100), half(1, 2);
  auto ball = [&](const Rational& center, const Rational& radius) {
    return Cell{center - radius, center + radius, half};
  };
  std::vector<Cell> cells{
      ball(g, r),
      ball(g + Rational(1), r),
      ball((g + Rational(1)) * Rational(2), r * Rational(2)),
      ball((g + Rational(1)) * Rational(2) + Rational(1), r * Rational(2)),
      ball(g * Rational(4), r * Rational(4)),
      ball(g * Rational(4) + Rational(6), r * Rational(4)),
  };
  return StepFunction::from_cells(std::move(cells));
}

//! The flagship tiling function (1/2)(1_shannon + 1_example2).
inline StepFunction mix() {
  return (StepFunction::indicator(shannon()) +
          StepFunction::indicator(example2()))
      .scale(Rational(1, 2));
}

using Fixture =
    std::variant<IntervalSet, StepFunction, std::vector<Rational>>;

inline Fixture load(const std::string& name) {
  if (name == "shannon") return shannon();
  if (name == "journe") return journe();
  if (name == "example2") return example2();
  if (name == "toostrong") return toostrong();
  if (name == "paper-X") return paper_x();
  if (name == "h-cells") return h_cells();
  if (name == "mix") return mix();
  throw UnknownFixture(name);
}

}  // namespace fixtures
}  // namespace waveset
