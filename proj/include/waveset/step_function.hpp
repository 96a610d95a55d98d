#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/measure.hpp"
#include "waveset/quadratic.hpp"
#include "waveset/rational.hpp"

namespace waveset {

//! One constant piece of a step function: value on (lo, hi].
struct Cell {
  Rational lo;
  Rational hi;
  Rational value;

  std::string to_string() const {
    return "(" + lo.to_string() + ", " + hi.to_string() + "] = " +
           value.to_string();
  }
  friend bool operator==(const Cell& a, const Cell& b) {
    return a.lo == b.lo && a.hi == b.hi && a.value == b.value;
  }
};

//! Piecewise-constant nonnegative function with rational breakpoints and
//! values, zero outside finitely many cells. Canonical form stores only
//! nonzero cells, sorted and disjoint, with equal-valued adjacent cells
//! merged. Houses tiling functions and multiplicity functions.
class StepFunction {
 public:
  StepFunction() = default;

  static StepFunction from_cells(std::vector<Cell> raw) {
    for (const auto& c : raw) {
      if (!(c.lo < c.hi))
        throw MalformedInterval("cell with lo >= hi: " + c.to_string());
      if (c.value.sign() < 0)
        throw ValueOutOfRange("negative cell value: " + c.to_string());
    }
    std::sort(raw.begin(), raw.end(), [](const Cell& x, const Cell& y) {
      return x.lo < y.lo;
    });
    for (std::size_t i = 1; i < raw.size(); ++i)
      if (raw[i].lo < raw[i - 1].hi)
        throw MalformedInterval("overlapping cells: " +
                                raw[i - 1].to_string() + " and " +
                                raw[i].to_string());
    StepFunction f;
    for (auto& c : raw) {
      if (c.value.is_zero()) continue;
      if (!f.cells_.empty() && f.cells_.back().hi == c.lo &&
          f.cells_.back().value == c.value)
        f.cells_.back().hi = c.hi;
      else
        f.cells_.push_back(std::move(c));
    }
    return f;
  }

  static StepFunction indicator(const IntervalSet& e,
                                const Rational& value = Rational(1)) {
    std::vector<Cell> cells;
    for (const auto& iv : e.parts()) cells.push_back({iv.lo, iv.hi, value});
    return from_cells(std::move(cells));
  }

  static StepFunction zero() { return StepFunction(); }

  const std::vector<Cell>& cells() const { return cells_; }
  bool is_zero() const { return cells_.empty(); }

  IntervalSet support() const {
    std::vector<Interval> parts;
    for (const auto& c : cells_) parts.push_back({c.lo, c.hi});
    return parts.empty() ? IntervalSet()
                         : IntervalSet::normalize(std::move(parts));
  }

  Rational evaluate(const Rational& x) const {
    for (const auto& c : cells_) {
      if (x <= c.lo) return Rational(0);
      if (x <= c.hi) return c.value;
    }
    return Rational(0);
  }

  Rational evaluate(const Quad& x) const {
    for (const auto& c : cells_) {
      if (x <= Quad(c.lo)) return Rational(0);
      if (x <= Quad(c.hi)) return c.value;
    }
    return Rational(0);
  }

  Rational max_value() const {
    Rational m(0);
    for (const auto& c : cells_) m = max(m, c.value);
    return m;
  }
  Rational min_value_on_support() const {
    if (cells_.empty()) return Rational(0);
    Rational m = cells_.front().value;
    for (const auto& c : cells_) m = min(m, c.value);
    return m;
  }

  //! Pointwise sum; cells are split at the union of breakpoints.
  friend StepFunction operator+(const StepFunction& f, const StepFunction& g) {
    return merge(f, g, [](const Rational& a, const Rational& b) {
      return a + b;
    });
  }

  StepFunction scale(const Rational& r) const {
    if (r.sign() < 0) throw ValueOutOfRange("scaling by a negative value");
    if (r.is_zero()) return StepFunction();
    std::vector<Cell> cells = cells_;
    for (auto& c : cells) c.value *= r;
    return from_cells(std::move(cells));
  }

  //! The pushforward under x -> 2^j x + k (values unchanged).
  StepFunction act(long j, const Rational& k) const {
    std::vector<Cell> cells;
    cells.reserve(cells_.size());
    for (const auto& c : cells_)
      cells.push_back({c.lo.mul_pow2(j) + k, c.hi.mul_pow2(j) + k, c.value});
    return from_cells(std::move(cells));
  }

  StepFunction reflect() const {
    std::vector<Cell> cells;
    for (auto it = cells_.rbegin(); it != cells_.rend(); ++it)
      cells.push_back({-it->hi, -it->lo, it->value});
    return from_cells(std::move(cells));
  }

  StepFunction restrict_to(const IntervalSet& dom) const {
    std::vector<Cell> cells;
    for (const auto& c : cells_) {
      IntervalSet piece =
          set_intersection(IntervalSet::single(c.lo, c.hi), dom);
      for (const auto& iv : piece.parts())
        cells.push_back({iv.lo, iv.hi, c.value});
    }
    return from_cells(std::move(cells));
  }

  //! { x : f(x) = v } as an interval set (v != 0).
  IntervalSet level_set(const Rational& v) const {
    if (v.is_zero()) throw InternalError("level_set of 0 is unbounded");
    std::vector<Interval> parts;
    for (const auto& c : cells_)
      if (c.value == v) parts.push_back({c.lo, c.hi});
    return parts.empty() ? IntervalSet()
                         : IntervalSet::normalize(std::move(parts));
  }

  //! Exact integral against Lebesgue measure.
  Rational integral_dm() const {
    Rational total(0);
    for (const auto& c : cells_) total += c.value * (c.hi - c.lo);
    return total;
  }

  //! Integral against nu; infinite when the support closure meets 0.
  NuValue integral_dnu() const {
    if (!cells_.empty() && support().closure_contains_zero())
      return NuValue::infinite();
    LogSum sum;
    for (const auto& c : cells_)
      sum.add(c.value / Rational(2), nu_ratio(Interval{c.lo, c.hi}));
    return sum.value();
  }

  //! True when f equals the constant c everywhere on dom.
  bool equals_on(const Rational& c, const IntervalSet& dom) const {
    return deviations_on(c, dom).empty();
  }

  //! Cells of dom where f differs from the constant c (gaps report value 0).
  std::vector<Cell> deviations_on(const Rational& c,
                                  const IntervalSet& dom) const {
    std::vector<Cell> bad;
    StepFunction r = restrict_to(dom);
    for (const auto& cell : r.cells_)
      if (cell.value != c) bad.push_back(cell);
    IntervalSet gaps = set_difference(dom, r.support());
    if (!c.is_zero())
      for (const auto& iv : gaps.parts())
        bad.push_back({iv.lo, iv.hi, Rational(0)});
    std::sort(bad.begin(), bad.end(),
              [](const Cell& x, const Cell& y) { return x.lo < y.lo; });
    return bad;
  }

  friend bool operator==(const StepFunction& f, const StepFunction& g) {
    return f.cells_ == g.cells_;
  }

  std::string to_string() const {
    if (cells_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i) s += ", ";
      s += cells_[i].to_string();
    }
    return s;
  }

  //! Sums a bag of not-necessarily-disjoint weighted pieces into canonical
  //! form (the workhorse behind periodization).
  static StepFunction accumulate(const std::vector<Cell>& pieces) {
    if (pieces.empty()) return StepFunction();
    std::vector<Rational> cuts;
    cuts.reserve(pieces.size() * 2);
    for (const auto& p : pieces) {
      cuts.push_back(p.lo);
      cuts.push_back(p.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Cell> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      Rational v(0);
      for (const auto& p : pieces)
        if (p.lo <= cuts[i] && cuts[i + 1] <= p.hi) v += p.value;
      if (!v.is_zero()) out.push_back({cuts[i], cuts[i + 1], v});
    }
    return from_cells(std::move(out));
  }

 private:
  template <typename Op>
  static StepFunction merge(const StepFunction& f, const StepFunction& g,
                            Op op) {
    std::vector<Rational> cuts;
    for (const auto& c : f.cells_) {
      cuts.push_back(c.lo);
      cuts.push_back(c.hi);
    }
    for (const auto& c : g.cells_) {
      cuts.push_back(c.lo);
      cuts.push_back(c.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Cell> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      // evaluate at the right end of the elementary cell: half-open safe
      Rational v = op(f.evaluate(cuts[i + 1]), g.evaluate(cuts[i + 1]));
      if (!v.is_zero()) out.push_back({cuts[i], cuts[i + 1], v});
    }
    return from_cells(std::move(out));
  }

  std::vector<Cell> cells_;
};

}  // namespace waveset
