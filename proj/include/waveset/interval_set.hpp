#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/quadratic.hpp"
#include "waveset/rational.hpp"

namespace waveset {

//! Half-open interval (lo, hi] with rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  std::string to_string() const {
    return "(" + lo.to_string() + ", " + hi.to_string() + "]";
  }
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

//! Canonical finite union of half-open intervals (lo, hi]: components are
//! sorted, pairwise disjoint and non-adjacent. The half-open convention makes
//! tilings exact partitions; all set identities hold on the nose, not just
//! almost everywhere.
class IntervalSet {
 public:
  IntervalSet() = default;

  //! Canonicalizes an arbitrary list of raw intervals: sorts, merges overlaps
  //! and adjacencies. Throws MalformedInterval when some lo >= hi.
  static IntervalSet normalize(std::vector<Interval> raw) {
    for (const auto& iv : raw)
      if (!(iv.lo < iv.hi))
        throw MalformedInterval("interval with lo >= hi: " + iv.to_string());
    std::sort(raw.begin(), raw.end(), [](const Interval& x, const Interval& y) {
      return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
    IntervalSet out;
    for (auto& iv : raw) {
      if (!out.parts_.empty() && iv.lo <= out.parts_.back().hi) {
        if (iv.hi > out.parts_.back().hi) out.parts_.back().hi = iv.hi;
      } else {
        out.parts_.push_back(std::move(iv));
      }
    }
    return out;
  }

  static IntervalSet single(const Rational& lo, const Rational& hi) {
    return normalize({Interval{lo, hi}});
  }

  static IntervalSet empty() { return IntervalSet(); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  //! Exact Lebesgue measure: the sum of component lengths.
  Rational lebesgue() const {
    Rational total(0);
    for (const auto& iv : parts_) total += iv.length();
    return total;
  }

  bool contains_point(const Rational& x) const {
    for (const auto& iv : parts_) {
      if (x <= iv.lo) return false;
      if (x <= iv.hi) return true;
    }
    return false;
  }

  //! Exact half-open membership for Q(sqrt 2) points.
  bool contains_point(const Quad& x) const {
    for (const auto& iv : parts_) {
      if (x <= Quad(iv.lo)) return false;
      if (x <= Quad(iv.hi)) return true;
    }
    return false;
  }

  //! Exact subset test (as sets of points; endpoints matter).
  bool subset_of(const IntervalSet& other) const {
    return set_difference(*this, other).is_empty();
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.parts_ == b.parts_;
  }

  //! The affine image 2^j * E + k.
  IntervalSet act(long j, const Rational& k) const {
    IntervalSet out;
    out.parts_.reserve(parts_.size());
    for (const auto& iv : parts_)
      out.parts_.push_back(
          Interval{iv.lo.mul_pow2(j) + k, iv.hi.mul_pow2(j) + k});
    return out;  // positive scaling plus shift preserves canonical form
  }

  //! Image under x -> -x. The mirror of (lo, hi] is [-hi, -lo); it is stored
  //! as (-hi, -lo], which differs by a null set and keeps the class closed.
  IntervalSet reflect() const {
    IntervalSet out;
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
      out.parts_.push_back(Interval{-it->hi, -it->lo});
    return out;
  }

  friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> all = a.parts_;
    all.insert(all.end(), b.parts_.begin(), b.parts_.end());
    return normalize(std::move(all));
  }

  friend IntervalSet set_intersection(const IntervalSet& a,
                                      const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
      const Interval& x = a.parts_[i];
      const Interval& y = b.parts_[j];
      Rational lo = max(x.lo, y.lo);
      Rational hi = min(x.hi, y.hi);
      if (lo < hi) out.parts_.push_back(Interval{lo, hi});
      if (x.hi < y.hi)
        ++i;
      else
        ++j;
    }
    return out;
  }

  friend IntervalSet set_difference(const IntervalSet& a,
                                    const IntervalSet& b) {
    IntervalSet out;
    std::size_t j = 0;
    for (const auto& x : a.parts_) {
      Rational cursor = x.lo;
      while (j < b.parts_.size() && b.parts_[j].hi <= cursor) ++j;
      std::size_t k = j;
      while (k < b.parts_.size() && b.parts_[k].lo < x.hi) {
        const Interval& y = b.parts_[k];
        if (y.lo > cursor) out.parts_.push_back(Interval{cursor, y.lo});
        cursor = max(cursor, y.hi);
        if (cursor >= x.hi) break;
        ++k;
      }
      if (cursor < x.hi) out.parts_.push_back(Interval{cursor, x.hi});
    }
    // pieces are already sorted/disjoint, but cuts may have created
    // adjacencies with identical endpoints; re-merge to stay canonical
    std::vector<Interval> raw = std::move(out.parts_);
    return raw.empty() ? IntervalSet() : normalize(std::move(raw));
  }

  //! True when 0 lies in the closure of the set.
  bool closure_contains_zero() const {
    for (const auto& iv : parts_)
      if (iv.lo.sign() <= 0 && iv.hi.sign() >= 0) return true;
    return false;
  }

  //! Smallest and largest |x| over the closure, as the pair (s_lo, s_hi).
  //! Requires a nonempty set with closure away from 0; every support point
  //! then satisfies s_lo <= |x| <= s_hi (s_lo attained only in the closure).
  std::pair<Rational, Rational> magnitude_bounds() const {
    if (is_empty()) throw EmptyInput("magnitude_bounds of empty set");
    if (closure_contains_zero())
      throw ContainsOrigin("magnitude_bounds: closure contains 0");
    bool first = true;
    Rational lo(0), hi(0);
    for (const auto& iv : parts_) {
      Rational a = min(iv.lo.abs(), iv.hi.abs());
      Rational b = max(iv.lo.abs(), iv.hi.abs());
      if (first) {
        lo = a;
        hi = b;
        first = false;
      } else {
        lo = min(lo, a);
        hi = max(hi, b);
      }
    }
    return {lo, hi};
  }

  //! E intersected with { x : |x| <= r } (up to endpoints at -r).
  IntervalSet clip_magnitude_below(const Rational& r) const {
    if (r.sign() <= 0) return IntervalSet();
    return set_intersection(*this, IntervalSet::single(-r, r));
  }

  //! E intersected with { x : |x| > r }.
  IntervalSet clip_magnitude_above(const Rational& r) const {
    if (r.sign() <= 0) return *this;
    return set_difference(*this, IntervalSet::single(-r, r));
  }

  //! Leftmost subset of exactly the given measure (splits one interval at a
  //! rational point when needed).
  IntervalSet take_prefix(const Rational& amount) const {
    if (amount.sign() < 0) throw ZeroMass("take_prefix of negative amount");
    IntervalSet out;
    Rational left = amount;
    for (const auto& iv : parts_) {
      if (left.is_zero()) break;
      Rational len = iv.length();
      if (len <= left) {
        out.parts_.push_back(iv);
        left -= len;
      } else {
        out.parts_.push_back(Interval{iv.lo, iv.lo + left});
        left = Rational(0);
      }
    }
    if (!left.is_zero())
      throw ZeroMass("take_prefix: set too small by " + left.to_string());
    return out;
  }

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += " u ";
      s += parts_[i].to_string();
    }
    return s;
  }

 private:
  std::vector<Interval> parts_;
};

enum class SetOp { Union, Intersect, Difference };

inline IntervalSet set_algebra(const IntervalSet& a, const IntervalSet& b,
                               SetOp op) {
  switch (op) {
    case SetOp::Union:
      return set_union(a, b);
    case SetOp::Intersect:
      return set_intersection(a, b);
    case SetOp::Difference:
      return set_difference(a, b);
  }
  throw InternalError("bad SetOp");
}

}  // namespace waveset
