#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/step_function.hpp"

namespace waveset {

//! The common fundamental domain W = (-1, -1/2] u (1/2, 1] for integer
//! translations mod 1 and dyadic dilations on R \ {0}.
inline const IntervalSet& fundamental_domain() {
  static const IntervalSet w = IntervalSet::normalize(
      {Interval{Rational(-1), Rational(-1, 2)},
       Interval{Rational(1, 2), Rational(1)}});
  return w;
}

//! The unit window (0, 1], congruent to W mod 1; translation multiplicity
//! lives here to avoid splitting every cell at +-1/2.
inline const IntervalSet& unit_window() {
  static const IntervalSet u =
      IntervalSet::single(Rational(0), Rational(1));
  return u;
}

// ---- point projections ------------------------------------------------

//! Translation projection: the unique element of { x + k : k in Z } in W.
//! Computed via the representative u of x mod 1 in (0, 1]: u itself when
//! u > 1/2, else u - 1.
inline Quad tau_point(const Quad& x) {
  mpz_class k = x.floor();
  Quad u = x - Quad(Rational(k));
  if (u.is_zero()) u = Quad(Rational(1));  // integers map to 1
  if (u > Quad(Rational(1, 2))) return u;
  return u - Quad(Rational(1));
}

//! Dilation projection: the unique 2^j x in W; sign preserved.
inline Quad d_point(const Quad& x) {
  if (x.is_zero()) throw ZeroPoint("d_point(0) is undefined");
  Quad y = x;
  const Quad one(Rational(1));
  const Quad half(Rational(1, 2));
  if (x.sign() > 0) {
    while (y > one) y = y.mul_pow2(-1);
    while (y <= half) y = y.mul_pow2(1);
  } else {
    const Quad neg_one(Rational(-1));
    const Quad neg_half(Rational(-1, 2));
    while (y <= neg_one) y = y.mul_pow2(-1);
    while (y > neg_half) y = y.mul_pow2(1);
  }
  return y;
}

// ---- periodizations ------------------------------------------------------

//! sum_k f(xi + k) represented on (0, 1]. Mass is conserved exactly:
//! the integral over (0, 1] equals integral of f over R.
inline StepFunction periodize_translation(const StepFunction& f) {
  std::vector<Cell> pieces;
  for (const auto& c : f.cells()) {
    mpz_class k_lo = c.lo.floor();
    mpz_class k_hi = c.hi.ceil();
    for (mpz_class k = k_lo; k < k_hi; k = k + 1) {
      Rational rk{mpz_class(k)};
      Rational lo = max(c.lo, rk);
      Rational hi = min(c.hi, rk + Rational(1));
      if (lo < hi) pieces.push_back({lo - rk, hi - rk, c.value});
    }
  }
  return StepFunction::accumulate(pieces);
}

namespace detail {

//! Smallest j in Z with 2^j * x > c (x, c > 0), by exact doubling.
inline long min_pow2_exceeding(const Rational& x, const Rational& c) {
  long j = 0;
  while (x.mul_pow2(j) <= c) ++j;
  while (x.mul_pow2(j - 1) > c) --j;
  return j;
}

}  // namespace detail

//! sum_j f(2^j xi) represented on W (both signed components).
//! Requires the support closure away from 0.
inline StepFunction periodize_dilation(const StepFunction& f) {
  if (f.is_zero()) return StepFunction();
  if (f.support().closure_contains_zero())
    throw ContainsOrigin("dilation periodization: support closure meets 0");
  const Rational half(1, 2), one(1);
  std::vector<Cell> pieces;
  for (const auto& c : f.cells()) {
    bool positive = c.lo.sign() >= 0;
    Rational inner = positive ? c.lo : c.hi.abs();
    Rational outer = positive ? c.hi : c.lo.abs();
    // 2^j cell meets its W component iff 2^j outer > 1/2 and 2^j inner < 1
    long j = detail::min_pow2_exceeding(outer, half);
    for (; inner.mul_pow2(j) < one; ++j) {
      Rational slo = c.lo.mul_pow2(j), shi = c.hi.mul_pow2(j);
      Rational lo = positive ? max(slo, half) : max(slo, Rational(-1));
      Rational hi = positive ? min(shi, one) : min(shi, -half);
      if (lo < hi) pieces.push_back({lo, hi, c.value});
    }
  }
  return StepFunction::accumulate(pieces);
}

// ---- multiplicity functions and verdicts ---------------------------------

//! xi -> sum_k 1_E(xi + k) on (0, 1], exact integer values.
inline StepFunction translation_multiplicity(const IntervalSet& e) {
  return periodize_translation(StepFunction::indicator(e));
}

//! xi -> sum_j 1_E(2^j xi) on W. Throws ContainsOrigin when 0 is in the
//! closure of E (the multiplicity would not be finitely representable).
inline StepFunction dilation_multiplicity(const IntervalSet& e) {
  if (e.closure_contains_zero())
    throw ContainsOrigin("dilation multiplicity: closure of E contains 0");
  return periodize_dilation(StepFunction::indicator(e));
}

enum class TilingAction { Translation, Dilation };
enum class TilingVerdict { Tiles, PacksStrictly, Overlaps, Mixed };

inline std::string to_string(TilingVerdict v) {
  switch (v) {
    case TilingVerdict::Tiles: return "tiles";
    case TilingVerdict::PacksStrictly: return "packs-strictly";
    case TilingVerdict::Overlaps: return "overlaps";
    case TilingVerdict::Mixed: return "mixed";
  }
  return "?";
}

//! Multiplicity function plus the verdict it determines, with up to three
//! witness cells where the multiplicity differs from 1.
struct TilingReport {
  TilingAction action = TilingAction::Translation;
  StepFunction multiplicity;
  TilingVerdict verdict = TilingVerdict::Tiles;
  std::vector<Cell> witnesses;

  bool tiles() const { return verdict == TilingVerdict::Tiles; }
};

inline TilingReport tiling_verdict(const IntervalSet& e, TilingAction action) {
  TilingReport rep;
  rep.action = action;
  const IntervalSet& dom = action == TilingAction::Translation
                               ? unit_window()
                               : fundamental_domain();
  rep.multiplicity = action == TilingAction::Translation
                         ? translation_multiplicity(e)
                         : dilation_multiplicity(e);
  std::vector<Cell> bad = rep.multiplicity.deviations_on(Rational(1), dom);
  bool gap = false, overlap = false;
  for (const auto& c : bad) {
    if (c.value < Rational(1)) gap = true;
    if (c.value > Rational(1)) overlap = true;
  }
  if (bad.empty())
    rep.verdict = TilingVerdict::Tiles;
  else if (gap && overlap)
    rep.verdict = TilingVerdict::Mixed;
  else if (gap)
    rep.verdict = TilingVerdict::PacksStrictly;
  else
    rep.verdict = TilingVerdict::Overlaps;
  for (std::size_t i = 0; i < bad.size() && i < 3; ++i)
    rep.witnesses.push_back(bad[i]);
  return rep;
}

//! True when multiplicity <= 1 everywhere (gaps allowed).
inline bool packs(const IntervalSet& e, TilingAction action) {
  TilingReport rep = tiling_verdict(e, action);
  return rep.verdict == TilingVerdict::Tiles ||
         rep.verdict == TilingVerdict::PacksStrictly;
}

//! Both verdicts together; a set with 0 in its support closure counts as
//! not-a-wavelet-set with a diagnostic rather than an error.
struct WaveletSetReport {
  bool is_wavelet_set = false;
  std::optional<TilingReport> translation;
  std::optional<TilingReport> dilation;
  std::string diagnostic;
};

inline WaveletSetReport is_wavelet_set(const IntervalSet& e) {
  WaveletSetReport rep;
  rep.translation = tiling_verdict(e, TilingAction::Translation);
  try {
    rep.dilation = tiling_verdict(e, TilingAction::Dilation);
  } catch (const ContainsOrigin& err) {
    rep.is_wavelet_set = false;
    rep.diagnostic = err.what();
    return rep;
  }
  rep.is_wavelet_set = rep.translation->tiles() && rep.dilation->tiles();
  if (!rep.is_wavelet_set)
    rep.diagnostic = !rep.translation->tiles()
                         ? "translation multiplicity differs from 1"
                         : "dilation multiplicity differs from 1";
  return rep;
}

enum class Projection { Tau, D };

//! Exact image of E in W under the translation (tau) or dilation (d)
//! projection; this is the support of the corresponding multiplicity.
inline IntervalSet project_set(const IntervalSet& e, Projection which) {
  if (e.is_empty()) return IntervalSet();
  if (which == Projection::D) {
    if (e.closure_contains_zero())
      throw ContainsOrigin("d-projection: closure of E contains 0");
    return periodize_dilation(StepFunction::indicator(e)).support();
  }
  IntervalSet on_unit = periodize_translation(StepFunction::indicator(e)).support();
  // move (0, 1/2] down by 1; (1/2, 1] stays
  IntervalSet low = set_intersection(
      on_unit, IntervalSet::single(Rational(0), Rational(1, 2)));
  IntervalSet high = set_difference(on_unit, low);
  return set_union(low.act(0, Rational(-1)), high);
}

}  // namespace waveset
