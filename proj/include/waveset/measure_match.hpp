#pragma once

#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/measure.hpp"
#include "waveset/step_function.hpp"

namespace waveset {

//! The pair (integral of f dm, integral of f dnu), the measure data that a
//! tiling function always normalizes to (1, 1).
inline std::pair<Rational, NuValue> integrals(const StepFunction& f) {
  return {f.integral_dm(), f.integral_dnu()};
}

namespace detail {

//! m(E intersect { |x| <= s }), a piecewise-linear increasing function of s.
inline Rational mass_within_magnitude(const IntervalSet& e,
                                      const Rational& s) {
  return e.clip_magnitude_below(s).lebesgue();
}

//! Leftmost s with m(E intersect { |x| <= s }) = target, solved exactly on
//! the magnitude grid of E's endpoints.
inline Rational solve_magnitude_radius(const IntervalSet& e,
                                       const Rational& target) {
  if (target.sign() < 0) throw InternalError("negative mass target");
  if (target.is_zero()) return Rational(0);
  if (target > e.lebesgue())
    throw InternalError("mass target exceeds the set");
  std::vector<Rational> grid{Rational(0)};
  for (const auto& iv : e.parts()) {
    grid.push_back(iv.lo.abs());
    grid.push_back(iv.hi.abs());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  Rational prev_s(0), prev_mass(0);
  for (const auto& s : grid) {
    Rational mass = mass_within_magnitude(e, s);
    if (mass >= target) {
      // linear on [prev_s, s]: density = (mass - prev_mass)/(s - prev_s)
      if (mass == target) return s;
      Rational density = (mass - prev_mass) / (s - prev_s);
      return prev_s + (target - prev_mass) / density;
    }
    prev_s = s;
    prev_mass = mass;
  }
  throw InternalError("magnitude solve fell off the grid");
}

}  // namespace detail

//! Result of an interpolation run, with the scan/bisection trace for the
//! report ("t" is the window radius, nu the measure of the candidate).
struct InterpolationTrace {
  struct Step {
    Rational t;
    NuValue nu_value;
    bool from_bisection = false;
  };
  std::vector<Step> steps;
};

namespace detail {

//! The interpolation family: W_t = (U intersect {|x| <= t}) union
//! (V minus {|x| <= s}), with s solved exactly so that m(W_t) = c1 even when
//! U and V overlap.
inline IntervalSet interpolation_candidate(const IntervalSet& u,
                                           const IntervalSet& v,
                                           const Rational& c1,
                                           const Rational& t) {
  IntervalSet u_t = u.clip_magnitude_below(t);
  Rational need = c1 - u_t.lebesgue();
  IntervalSet v_rest = set_difference(v, u_t);
  // choose s with m(v_rest minus {|x| <= s}) = need; solving for the inner
  // mass m(v_rest) - need keeps everything exact, so m(W_t) = c1 on the nose
  // even when U and V overlap
  Rational s = detail::solve_magnitude_radius(v_rest,
                                              v_rest.lebesgue() - need);
  IntervalSet v_t = v_rest.clip_magnitude_above(s);
  if (v_t.lebesgue() != need)
    throw InternalError("interpolation family lost mass");
  return set_union(u_t, v_t);
}

}  // namespace detail

//! Intermediate value construction: given U, V of equal Lebesgue mass c1 with
//! nu(U) <= target <= nu(V), produces W inside U union V with m(W) = c1
//! exactly and |nu(W) - target| <= tol. The family W_t grows U from the
//! origin outward while trimming V from the origin outward; the nu-value
//! moves continuously from nu(V) to nu(U), so a breakpoint scan brackets the
//! target and bisection finishes within tolerance.
inline IntervalSet interpolate_sets(const IntervalSet& u, const IntervalSet& v,
                                    const NuValue& target, const Rational& tol,
                                    InterpolationTrace* trace = nullptr) {
  Rational c1 = u.lebesgue();
  if (c1.is_zero()) throw ZeroMass("interpolation with zero Lebesgue mass");
  if (v.lebesgue() != c1)
    throw MassMismatch("m(U) = " + c1.to_string() +
                       " but m(V) = " + v.lebesgue().to_string());
  if (target.is_infinite())
    throw TargetOutOfRange("target nu must be finite");

  NuValue nu_u = nu(u);
  IntervalSet v_eff = v;
  NuValue nu_v = nu(v);
  if (nu_v.is_infinite()) {
    // trim V away from 0 while keeping nu above the target, then restore the
    // Lebesgue mass from U \ V1
    bool trimmed = false;
    for (long t = 1; t <= 400; ++t) {
      Rational eps = Rational(1).mul_pow2(-t);
      IntervalSet v1 = v.clip_magnitude_above(eps);
      if (v1.is_empty()) continue;
      NuValue nu_v1 = nu(v1);
      if (nu_v1.cmp(target) > 0) {
        Rational missing = c1 - v1.lebesgue();
        IntervalSet pool = set_difference(u, v1);
        IntervalSet v2 = pool.take_prefix(missing);
        v_eff = set_union(v1, v2);
        trimmed = true;
        break;
      }
    }
    if (!trimmed)
      throw TargetOutOfRange("could not trim an infinite nu(V) above target");
    nu_v = nu(v_eff);
  }

  if (nu_u.cmp(target) > 0 && !nu_u.within(target, tol))
    throw TargetOutOfRange("target below nu(U) = " + nu_u.to_string());
  if (nu_v.cmp(target) < 0 && !nu_v.within(target, tol))
    throw TargetOutOfRange("target above nu(V) = " + nu_v.to_string());

  auto record = [&](const Rational& t, const NuValue& val, bool bis) {
    if (trace) trace->steps.push_back({t, val, bis});
  };

  // scan the magnitude grid of U for a bracket (nu need not be monotone)
  std::vector<Rational> grid{Rational(0)};
  for (const auto& iv : u.parts()) {
    grid.push_back(iv.lo.abs());
    grid.push_back(iv.hi.abs());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  Rational lo_t, hi_t;
  int lo_sign = 0;
  bool have_prev = false;
  Rational prev_t;
  int prev_sign = 0;
  for (const auto& t : grid) {
    IntervalSet w = detail::interpolation_candidate(u, v_eff, c1, t);
    NuValue val = nu(w);
    record(t, val, false);
    if (val.within(target, tol)) return w;
    int s = val.cmp(target);
    if (have_prev && s != prev_sign) {
      lo_t = prev_t;
      hi_t = t;
      lo_sign = prev_sign;
      break;
    }
    have_prev = true;
    prev_t = t;
    prev_sign = s;
  }
  if (lo_sign == 0)
    throw TargetOutOfRange("no nu bracket across the interpolation family");

  for (int iter = 0; iter < 400; ++iter) {
    Rational mid = (lo_t + hi_t) / Rational(2);
    IntervalSet w = detail::interpolation_candidate(u, v_eff, c1, mid);
    NuValue val = nu(w);
    record(mid, val, true);
    if (val.within(target, tol)) return w;
    if (val.cmp(target) == lo_sign)
      lo_t = mid;
    else
      hi_t = mid;
  }
  throw InternalError("nu bisection failed to converge");
}

//! Report of a measure matching run.
struct MeasureMatchResult {
  IntervalSet set;
  Rational c1;
  NuValue c2;
  Rational achieved_m;
  NuValue achieved_nu;
  InterpolationTrace trace;
};

//! From a step function f with 0 <= f <= 1 and support closure away from 0,
//! builds a set inside supp(f) with Lebesgue measure exactly c1 = int f dm
//! and nu measure within tol of c2 = int f dnu. Follows the proof shape:
//! peel the cells where f = 1 (they join the output wholesale and shift the
//! residual targets), take V as the |x|-innermost part of the remaining
//! support with mass c1' (nu-heaviest, since the nu density decreases in
//! |x|), U as the |x|-outermost part (nu-lightest), and interpolate.
inline MeasureMatchResult find_set_with_measures(const StepFunction& f,
                                                 const Rational& tol) {
  for (const auto& c : f.cells())
    if (c.value > Rational(1))
      throw ValueOutOfRange("f = " + c.value.to_string() + " > 1 on (" +
                            c.lo.to_string() + ", " + c.hi.to_string() + "]");
  MeasureMatchResult out;
  out.c1 = f.integral_dm();
  out.c2 = f.integral_dnu();
  if (out.c2.is_infinite())
    throw ContainsOrigin("support closure meets 0: nu integral is infinite");
  if (out.c1.is_zero()) {
    out.achieved_m = Rational(0);
    out.achieved_nu = NuValue::exact(Rational(0));
    return out;
  }

  // peel F = { f = 1 }
  IntervalSet peeled = f.level_set(Rational(1));
  Rational c1_rem = out.c1 - peeled.lebesgue();
  NuValue c2_rem = out.c2 - nu(peeled);

  IntervalSet w;
  if (c1_rem.is_zero()) {
    w = peeled;
  } else {
    StepFunction rem = StepFunction::from_cells([&] {
      std::vector<Cell> cells;
      for (const auto& c : f.cells())
        if (c.value < Rational(1)) cells.push_back(c);
      return cells;
    }());
    IntervalSet e = rem.support();

    Rational r0 = detail::solve_magnitude_radius(e, c1_rem);
    IntervalSet v = e.clip_magnitude_below(r0);
    Rational r1 = detail::solve_magnitude_radius(e, e.lebesgue() - c1_rem);
    IntervalSet u = e.clip_magnitude_above(r1);
    if (v.lebesgue() != c1_rem || u.lebesgue() != c1_rem)
      throw InternalError("window slices lost mass");

    // the proof's inequality chain: the innermost slice is nu-heaviest, the
    // outermost is nu-lightest
    NuValue nu_v = nu(v), nu_u = nu(u);
    if (nu_v.cmp(c2_rem) < 0 && !nu_v.within(c2_rem, tol))
      throw InternalError("inner slice lost the nu inequality");
    if (nu_u.cmp(c2_rem) > 0 && !nu_u.within(c2_rem, tol))
      throw InternalError("outer slice lost the nu inequality");

    IntervalSet core =
        interpolate_sets(u, v, c2_rem, tol, &out.trace);
    w = set_union(core, peeled);
  }

  if (!w.subset_of(f.support()))
    throw InternalError("output escapes the support");
  out.set = w;
  out.achieved_m = w.lebesgue();
  out.achieved_nu = nu(w);
  if (out.achieved_m != out.c1)
    throw InternalError("Lebesgue mass must match exactly");
  if (!out.achieved_nu.within(out.c2, tol))
    throw InternalError("nu missed the tolerance");
  return out;
}

}  // namespace waveset
