#pragma once

#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/tiling.hpp"

namespace waveset {

namespace detail {

//! Position of k in the enumeration 0, 1, -1, 2, -2, ...; the enumeration
//! order pins the greedy outputs and the searched shifts.
inline long enumeration_index(long k) { return k > 0 ? 2 * k - 1 : -2 * k; }

//! All integers of [lo, hi] sorted by enumeration order.
inline std::vector<long> enumerate_range(long lo, long hi) {
  std::vector<long> ks;
  for (long k = lo; k <= hi; ++k) ks.push_back(k);
  std::sort(ks.begin(), ks.end(), [](long a, long b) {
    return enumeration_index(a) < enumeration_index(b);
  });
  return ks;
}

//! Union of (g + k) over every integer k that can touch the window.
inline IntervalSet translated_cover(const IntervalSet& g,
                                    const Interval& window) {
  if (g.is_empty()) return IntervalSet();
  Rational g_lo = g.parts().front().lo, g_hi = g.parts().back().hi;
  mpz_class k_lo = (window.lo - g_hi).floor();
  mpz_class k_hi = (window.hi - g_lo).ceil();
  IntervalSet out;
  for (mpz_class k = k_lo; k <= k_hi; k = k + 1)
    out = set_union(out, g.act(0, Rational(mpz_class(k))));
  return out;
}

//! Union of 2^i g over every i for which 2^i g can touch the annulus of the
//! window (both sets away from 0).
inline IntervalSet dilated_cover(const IntervalSet& g,
                                 const Interval& window) {
  if (g.is_empty()) return IntervalSet();
  auto [g_lo, g_hi] = g.magnitude_bounds();
  Rational w_in = min(window.lo.abs(), window.hi.abs());
  Rational w_out = max(window.lo.abs(), window.hi.abs());
  // need 2^i g_hi > w_in and 2^i g_lo < w_out
  long i_first = min_pow2_exceeding(g_hi, w_in);
  IntervalSet out;
  for (long i = i_first; g_lo.mul_pow2(i) < w_out; ++i)
    out = set_union(out, g.act(i, Rational(0)));
  return out;
}

}  // namespace detail

//! The greedy subset extraction of a translation-tiling subset: windows
//! (k, k+1] are visited in the order k = 0, 1, -1, 2, -2, ...; each window
//! contributes the part of E it contains that is not yet covered by integer
//! translates of the running set. Requires translation multiplicity >= 1
//! everywhere on (0, 1]; the result G is an exact subset of E whose
//! translation multiplicity is identically 1. The optional trace receives
//! the running set after each window (its multiplicity never exceeds 1).
inline IntervalSet greedy_translation_subset(
    const IntervalSet& e, std::vector<IntervalSet>* trace = nullptr) {
  StepFunction mult = translation_multiplicity(e);
  auto bad = mult.deviations_on(Rational(1), unit_window());
  for (const auto& c : bad)
    if (c.value < Rational(1))
      throw Undercovered("translation multiplicity " + c.value.to_string() +
                         " on (" + c.lo.to_string() + ", " +
                         c.hi.to_string() + "]");
  if (e.is_empty()) return e;
  Rational e_lo = e.parts().front().lo, e_hi = e.parts().back().hi;
  long k_first = static_cast<long>((e_lo - Rational(1)).floor().get_si());
  long k_last = static_cast<long>(e_hi.ceil().get_si());
  IntervalSet g;
  for (long k : detail::enumerate_range(k_first, k_last)) {
    Interval window{Rational(k), Rational(k + 1)};
    IntervalSet piece =
        set_intersection(e, IntervalSet::single(window.lo, window.hi));
    piece = set_difference(piece, detail::translated_cover(g, window));
    g = set_union(g, piece);
    if (trace) trace->push_back(g);
  }
  return g;
}

//! Dilation analogue: windows 2^j W in the order j = 0, 1, -1, 2, -2, ...
//! Requires dilation multiplicity >= 1 on W and 0 outside the closure of E.
inline IntervalSet greedy_dilation_subset(
    const IntervalSet& e, std::vector<IntervalSet>* trace = nullptr) {
  StepFunction mult = dilation_multiplicity(e);  // throws ContainsOrigin
  auto bad = mult.deviations_on(Rational(1), fundamental_domain());
  for (const auto& c : bad)
    if (c.value < Rational(1))
      throw Undercovered("dilation multiplicity " + c.value.to_string() +
                         " on (" + c.lo.to_string() + ", " +
                         c.hi.to_string() + "]");
  auto [s_lo, s_hi] = e.magnitude_bounds();
  // 2^j W = (-2^j, -2^(j-1)] u (2^(j-1), 2^j] meets E iff 2^j > s_lo and
  // 2^(j-1) < s_hi
  long j_min = detail::min_pow2_exceeding(Rational(1), s_lo);
  long j_max = detail::min_pow2_exceeding(Rational(1), s_hi);
  IntervalSet g;
  for (long j : detail::enumerate_range(j_min, j_max)) {
    IntervalSet window = fundamental_domain().act(j, Rational(0));
    IntervalSet piece = set_intersection(e, window);
    if (!piece.is_empty()) {
      IntervalSet cover;
      for (const auto& w : window.parts())
        cover = set_union(cover, detail::dilated_cover(g, w));
      piece = set_difference(piece, cover);
    }
    g = set_union(g, piece);
    if (trace) trace->push_back(g);
  }
  return g;
}

// ---- Speegle point conditions ----------------------------------------------

//! Result of the finite point-set check: when the conditions hold, delta is
//! the certified dyadic radius 2^-t (smallest t whose ball union passes the
//! packing, integer-avoidance and dilation-gap checks exactly).
struct SpeegleResult {
  bool ok = false;
  Rational delta;
  std::string reason;
};

namespace detail {

//! All four exact conditions on F = union of (x - delta, x + delta]:
//! packs by translations, packs by dilations, closure of union(F + k)
//! avoids Z, and the dilates of F leave a gap in W.
inline bool delta_certifies(const std::vector<Rational>& xs,
                            const Rational& delta) {
  std::vector<Interval> balls;
  for (const auto& x : xs) balls.push_back({x - delta, x + delta});
  IntervalSet f = IntervalSet::normalize(balls);
  if (f.lebesgue() != delta * Rational(2 * static_cast<long>(xs.size())))
    return false;  // balls overlap each other
  if (f.closure_contains_zero()) return false;
  if (!packs(f, TilingAction::Translation)) return false;
  if (!packs(f, TilingAction::Dilation)) return false;
  // closure of union(F + k) misses Z iff every x keeps |x - round(x)| > delta
  for (const auto& x : xs) {
    Rational fr = x - Rational(x.floor());
    Rational dist = min(fr, Rational(1) - fr);
    if (dist <= delta) return false;
  }
  // dilates of F must leave an interval free: the d-projection must not
  // exhaust W
  IntervalSet dproj = project_set(f, Projection::D);
  if (set_difference(fundamental_domain(), dproj).is_empty()) return false;
  return true;
}

}  // namespace detail

//! Checks the three finite separation conditions on a point set: no element
//! integral, no two elements differing by a nonzero integer, no ratio equal
//! to +-2^j with j != 0. On success also certifies a dyadic ball radius.
inline SpeegleResult check_speegle_conditions(const std::vector<Rational>& xs,
                                              long max_t = 40) {
  if (xs.empty()) throw EmptyInput("speegle check: empty point set");
  for (const auto& x : xs)
    if (x.is_zero()) throw ZeroElement("speegle check: zero element");
  SpeegleResult res;
  for (const auto& x : xs)
    if (x.is_integer()) {
      res.reason = "element " + x.to_string() + " is an integer";
      return res;
    }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      Rational diff = xs[i] - xs[j];
      if (!diff.is_zero() && diff.is_integer()) {
        res.reason = "difference " + xs[i].to_string() + " - " +
                     xs[j].to_string() + " is a nonzero integer";
        return res;
      }
      Rational ratio = xs[i] / xs[j];
      if (auto t = ratio.abs().dyadic_log2(); t && *t != 0) {
        res.reason = "ratio " + xs[i].to_string() + " / " +
                     xs[j].to_string() + " is a dyadic power";
        return res;
      }
    }
  for (long t = 1; t <= max_t; ++t) {
    Rational delta = Rational(1).mul_pow2(-t);
    if (detail::delta_certifies(xs, delta)) {
      res.ok = true;
      res.delta = delta;
      return res;
    }
  }
  res.reason = "no certifying dyadic radius found down to 2^-" +
               std::to_string(max_t);
  return res;
}

// ---- the U / V construction -----------------------------------------------

//! The construction toward a containing wavelet set: F is the union of the
//! epsilon-balls, U packs by translations and tiles by dilations, V packs by
//! dilations and tiles by translations, with F inside both. J and k are the
//! integer parameters found by the exact searches.
struct UVConstruction {
  IntervalSet f;
  IntervalSet u;
  IntervalSet v;
  long dilation_exponent = 0;  // J with U = 2^J U1 u F
  long translation_shift = 0;  // k with V = F u (V2 + k)
  Rational delta;              // the certified radius the epsilons beat
};

inline UVConstruction build_U_V(const std::vector<Rational>& xs,
                                const std::vector<Rational>& eps) {
  SpeegleResult sp = check_speegle_conditions(xs);
  if (!sp.ok) throw Error("point set fails conditions: " + sp.reason);
  if (eps.size() != xs.size())
    throw Error("need one epsilon per point");
  for (const auto& e : eps)
    if (e.sign() <= 0 || e >= sp.delta)
      throw EpsilonTooLarge("epsilon " + e.to_string() +
                            " not inside (0, " + sp.delta.to_string() + ")");

  UVConstruction out;
  out.delta = sp.delta;
  std::vector<Interval> balls;
  for (std::size_t i = 0; i < xs.size(); ++i)
    balls.push_back({xs[i] - eps[i], xs[i] + eps[i]});
  out.f = IntervalSet::normalize(balls);

  // U1 = (+-(1, 2]) \ union of dilates of F
  IntervalSet annulus = IntervalSet::normalize(
      {Interval{Rational(-2), Rational(-1)}, Interval{Rational(1), Rational(2)}});
  IntervalSet dil_f_on_annulus;
  {
    IntervalSet acc;
    for (const auto& w : annulus.parts())
      acc = set_union(acc, detail::dilated_cover(out.f, w));
    dil_f_on_annulus = set_intersection(acc, annulus);
  }
  IntervalSet u1 = set_difference(annulus, dil_f_on_annulus);

  // choose J with 2^J U1 disjoint from the closure of union(F + k);
  // shrinking toward 0 must eventually work since that closure avoids Z
  long chosen_j = 0;
  bool found_j = false;
  for (long J = 0; J >= -64; --J) {
    IntervalSet cand = u1.act(J, Rational(0));
    bool clean = true;
    for (std::size_t i = 0; i < xs.size() && clean; ++i) {
      // closure of ball i translated: [x - eps + k, x + eps + k]
      Rational c_lo = xs[i] - eps[i], c_hi = xs[i] + eps[i];
      for (const auto& part : cand.parts()) {
        mpz_class k0 = (part.lo - c_hi).floor();
        mpz_class k1 = (part.hi - c_lo).ceil();
        for (mpz_class k = k0; k <= k1 && clean; k = k + 1) {
          Rational rk{mpz_class(k)};
          // closed-interval overlap test against half-open part
          if (c_lo + rk <= part.hi && c_hi + rk > part.lo) clean = false;
        }
        if (!clean) break;
      }
    }
    if (clean) {
      chosen_j = J;
      found_j = true;
      break;
    }
  }
  if (!found_j) throw InternalError("no dilation exponent J found");
  out.dilation_exponent = chosen_j;
  out.u = set_union(u1.act(chosen_j, Rational(0)), out.f);

  // V2 = (0, 1] \ union(F + k); find k with (k, k+1] free of all dilates of
  // F, then V = F u (V2 + k). Windows (k, k+1] with k in {0, -1} are skipped:
  // they touch 0 and cannot pack by dilations.
  IntervalSet v2 = set_difference(
      unit_window(),
      detail::translated_cover(out.f, Interval{Rational(0), Rational(1)}));
  long chosen_k = 0;
  bool found_k = false;
  for (long k : detail::enumerate_range(-2048, 2048)) {
    if (k == 0 || k == -1) continue;
    Interval window{Rational(k), Rational(k + 1)};
    IntervalSet hit = set_intersection(
        detail::dilated_cover(out.f, window),
        IntervalSet::single(window.lo, window.hi));
    if (hit.is_empty()) {
      chosen_k = k;
      found_k = true;
      break;
    }
  }
  if (!found_k) throw InternalError("no translation shift k found");
  out.translation_shift = chosen_k;
  out.v = set_union(out.f, v2.act(0, Rational(chosen_k)));
  return out;
}

// ---- the four containment conditions -----------------------------------------

//! The four conditions under which F sits inside a wavelet set: F packs both
//! ways, U covers F packing by translations while tiling by dilations, and V
//! covers F packing by dilations while tiling by translations.
struct IpConditionReport {
  bool f_packs_translations = false;
  bool f_packs_dilations = false;
  bool u_valid = false;  // F subset of U, U packs (tt), U tiles (dt)
  bool v_valid = false;  // F subset of V, V packs (dt), V tiles (tt)
  std::string detail;

  bool all() const {
    return f_packs_translations && f_packs_dilations && u_valid && v_valid;
  }
};

inline IpConditionReport check_ip_conditions(const IntervalSet& f,
                                             const IntervalSet& u,
                                             const IntervalSet& v) {
  IpConditionReport rep;
  auto safe_packs = [&rep](const IntervalSet& s, TilingAction a,
                           const char* label) {
    try {
      return packs(s, a);
    } catch (const ContainsOrigin&) {
      rep.detail += std::string(label) + ": closure contains 0; ";
      return false;
    }
  };
  rep.f_packs_translations = packs(f, TilingAction::Translation);
  rep.f_packs_dilations = safe_packs(f, TilingAction::Dilation, "F");
  bool u_contains = f.subset_of(u);
  bool u_packs = packs(u, TilingAction::Translation);
  bool u_tiles = false;
  try {
    u_tiles = tiling_verdict(u, TilingAction::Dilation).tiles();
  } catch (const ContainsOrigin&) {
    rep.detail += "U: closure contains 0; ";
  }
  rep.u_valid = u_contains && u_packs && u_tiles;
  if (!u_contains) rep.detail += "F not inside U; ";
  bool v_contains = f.subset_of(v);
  bool v_packs = safe_packs(v, TilingAction::Dilation, "V");
  bool v_tiles = tiling_verdict(v, TilingAction::Translation).tiles();
  rep.v_valid = v_contains && v_packs && v_tiles;
  if (!v_contains) rep.detail += "F not inside V; ";
  return rep;
}

}  // namespace waveset
