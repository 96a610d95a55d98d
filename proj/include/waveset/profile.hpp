#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "waveset/errors.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/step_function.hpp"
#include "waveset/tiling.hpp"

namespace waveset {

//! Exact complex value with rational components.
struct CRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CRational conj() const { return {re, -im}; }
  Rational modulus_squared() const { return re * re + im * im; }

  friend CRational operator+(const CRational& a, const CRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend CRational operator*(const CRational& a, const CRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  std::string to_string() const {
    return re.to_string() + (im.sign() < 0 ? "" : "+") + im.to_string() + "i";
  }
};

//! One constant piece of a complex profile: value on (lo, hi].
struct ProfileCell {
  Rational lo;
  Rational hi;
  CRational value;

  friend bool operator==(const ProfileCell& a, const ProfileCell& b) {
    return a.lo == b.lo && a.hi == b.hi && a.value == b.value;
  }
};

namespace detail {

//! Canonicalizes complex cells: sorted, disjoint, zero cells dropped,
//! adjacent equal-valued cells merged.
inline std::vector<ProfileCell> canonicalize_cells(
    std::vector<ProfileCell> raw) {
  for (const auto& c : raw)
    if (!(c.lo < c.hi))
      throw MalformedInterval("profile cell with lo >= hi");
  std::sort(raw.begin(), raw.end(),
            [](const ProfileCell& x, const ProfileCell& y) {
              return x.lo < y.lo;
            });
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i].lo < raw[i - 1].hi)
      throw MalformedInterval("overlapping profile cells");
  std::vector<ProfileCell> out;
  for (auto& c : raw) {
    if (c.value.is_zero()) continue;
    if (!out.empty() && out.back().hi == c.lo && out.back().value == c.value)
      out.back().hi = c.hi;
    else
      out.push_back(std::move(c));
  }
  return out;
}

//! Sums a bag of overlapping complex pieces into canonical disjoint cells.
inline std::vector<ProfileCell> accumulate_cells(
    const std::vector<ProfileCell>& pieces) {
  if (pieces.empty()) return {};
  std::vector<Rational> cuts;
  for (const auto& p : pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<ProfileCell> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    CRational v{Rational(0), Rational(0)};
    for (const auto& p : pieces)
      if (p.lo <= cuts[i] && cuts[i + 1] <= p.hi) v = v + p.value;
    if (!v.is_zero()) out.push_back({cuts[i], cuts[i + 1], v});
  }
  return canonicalize_cells(std::move(out));
}

}  // namespace detail

//! Piecewise-constant complex frequency profile (a candidate psi-hat):
//! exact complex rational values on finitely many half-open cells, zero
//! outside. The support closure must stay away from 0, which bounds it
//! inside an annulus +-[s_lo, s_hi]; dilation-side checks rely on that.
class ComplexProfile {
 public:
  ComplexProfile() = default;

  static ComplexProfile from_cells(std::vector<ProfileCell> raw) {
    ComplexProfile p;
    p.cells_ = detail::canonicalize_cells(std::move(raw));
    for (const auto& c : p.cells_)
      if (c.lo.sign() <= 0 && c.hi.sign() >= 0)
        throw ContainsOrigin(
            "profile support closure meets 0 at cell (" + c.lo.to_string() +
            ", " + c.hi.to_string() + "]");
    return p;
  }

  //! Indicator profile of a set, optionally with a constant phase value.
  static ComplexProfile indicator(const IntervalSet& e,
                                  const CRational& value = {Rational(1),
                                                            Rational(0)}) {
    std::vector<ProfileCell> cells;
    for (const auto& iv : e.parts()) cells.push_back({iv.lo, iv.hi, value});
    return from_cells(std::move(cells));
  }

  const std::vector<ProfileCell>& cells() const { return cells_; }
  bool is_zero() const { return cells_.empty(); }

  IntervalSet support() const {
    std::vector<Interval> parts;
    for (const auto& c : cells_) parts.push_back({c.lo, c.hi});
    return parts.empty() ? IntervalSet()
                         : IntervalSet::normalize(std::move(parts));
  }

  //! |psi-hat|^2 as a nonnegative step function.
  StepFunction modulus_squared() const {
    std::vector<Cell> cells;
    for (const auto& c : cells_)
      cells.push_back({c.lo, c.hi, c.value.modulus_squared()});
    return StepFunction::from_cells(std::move(cells));
  }

  CRational evaluate(const Rational& x) const {
    for (const auto& c : cells_) {
      if (x <= c.lo) break;
      if (x <= c.hi) return c.value;
    }
    return {Rational(0), Rational(0)};
  }

  //! The cell list of xi -> psi_hat(2^j xi), i.e. the domain scaled by 2^-j.
  std::vector<ProfileCell> scaled_domain(long j) const {
    std::vector<ProfileCell> out;
    out.reserve(cells_.size());
    for (const auto& c : cells_)
      out.push_back({c.lo.mul_pow2(-j), c.hi.mul_pow2(-j), c.value});
    return out;
  }

  //! Support annulus magnitudes (s_lo, s_hi); requires a nonzero profile.
  std::pair<Rational, Rational> annulus() const {
    return support().magnitude_bounds();
  }

 private:
  std::vector<ProfileCell> cells_;
};

// ---- equation reports -----------------------------------------------------

enum class EquationStatus { Holds, Fails, HoldsInWindow };

inline std::string to_string(EquationStatus s) {
  switch (s) {
    case EquationStatus::Holds: return "holds";
    case EquationStatus::Fails: return "fails";
    case EquationStatus::HoldsInWindow: return "holds-in-window";
  }
  return "?";
}

//! A cell where an equation's residual is nonzero, with the dilation level
//! it came from where that is meaningful (equations 3 and 4).
struct EquationWitness {
  Rational lo;
  Rational hi;
  CRational residual;
  long level = 0;
};

struct EquationReport {
  int equation = 0;
  EquationStatus status = EquationStatus::Holds;
  std::optional<long> window;   // window parameter, equation 3 only
  std::optional<long> shift_q;  // odd shift, equation 3 only
  std::vector<EquationWitness> witnesses;

  bool ok() const { return status != EquationStatus::Fails; }
};

namespace detail {

inline void collect_witnesses(EquationReport& rep,
                              const std::vector<Cell>& bad) {
  for (const auto& c : bad) {
    if (rep.witnesses.size() >= 8) break;
    rep.witnesses.push_back(
        {c.lo, c.hi, {c.value - Rational(1), Rational(0)}, 0});
  }
}

}  // namespace detail

//! Wavelet system equation 1: sum_k |psi_hat(xi + k)|^2 = 1, checked exactly on (0, 1].
inline EquationReport check_eq1(const ComplexProfile& psi) {
  EquationReport rep;
  rep.equation = 1;
  StepFunction s = periodize_translation(psi.modulus_squared());
  std::vector<Cell> bad = s.deviations_on(Rational(1), unit_window());
  rep.status = bad.empty() ? EquationStatus::Holds : EquationStatus::Fails;
  detail::collect_witnesses(rep, bad);
  return rep;
}

//! Wavelet system equation 2: sum_j |psi_hat(2^j xi)|^2 = 1, checked exactly on W.
inline EquationReport check_eq2(const ComplexProfile& psi) {
  EquationReport rep;
  rep.equation = 2;
  StepFunction s = periodize_dilation(psi.modulus_squared());
  std::vector<Cell> bad = s.deviations_on(Rational(1), fundamental_domain());
  rep.status = bad.empty() ? EquationStatus::Holds : EquationStatus::Fails;
  detail::collect_witnesses(rep, bad);
  return rep;
}

namespace detail {

//! Pointwise product a(xi) * conj(b(xi)) of two complex cell lists.
inline std::vector<ProfileCell> product_conj(
    const std::vector<ProfileCell>& a, const std::vector<ProfileCell>& b) {
  std::vector<ProfileCell> out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      Rational lo = max(x.lo, y.lo);
      Rational hi = min(x.hi, y.hi);
      if (lo < hi) out.push_back({lo, hi, x.value * y.value.conj()});
    }
  }
  return out;
}

//! Translation periodization of a complex cell list onto (0, 1].
inline std::vector<ProfileCell> periodize_translation_complex(
    const std::vector<ProfileCell>& cells) {
  std::vector<ProfileCell> pieces;
  for (const auto& c : cells) {
    mpz_class k_lo = c.lo.floor();
    mpz_class k_hi = c.hi.ceil();
    for (mpz_class k = k_lo; k < k_hi; k = k + 1) {
      Rational rk{mpz_class(k)};
      Rational lo = max(c.lo, rk);
      Rational hi = min(c.hi, rk + Rational(1));
      if (lo < hi) pieces.push_back({lo - rk, hi - rk, c.value});
    }
  }
  return accumulate_cells(pieces);
}

inline std::vector<ProfileCell> shift_cells(std::vector<ProfileCell> cells,
                                            const Rational& delta) {
  for (auto& c : cells) {
    c.lo += delta;
    c.hi += delta;
  }
  return cells;
}

}  // namespace detail

//! The full equation 3 sum t_q as a cell list, all levels folded in: terms
//! vanish once 2^-j times the support diameter drops below |q|, so finitely
//! many levels carry everything.
inline std::vector<ProfileCell> eq3_shift_sum(const ComplexProfile& psi,
                                              long q) {
  if (q % 2 == 0) throw EvenShift("eq3 shift q must be odd");
  if (psi.is_zero()) return {};
  auto [s_lo, s_hi] = psi.annulus();
  Rational q_abs = Rational(q).abs();
  long j_stop = 0;
  while ((s_hi + s_hi).mul_pow2(-j_stop) > q_abs) ++j_stop;
  std::vector<ProfileCell> pieces;
  for (long j = 0; j <= j_stop; ++j) {
    auto lhs = psi.scaled_domain(j);
    auto rhs = detail::shift_cells(psi.scaled_domain(j), -Rational(q));
    auto term = detail::product_conj(lhs, rhs);
    pieces.insert(pieces.end(), term.begin(), term.end());
  }
  return detail::accumulate_cells(pieces);
}

//! Wavelet system equation 3: t_q(xi) = sum_{j>=0} psi_hat(2^j xi) conj(psi_hat(2^j (xi+q))),
//! for one odd shift q. Verified exactly on the window
//! { |xi| >= s_lo * 2^-window_J } and reported as holds-in-window.
inline EquationReport check_eq3(const ComplexProfile& psi, long q,
                                long window_J) {
  if (q % 2 == 0) throw EvenShift("eq3 shift q must be odd");
  if (window_J < 1) throw Error("eq3 window must be >= 1");
  EquationReport rep;
  rep.equation = 3;
  rep.window = window_J;
  rep.shift_q = q;
  if (psi.is_zero()) {
    rep.status = EquationStatus::HoldsInWindow;
    return rep;
  }
  // the sum is finite: terms need 2^-j supp and 2^-j supp - q to meet,
  // which fails once 2^-j * 2 s_hi < |q|
  auto total = eq3_shift_sum(psi, q);
  Rational cutoff = psi.annulus().first.mul_pow2(-window_J);
  for (const auto& c : total) {
    // keep only the part of the cell with |xi| > cutoff
    IntervalSet visible = IntervalSet::single(c.lo, c.hi)
                              .clip_magnitude_above(cutoff);
    for (const auto& iv : visible.parts())
      if (rep.witnesses.size() < 8)
        rep.witnesses.push_back({iv.lo, iv.hi, c.value, 0});
  }
  rep.status = rep.witnesses.empty() ? EquationStatus::HoldsInWindow
                                     : EquationStatus::Fails;
  return rep;
}

//! Wavelet system equation 4: sum_k psi_hat(2^j (xi+k)) conj(psi_hat(xi+k)) = 0 for every
//! j >= 1. Complete, not windowed: beyond j = ceil(log2(s_hi / s_lo)) the
//! supports 2^-j supp and supp are disjoint and every sum is empty.
inline EquationReport check_eq4(const ComplexProfile& psi) {
  EquationReport rep;
  rep.equation = 4;
  if (psi.is_zero()) {
    rep.status = EquationStatus::Holds;
    return rep;
  }
  auto [s_lo, s_hi] = psi.annulus();
  // largest j with 2^j s_lo < s_hi
  long j_max = detail::min_pow2_exceeding(s_lo, s_hi);  // 2^j s_lo > s_hi
  for (long j = 1; j < j_max + 1; ++j) {
    auto g = detail::product_conj(psi.scaled_domain(j), psi.cells());
    auto s = detail::periodize_translation_complex(g);
    for (const auto& c : s)
      if (rep.witnesses.size() < 8)
        rep.witnesses.push_back({c.lo, c.hi, c.value, j});
  }
  rep.status = rep.witnesses.empty() ? EquationStatus::Holds
                                     : EquationStatus::Fails;
  return rep;
}

//! Equation 4 level sum for one j, exposed for range-tightness tests.
inline std::vector<ProfileCell> eq4_level_sum(const ComplexProfile& psi,
                                              long j) {
  return detail::periodize_translation_complex(
      detail::product_conj(psi.scaled_domain(j), psi.cells()));
}

// ---- certification -------------------------------------------------------

//! Full certificate. Equations (1), (2) and (4) decide the verdict: (4) is
//! checked completely, and together with (1)-(2) it already implies the
//! wavelet property, so no window enters the decision. Equation 3 results are
//! attached informationally for every odd shift that can produce a nonzero
//! term (|q| <= 2 s_hi; larger shifts vanish identically).
struct CertificationReport {
  bool wavelet = false;
  EquationReport eq1;
  EquationReport eq2;
  EquationReport eq4;
  std::vector<EquationReport> eq3;
};

inline CertificationReport certify_wavelet(const ComplexProfile& psi,
                                           long eq3_window = 20) {
  CertificationReport rep;
  rep.eq1 = check_eq1(psi);
  try {
    rep.eq2 = check_eq2(psi);
  } catch (const ContainsOrigin&) {
    rep.eq2.equation = 2;
    rep.eq2.status = EquationStatus::Fails;
  }
  rep.eq4 = check_eq4(psi);
  rep.wavelet = rep.eq1.ok() && rep.eq2.ok() && rep.eq4.ok();
  if (!psi.is_zero()) {
    auto [s_lo, s_hi] = psi.annulus();
    mpz_class q_max = (s_hi + s_hi).ceil();
    for (mpz_class q = 1; q <= q_max; q = q + 2) {
      long ql = static_cast<long>(q.get_si());
      rep.eq3.push_back(check_eq3(psi, ql, eq3_window));
      rep.eq3.push_back(check_eq3(psi, -ql, eq3_window));
    }
  }
  return rep;
}

// ---- support geometry -------------------------------------------------------

//! One violated instance of the necessary conditions from the support
//! geometry of equations 3 and 4: cells of E where no companion pair exists
//! within the search window.
struct GeomViolation {
  int condition = 0;  // 1: integer-congruent pair, 2: dyadic-congruent pair
  long parameter = 0; // the k (condition 1) or j (condition 2)
  IntervalSet cells;
};

struct GeomReport {
  bool ok = true;
  std::vector<GeomViolation> violations;
};

//! Necessary-condition scanner for supports of wavelet transforms: for every
//! xi in E with xi + k in E there must be j != 0 with 2^j xi, 2^j(xi+k) in E
//! and 2^j k integral, and dually for dyadic congruences. Searches j in
//! [-window_J, window_J]; a clean report means "no violation found within
//! the window", never a certification.
inline GeomReport geom_support_check(const IntervalSet& e, long window_J) {
  if (window_J < 1) throw Error("geom_support_check window must be >= 1");
  if (e.is_empty()) return {};
  if (e.closure_contains_zero())
    throw ContainsOrigin("geom_support_check: closure of E contains 0");
  GeomReport rep;

  const auto& parts = e.parts();
  Rational e_min = parts.front().lo, e_max = parts.back().hi;

  // condition (1): integer-congruent pairs
  mpz_class k_lo = (e_min - e_max).floor();
  mpz_class k_hi = (e_max - e_min).ceil();
  for (mpz_class kz = k_lo; kz <= k_hi; kz = kz + 1) {
    if (kz == 0) continue;
    Rational k{mpz_class(kz)};
    IntervalSet d = set_intersection(e, e.act(0, -k));
    if (d.is_empty()) continue;
    // admissible j inside the window: 2^j k integral, i.e. j >= -v2(k)
    long v2 = static_cast<long>(mpz_scan1(kz.get_mpz_t(), 0));
    IntervalSet covered;
    for (long j = std::max(-window_J, -v2); j <= window_J; ++j) {
      if (j == 0) continue;
      IntervalSet scaled = e.act(-j, Rational(0));
      covered = set_union(covered,
                          set_intersection(scaled, scaled.act(0, -k)));
    }
    IntervalSet missing = set_difference(d, covered);
    if (!missing.is_empty()) {
      rep.ok = false;
      rep.violations.push_back(
          {1, static_cast<long>(kz.get_si()), missing});
    }
  }

  // condition (2): dyadic-congruent pairs
  auto [s_lo, s_hi] = e.magnitude_bounds();
  long j_span = detail::min_pow2_exceeding(s_lo, s_hi);
  for (long j = -j_span; j <= j_span; ++j) {
    if (j == 0) continue;
    IntervalSet d = set_intersection(e, e.act(-j, Rational(0)));
    if (d.is_empty()) continue;
    // admissible k != 0 integral with 2^j k integral
    mpz_class step = 1;
    if (j < 0) mpz_mul_2exp(step.get_mpz_t(), step.get_mpz_t(),
                            static_cast<mp_bitcnt_t>(-j));
    IntervalSet covered;
    for (mpz_class kz = k_lo; kz <= k_hi; kz = kz + 1) {
      if (kz == 0) continue;
      if (!mpz_divisible_p(kz.get_mpz_t(), step.get_mpz_t())) continue;
      covered = set_union(covered, d.act(0, -Rational(mpz_class(kz))));
    }
    IntervalSet missing = set_difference(d, set_intersection(d, covered));
    if (!missing.is_empty()) {
      rep.ok = false;
      rep.violations.push_back({2, j, missing});
    }
  }
  return rep;
}

// ---- dimension function ------------------------------------------------------

//! D_psi = sum_{j>=1} sum_k |psi_hat(2^j(xi+k))|^2 on (0, 1], evaluated
//! exactly away from the dyadic accumulation points 0 and 1: the reported
//! domain excludes cells within 2^-window_J of either. The complete flag
//! records that the support annulus bound proves no term was truncated on
//! that domain.
struct DimensionFunction {
  StepFunction values;
  IntervalSet domain;
  bool complete = false;
};

inline DimensionFunction compute_dimension_function(const ComplexProfile& psi,
                                                    long window_J) {
  if (window_J < 1) throw Error("dimension window must be >= 1");
  DimensionFunction out;
  Rational margin = Rational(1).mul_pow2(-window_J);
  out.domain = IntervalSet::single(margin, Rational(1) - margin);
  out.complete = true;
  if (psi.is_zero()) return out;

  auto [s_lo, s_hi] = psi.annulus();
  // for j >= window_J + ceil(log2 s_hi) the periodized term lives within
  // 2^-window_J of 0 and 1 and cannot touch the domain
  long growth = std::max(0L, detail::min_pow2_exceeding(Rational(1), s_hi));
  long j_stop = window_J + growth + 1;

  StepFunction mod2 = psi.modulus_squared();
  StepFunction total;
  for (long j = 1; j <= j_stop; ++j) {
    StepFunction term = periodize_translation(mod2.act(-j, Rational(0)));
    total = total + term;
  }
  out.values = total.restrict_to(out.domain);
  return out;
}

}  // namespace waveset
