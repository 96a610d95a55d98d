#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "waveset/bigfloat.hpp"
#include "waveset/interval_set.hpp"
#include "waveset/rational.hpp"

namespace waveset {

//! Value of the logarithmic measure nu(V) = int_V dx / (|x| log 4), or of a
//! nu-weighted integral. Finite values are exact rationals whenever the
//! underlying product of interval ratios is a power of two (log2 of a
//! rational is rational only when it is an integer); otherwise they are
//! carried as 256-bit floats with error far below approx_error_bound().
class NuValue {
 public:
  static NuValue infinite() {
    NuValue v;
    v.infinite_ = true;
    return v;
  }
  static NuValue exact(const Rational& r) {
    NuValue v;
    v.exact_ = true;
    v.rational_ = r;
    v.approx_ = BigFloat(r);
    return v;
  }
  static NuValue approximate(BigFloat f) {
    NuValue v;
    v.approx_ = std::move(f);
    return v;
  }

  bool is_infinite() const { return infinite_; }
  bool is_exact() const { return !infinite_ && exact_; }

  //! Valid only when is_exact().
  const Rational& exact_value() const {
    if (!is_exact()) throw InternalError("NuValue: no exact value");
    return rational_;
  }

  const BigFloat& approx() const {
    if (infinite_) throw InternalError("NuValue: infinite");
    return approx_;
  }

  //! Absolute error bound of the approx() field for finite values; zero
  //! when the value is exact. Very conservative.
  static Rational approx_error_bound() {
    return Rational(1) / Rational(mpz_class(mpz_class(1) << 130));
  }

  double to_double() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    return approx_.to_double();
  }

  std::string to_string() const {
    if (infinite_) return "inf";
    if (exact_) return rational_.to_string();
    return approx_.to_string();
  }

  friend NuValue operator+(const NuValue& a, const NuValue& b) {
    if (a.infinite_ || b.infinite_) return infinite();
    if (a.exact_ && b.exact_) return exact(a.rational_ + b.rational_);
    return approximate(a.approx_ + b.approx_);
  }
  friend NuValue operator-(const NuValue& a, const NuValue& b) {
    if (a.infinite_ || b.infinite_)
      throw InternalError("NuValue: subtracting infinities");
    if (a.exact_ && b.exact_) return exact(a.rational_ - b.rational_);
    return approximate(a.approx_ - b.approx_);
  }

  //! Three-way comparison; exact when both sides are exact, otherwise decided
  //! at 256-bit precision (ties that fine are far below every tolerance used).
  int cmp(const NuValue& o) const {
    if (infinite_ && o.infinite_) return 0;
    if (infinite_) return 1;
    if (o.infinite_) return -1;
    if (exact_ && o.exact_) {
      if (rational_ < o.rational_) return -1;
      if (rational_ == o.rational_) return 0;
      return 1;
    }
    return approx_.cmp(o.approx_);
  }
  int cmp(const Rational& r) const { return cmp(NuValue::exact(r)); }

  //! |*this - target| <= tol, with infinite never within tolerance.
  //! Decided in rational arithmetic when both sides are exact.
  bool within(const NuValue& target, const Rational& tol) const {
    if (infinite_ || target.infinite_) return false;
    if (exact_ && target.exact_)
      return (rational_ - target.rational_).abs() <= tol;
    return (approx_ - target.approx_).abs().cmp(tol) <= 0;
  }

 private:
  bool infinite_ = false;
  bool exact_ = false;
  Rational rational_;
  BigFloat approx_;
};

//! Accumulator for sums  sum_i w_i * log2(r_i)  with rational weights w_i >= 0
//! and rational ratios r_i > 0. Collapses to an exact rational when
//! prod r_i^(w_i * L) is a power of two (L = lcm of weight denominators).
class LogSum {
 public:
  void add(const Rational& weight, const Rational& ratio) {
    if (ratio.sign() <= 0) throw InternalError("LogSum: ratio <= 0");
    if (weight.sign() < 0) throw InternalError("LogSum: negative weight");
    if (weight.is_zero() || ratio == Rational(1)) return;
    terms_.push_back({weight, ratio});
  }

  //! The value sum w_i log2 r_i as a NuValue (always finite).
  NuValue value() const {
    if (terms_.empty()) return NuValue::exact(Rational(0));
    std::vector<Rational> weights;
    weights.reserve(terms_.size());
    for (const auto& t : terms_) weights.push_back(t.first);
    mpz_class lcm = denominator_lcm(weights);
    // product of r_i^(w_i * lcm); exponents are nonnegative integers
    mpq_class prod(1);
    bool overflow_guard_ok = true;
    for (const auto& t : terms_) {
      mpq_class wl = t.first.raw() * mpq_class(lcm);
      mpz_class e = wl.get_num();  // denominator is 1 by construction
      if (!mpz_fits_ulong_p(e.get_mpz_t())) {
        overflow_guard_ok = false;
        break;
      }
      mpq_class p;
      mpz_pow_ui(mpq_numref(p.get_mpq_t()),
                 t.second.raw().get_num().get_mpz_t(), e.get_ui());
      mpz_pow_ui(mpq_denref(p.get_mpq_t()),
                 t.second.raw().get_den().get_mpz_t(), e.get_ui());
      p.canonicalize();
      prod *= p;
    }
    if (overflow_guard_ok) {
      if (auto t = Rational(prod).dyadic_log2()) {
        return NuValue::exact(Rational(*t) / Rational(mpz_class(lcm)));
      }
    }
    BigFloat acc;
    for (const auto& t : terms_)
      acc += BigFloat(t.first) * BigFloat::log2_of(t.second);
    return NuValue::approximate(std::move(acc));
  }

 private:
  std::vector<std::pair<Rational, Rational>> terms_;
};

//! nu of one component (lo, hi] assumed to not touch 0:
//! log2(hi/lo)/2 on the positive axis, log2(lo/hi)/2 on the negative one.
inline Rational nu_ratio(const Interval& iv) {
  return iv.lo.sign() > 0 ? iv.hi / iv.lo : iv.lo / iv.hi;
}

//! The logarithmic measure nu(E) = int_E dx / (|x| log 4). Infinite exactly
//! when 0 lies in the closure of E; exact rational whenever the product of
//! component ratios is a dyadic power, else a 256-bit approximation.
inline NuValue nu(const IntervalSet& e) {
  if (e.closure_contains_zero()) return NuValue::infinite();
  LogSum sum;
  for (const auto& iv : e.parts()) sum.add(Rational(1, 2), nu_ratio(iv));
  return sum.value();
}

}  // namespace waveset
