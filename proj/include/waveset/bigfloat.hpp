#pragma once

#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>

#include "waveset/rational.hpp"

namespace waveset {

//! 256-bit floating point value (MPFR, round-to-nearest). Used only where a
//! quantity is provably irrational: the non-dyadic branch of the nu measure
//! and test oracles. Each operation is correctly rounded, so accumulated
//! relative error after the few hundred operations we ever chain stays far
//! below 1e-60.
class BigFloat {
 public:
  static constexpr mpfr_prec_t kPrecision = 256;

  BigFloat() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
  explicit BigFloat(const Rational& q) {
    mpfr_init2(v_, kPrecision);
    mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
  }
  explicit BigFloat(double d) {
    mpfr_init2(v_, kPrecision);
    mpfr_set_d(v_, d, MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, kPrecision);
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, kPrecision);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat log2_of(const Rational& q) {
    BigFloat r(q);
    mpfr_log2(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const BigFloat& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

  BigFloat abs() const {
    BigFloat r(*this);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(const Rational& q) const { return mpfr_cmp_q(v_, q.raw().get_mpq_t()); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return a.cmp(b) < 0;
  }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) {
    return a.cmp(b) <= 0;
  }
  friend bool operator>(const BigFloat& a, const BigFloat& b) {
    return a.cmp(b) > 0;
  }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) {
    return a.cmp(b) >= 0;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  //! Deterministic decimal rendering with 30 significant digits.
  std::string to_string() const {
    char buf[80];
    mpfr_snprintf(buf, sizeof buf, "%.30Rg", v_);
    return std::string(buf);
  }

 private:
  mpfr_t v_;
};

}  // namespace waveset
