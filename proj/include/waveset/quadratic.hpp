#pragma once

#include <string>

#include "waveset/rational.hpp"

namespace waveset {

//! Exact element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
//! The representation is unique: two values are equal iff their components
//! are, and the value is irrational iff b != 0. Q(sqrt 2) is closed under
//! the affine actions x -> 2^j x + q, which makes these the sample points
//! for exact orbit exploration.
class Quad {
 public:
  Quad() = default;
  Quad(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  Quad(long n) : a_(n), b_(0) {}  // NOLINT(google-explicit-constructor)
  explicit Quad(const Rational& a) : a_(a), b_(0) {}

  static Quad sqrt2(const Rational& coeff = Rational(1)) {
    return Quad(Rational(0), coeff);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }
  bool is_rational() const { return b_.is_zero(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  //! Sign of a + b*sqrt(2), decided exactly. When the components disagree in
  //! sign the comparison a^2 vs 2 b^2 settles it (equality there would force
  //! sqrt(2) rational, so it only occurs at a = b = 0).
  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational a2 = a_ * a_;
    Rational b2 = b_ * b_ + b_ * b_;
    if (a2 == b2) throw InternalError("sqrt(2) cannot be rational");
    return a2 > b2 ? sa : sb;
  }

  Quad operator-() const { return Quad(-a_, -b_); }
  Quad& operator+=(const Quad& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Quad& operator-=(const Quad& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  friend Quad operator+(Quad x, const Quad& y) { return x += y; }
  friend Quad operator-(Quad x, const Quad& y) { return x -= y; }

  Quad scale(const Rational& r) const { return Quad(a_ * r, b_ * r); }
  Quad mul_pow2(long j) const { return Quad(a_.mul_pow2(j), b_.mul_pow2(j)); }

  //! The group action x -> 2^j x + q. The sqrt2 component scales by 2^j,
  //! so irrationality is preserved.
  Quad affine(long j, const Rational& q) const {
    return Quad(a_.mul_pow2(j) + q, b_.mul_pow2(j));
  }

  friend bool operator==(const Quad& x, const Quad& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator<(const Quad& x, const Quad& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator<=(const Quad& x, const Quad& y) {
    return (x - y).sign() <= 0;
  }
  friend bool operator>(const Quad& x, const Quad& y) { return y < x; }
  friend bool operator>=(const Quad& x, const Quad& y) { return y <= x; }

  Quad abs() const { return sign() < 0 ? -*this : *this; }

  //! Exact floor. Components are put over a common integer denominator
  //! A + B*sqrt(2) over Qd; the integer sqrt of 2B^2 gives a candidate
  //! within one of the truth, then exact comparisons settle it.
  mpz_class floor() const {
    if (is_rational()) return a_.floor();
    mpz_class pa = a_.numerator(), qa = a_.denominator();
    mpz_class pb = b_.numerator(), qb = b_.denominator();
    mpz_class A = pa * qb, B = pb * qa, Qd = qa * qb;
    mpz_class twoB2 = 2 * B * B;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), twoB2.get_mpz_t());
    mpz_class approx_num = B > 0 ? mpz_class(A + s) : mpz_class(A - s);
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), approx_num.get_mpz_t(), Qd.get_mpz_t());
    while (*this < Quad(Rational(n))) n -= 1;
    while (*this >= Quad(Rational(mpz_class(n + 1)))) n += 1;
    return n;
  }

  double to_double() const {
    return a_.to_double() + b_.to_double() * 1.41421356237309514547462185874;
  }

  std::string to_string() const {
    return a_.to_string() + "+" + b_.to_string() + "*sqrt2";
  }

 private:
  Rational a_;
  Rational b_;
};

enum class Ordering { Less, Equal, Greater };

//! Exact total order on Q(sqrt 2), consistent with the real values.
inline Ordering quad_compare(const Quad& x, const Quad& y) {
  int s = (x - y).sign();
  if (s < 0) return Ordering::Less;
  if (s > 0) return Ordering::Greater;
  return Ordering::Equal;
}

//! 2^j x + q, exactly.
inline Quad quad_affine(const Quad& x, long j, const Rational& q) {
  return x.affine(j, q);
}

}  // namespace waveset
