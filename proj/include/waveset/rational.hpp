#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "waveset/errors.hpp"

namespace waveset {

//! Exact arbitrary-precision rational, always in canonical form
//! (positive denominator, gcd(|num|, den) = 1). Thin strong type over
//! GMP's mpq_class; every endpoint, measure and matrix entry in the
//! library is one of these.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  //! Parses "p/q", "p", a decimal like "0.15", or scientific "1e-9".
  static Rational parse(const std::string& s);

  //! Serializes as "p/q" with the denominator always present ("3" -> "3/1").
  std::string to_string() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
               v_.get_den().get_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
               v_.get_den().get_mpz_t());
    return q;
  }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  //! Exact multiplication by 2^j, j of either sign.
  Rational mul_pow2(long j) const {
    mpq_class r;
    if (j >= 0)
      mpq_mul_2exp(r.get_mpq_t(), v_.get_mpq_t(), static_cast<mp_bitcnt_t>(j));
    else
      mpq_div_2exp(r.get_mpq_t(), v_.get_mpq_t(),
                   static_cast<mp_bitcnt_t>(-j));
    return Rational(r);
  }

  //! If |*this| = 2^t for integer t, returns t.
  std::optional<long> dyadic_log2() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw ParseError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) {
  return a <= b ? a : b;
}
inline Rational max(const Rational& a, const Rational& b) {
  return a >= b ? a : b;
}

inline std::optional<long> Rational::dyadic_log2() const {
  if (is_zero()) return std::nullopt;
  mpz_class num = ::abs(v_.get_num());
  mpz_class den = v_.get_den();
  // |p/q| in lowest terms is a power of two iff p and q both are.
  if (mpz_popcount(num.get_mpz_t()) != 1 ||
      mpz_popcount(den.get_mpz_t()) != 1)
    return std::nullopt;
  long up = static_cast<long>(mpz_scan1(num.get_mpz_t(), 0));
  long down = static_cast<long>(mpz_scan1(den.get_mpz_t(), 0));
  return up - down;
}

inline Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  std::string t = s;
  // strip whitespace
  std::string stripped;
  for (char c : t)
    if (c != ' ' && c != '\t') stripped += c;
  t = stripped;
  if (t.empty()) throw ParseError("empty rational literal");

  auto is_plain_int = [](const std::string& u) {
    if (u.empty()) return false;
    std::size_t i = (u[0] == '+' || u[0] == '-') ? 1 : 0;
    if (i == u.size()) return false;
    for (; i < u.size(); ++i)
      if (u[i] < '0' || u[i] > '9') return false;
    return true;
  };

  if (t[0] == '+') t = t.substr(1);  // GMP rejects a leading plus

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!is_plain_int(num) || !is_plain_int(den) || den[0] == '-')
      throw ParseError("bad rational literal: " + s);
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw ParseError("bad rational literal: " + s);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
  }

  // decimal / scientific form: mantissa [.fraction] [e exponent]
  long exp10 = 0;
  auto epos = t.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = t.substr(epos + 1);
    if (!is_plain_int(es)) throw ParseError("bad exponent: " + s);
    exp10 = std::stol(es);
    t = t.substr(0, epos);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string frac = t.substr(dot + 1);
    t = t.substr(0, dot) + frac;
    if (t == "" || t == "+" || t == "-") throw ParseError("bad literal: " + s);
    exp10 -= static_cast<long>(frac.size());
  }
  if (!is_plain_int(t)) throw ParseError("bad rational literal: " + s);
  mpz_class mant(t, 10);
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10,
                static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class q = exp10 >= 0 ? mpq_class(mant * p10) : mpq_class(mant, p10);
  q.canonicalize();
  return Rational(q);
}

//! lcm of the denominators of a list of rationals; at least 1.
inline mpz_class denominator_lcm(const std::vector<Rational>& xs) {
  mpz_class l = 1;
  for (const auto& x : xs) {
    mpz_class d = x.denominator();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  return l;
}

}  // namespace waveset
