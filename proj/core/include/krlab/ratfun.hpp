#pragma once

// Exact rational functions in alpha and xi, and values with a tau = +-1 pair.

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>

namespace krlab::ratfun {

using Rational = mpq_class;

// Laurent polynomial in alpha, xi with rational coefficients; key = (alpha exponent, xi exponent).
class Laurent {
 public:
  Laurent() = default;
  Laurent(int c) : Laurent(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Laurent(const Rational& c);               // NOLINT(google-explicit-constructor)
  static Laurent monomial(const Rational& c, int alpha, int xi);

  const std::map<std::pair<int, int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(int alpha, int xi) const;
  void add_term(const Rational& c, int alpha, int xi);

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent l, const Laurent& r) { return l += r; }
  friend Laurent operator-(Laurent l, const Laurent& r) { return l -= r; }
  friend Laurent operator*(const Laurent& l, const Laurent& r);
  Laurent operator-() const;
  friend bool operator==(const Laurent& l, const Laurent& r) { return l.terms_ == r.terms_; }

  std::string to_string() const;

 private:
  std::map<std::pair<int, int>, Rational> terms_;
};

Laurent pow(const Laurent& b, int k);

// num / ((1 - alpha^2)^p (1 - xi^2)^q). Every value the pipelines produce has this shape.
struct RatFun {
  Laurent num;
  int p = 0;
  int q = 0;

  RatFun() = default;
  RatFun(Laurent n, int p_ = 0, int q_ = 0) : num(std::move(n)), p(p_), q(q_) {}  // NOLINT

  // Cancels factors (1 - alpha^2) and (1 - xi^2) shared with the numerator.
  RatFun normalized() const;
  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o);
  friend RatFun operator+(RatFun l, const RatFun& r) { return l += r; }
  friend RatFun operator-(RatFun l, const RatFun& r) { return l -= r; }
  friend RatFun operator*(const RatFun& l, const RatFun& r);
  RatFun operator-() const { return {-num, p, q}; }
  // Equality as rational functions (cross-multiplication).
  friend bool operator==(const RatFun& l, const RatFun& r);

  // Coefficients of alpha^i xi^j for i <= alpha_max, j <= xi_max of the expansion in Z[[alpha,xi]][alpha^-1,xi^-1].
  std::map<std::pair<int, int>, Rational> series(int alpha_max, int xi_max) const;
  std::string to_string() const;
};

// A general quotient of Laurent polynomials, used where denominators leave the family above.
struct Fraction {
  Laurent num, den;
  friend Fraction operator+(const Fraction& l, const Fraction& r) { return {l.num * r.den + r.num * l.den, l.den * r.den}; }
  friend Fraction operator-(const Fraction& l, const Fraction& r) { return {l.num * r.den - r.num * l.den, l.den * r.den}; }
  friend Fraction operator*(const Fraction& l, const Fraction& r) { return {l.num * r.num, l.den * r.den}; }
  // Throws DomainError on division by zero.
  friend Fraction operator/(const Fraction& l, const Fraction& r);
  friend bool operator==(const Fraction& l, const Fraction& r) { return l.num * r.den == r.num * l.den; }
  friend bool operator==(const Fraction& l, const RatFun& r);
  // Throws DomainError unless the denominator is a monomial times a unit of Z[[alpha,xi]].
  std::map<std::pair<int, int>, Rational> series(int alpha_max, int xi_max) const;
};

// An element of the coefficient ring stored through its evaluations at tau = +1 and tau = -1.
struct SkeinValue {
  RatFun plus, minus;

  static SkeinValue constant(const RatFun& f) { return {f, f}; }
  static SkeinValue tau_times(const RatFun& f) { return {f, -f}; }

  SkeinValue normalized() const { return {plus.normalized(), minus.normalized()}; }
  SkeinValue& operator+=(const SkeinValue& o);
  SkeinValue& operator-=(const SkeinValue& o);
  friend SkeinValue operator+(SkeinValue l, const SkeinValue& r) { return l += r; }
  friend SkeinValue operator-(SkeinValue l, const SkeinValue& r) { return l -= r; }
  friend SkeinValue operator*(const SkeinValue& l, const SkeinValue& r);
  friend bool operator==(const SkeinValue& l, const SkeinValue& r) {
    return l.plus == r.plus && l.minus == r.minus;
  }
  bool is_zero() const { return plus.num.is_zero() && minus.num.is_zero(); }

  // Coefficient parts without and with tau: P = P0 + tau P1.
  RatFun tau_free() const;
  RatFun tau_part() const;
  std::string to_string() const;
};

}  // namespace krlab::ratfun
