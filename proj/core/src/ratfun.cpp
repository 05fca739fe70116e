#include "krlab/ratfun.hpp"

#include <algorithm>
#include <climits>
#include <optional>
#include <sstream>
#include <vector>

#include "krlab/error.hpp"

namespace krlab::ratfun {

Laurent::Laurent(const Rational& c) {
  if (sgn(c) != 0) terms_[{0, 0}] = c;
}

Laurent Laurent::monomial(const Rational& c, int alpha, int xi) {
  Laurent l;
  l.add_term(c, alpha, xi);
  return l;
}

Rational Laurent::coefficient(int alpha, int xi) const {
  auto it = terms_.find({alpha, xi});
  return it == terms_.end() ? Rational(0) : it->second;
}

void Laurent::add_term(const Rational& c, int alpha, int xi) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms_.try_emplace({alpha, xi}, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(c, k.first, k.second);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [k, c] : o.terms_) add_term(-c, k.first, k.second);
  return *this;
}

Laurent operator*(const Laurent& l, const Laurent& r) {
  Laurent out;
  for (const auto& [a, c] : l.terms_)
    for (const auto& [b, d] : r.terms_) out.add_term(c * d, a.first + b.first, a.second + b.second);
  return out;
}

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

namespace {

void append_power(std::ostringstream& os, const char* name, int e) {
  if (e == 0) return;
  os << name;
  if (e != 1) os << "^" << e;
}

}  // namespace

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    bool unit = k.first == 0 && k.second == 0;
    Rational mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || unit) os << mag.get_str();
    if (mag != 1 && !unit) os << "*";
    std::ostringstream mono;
    append_power(mono, "α", k.first);
    if (k.first && k.second) mono << "*";
    append_power(mono, "ξ", k.second);
    os << mono.str();
    first = false;
  }
  return os.str();
}

Laurent pow(const Laurent& b, int k) {
  if (k < 0) throw DomainError("negative power of a Laurent polynomial");
  Laurent r(1);
  for (int i = 0; i < k; ++i) r = r * b;
  return r;
}

namespace {

const Laurent& one_minus_alpha2() {
  static const Laurent f = Laurent(1) - Laurent::monomial(1, 2, 0);
  return f;
}
const Laurent& one_minus_xi2() {
  static const Laurent f = Laurent(1) - Laurent::monomial(1, 0, 2);
  return f;
}

// Divides by (1 - v^2) in variable `axis` (0 = alpha, 1 = xi) if possible.
std::optional<Laurent> divide_one_minus_square(const Laurent& n, int axis) {
  if (n.is_zero()) return n;
  // Group by the other exponent; each group is a Laurent polynomial in one variable.
  std::map<int, std::map<int, Rational>> groups;
  for (const auto& [k, c] : n.terms()) {
    int e = axis == 0 ? k.first : k.second;
    int o = axis == 0 ? k.second : k.first;
    groups[o][e] = c;
  }
  Laurent out;
  for (const auto& [o, poly] : groups) {
    int lo = poly.begin()->first, hi = poly.rbegin()->first;
    if (hi - lo < 2) return std::nullopt;
    // q_e - q_{e-2} = n_e, with q supported on [lo, hi-2]
    std::map<int, Rational> q;
    for (int e = lo; e <= hi - 2; ++e) {
      Rational v = poly.count(e) ? poly.at(e) : Rational(0);
      if (q.count(e - 2)) v += q[e - 2];
      q[e] = v;
    }
    for (int e = hi - 1; e <= hi; ++e) {
      Rational v = poly.count(e) ? poly.at(e) : Rational(0);
      Rational qe2 = q.count(e - 2) ? q[e - 2] : Rational(0);
      if (v != -qe2) return std::nullopt;
    }
    for (const auto& [e, c] : q)
      if (sgn(c) != 0) out.add_term(c, axis == 0 ? e : o, axis == 0 ? o : e);
  }
  return out;
}

Laurent lift(const RatFun& f, int p, int q) {
  return f.num * pow(one_minus_alpha2(), p - f.p) * pow(one_minus_xi2(), q - f.q);
}

}  // namespace

RatFun RatFun::normalized() const {
  RatFun r = *this;
  if (r.num.is_zero()) return {Laurent(), 0, 0};
  while (r.p > 0) {
    auto d = divide_one_minus_square(r.num, 0);
    if (!d) break;
    r.num = *d;
    --r.p;
  }
  while (r.q > 0) {
    auto d = divide_one_minus_square(r.num, 1);
    if (!d) break;
    r.num = *d;
    --r.q;
  }
  return r;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  int P = std::max(p, o.p), Q = std::max(q, o.q);
  num = lift(*this, P, Q) + lift(o, P, Q);
  p = P;
  q = Q;
  return *this;
}

RatFun& RatFun::operator-=(const RatFun& o) { return *this += -o; }

RatFun operator*(const RatFun& l, const RatFun& r) { return {l.num * r.num, l.p + r.p, l.q + r.q}; }

bool operator==(const RatFun& l, const RatFun& r) {
  int P = std::max(l.p, r.p), Q = std::max(l.q, r.q);
  return lift(l, P, Q) == lift(r, P, Q);
}

namespace {

// Coefficients of 1/(1 - v^2)^k up to exponent cap: binom(k-1+m, m) at v^{2m}.
std::vector<Rational> inverse_power_series(int k, int cap) {
  std::vector<Rational> out(std::max(cap + 1, 0));
  if (cap < 0) return out;
  if (k == 0) {
    out[0] = 1;
    return out;
  }
  Rational b = 1;
  for (int m = 0; 2 * m <= cap; ++m) {
    out[2 * m] = b;
    b = b * (k + m) / (m + 1);
  }
  return out;
}

}  // namespace

std::map<std::pair<int, int>, Rational> RatFun::series(int alpha_max, int xi_max) const {
  std::map<std::pair<int, int>, Rational> out;
  if (num.is_zero()) return out;
  int amin = INT_MAX, xmin = INT_MAX;
  for (const auto& [k, c] : num.terms()) {
    amin = std::min(amin, k.first);
    xmin = std::min(xmin, k.second);
  }
  auto sa = inverse_power_series(p, alpha_max - amin);
  auto sx = inverse_power_series(q, xi_max - xmin);
  for (const auto& [k, c] : num.terms())
    for (std::size_t i = 0; i < sa.size(); ++i) {
      if (sgn(sa[i]) == 0) continue;
      int ea = k.first + static_cast<int>(i);
      if (ea > alpha_max) break;
      for (std::size_t j = 0; j < sx.size(); ++j) {
        if (sgn(sx[j]) == 0) continue;
        int ex = k.second + static_cast<int>(j);
        if (ex > xi_max) break;
        auto& slot = out[{ea, ex}];
        slot += c * sa[i] * sx[j];
      }
    }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::string RatFun::to_string() const {
  std::ostringstream os;
  os << "(" << num.to_string() << ")";
  if (p || q) {
    os << " / (";
    if (p) os << "(1 - α^2)" << (p > 1 ? "^" + std::to_string(p) : "");
    if (p && q) os << " ";
    if (q) os << "(1 - ξ^2)" << (q > 1 ? "^" + std::to_string(q) : "");
    os << ")";
  }
  return os.str();
}

Fraction operator/(const Fraction& l, const Fraction& r) {
  if (r.num.is_zero()) throw DomainError("division by zero");
  return {l.num * r.den, l.den * r.num};
}

bool operator==(const Fraction& l, const RatFun& r) {
  return l.num * pow(one_minus_alpha2(), r.p) * pow(one_minus_xi2(), r.q) == r.num * l.den;
}

std::map<std::pair<int, int>, Rational> Fraction::series(int alpha_max, int xi_max) const {
  if (den.is_zero()) throw DomainError("zero denominator");
  int amin = INT_MAX, xmin = INT_MAX;
  for (const auto& [k, c] : den.terms()) {
    amin = std::min(amin, k.first);
    xmin = std::min(xmin, k.second);
  }
  Rational lead = den.coefficient(amin, xmin);
  if (sgn(lead) == 0) throw DomainError("denominator is not a unit of the power series ring");
  // den = lead * alpha^amin xi^xmin (1 - E), E with non-negative exponents and no constant term
  Laurent E;
  for (const auto& [k, c] : den.terms())
    if (k != std::make_pair(amin, xmin)) E.add_term(-c / lead, k.first - amin, k.second - xmin);
  int nmin_a = INT_MAX, nmin_x = INT_MAX;
  for (const auto& [k, c] : num.terms()) {
    nmin_a = std::min(nmin_a, k.first);
    nmin_x = std::min(nmin_x, k.second);
  }
  std::map<std::pair<int, int>, Rational> out;
  if (num.is_zero()) return out;
  int cap_a = alpha_max - (nmin_a - amin), cap_x = xi_max - (nmin_x - xmin);
  auto truncate = [&](Laurent v) {
    Laurent t;
    for (const auto& [k, c] : v.terms())
      if (k.first <= cap_a && k.second <= cap_x) t.add_term(c, k.first, k.second);
    return t;
  };
  // geometric series sum_k E^k, truncated; E has positive total degree so this terminates
  Laurent inv(1), term(1);
  int guard = cap_a + cap_x + 2;
  for (int k = 0; k < guard && !term.is_zero(); ++k) {
    term = truncate(term * E);
    inv += term;
  }
  Laurent total = num * inv;
  for (const auto& [k, c] : total.terms()) {
    int ea = k.first - amin, ex = k.second - xmin;
    if (ea <= alpha_max && ex <= xi_max) out[{ea, ex}] += c / lead;
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

SkeinValue& SkeinValue::operator+=(const SkeinValue& o) {
  plus += o.plus;
  minus += o.minus;
  return *this;
}

SkeinValue& SkeinValue::operator-=(const SkeinValue& o) {
  plus -= o.plus;
  minus -= o.minus;
  return *this;
}

SkeinValue operator*(const SkeinValue& l, const SkeinValue& r) { return {l.plus * r.plus, l.minus * r.minus}; }

RatFun SkeinValue::tau_free() const {
  RatFun s = plus + minus;
  s.num = s.num * Laurent(Rational(1, 2));
  return s.normalized();
}

RatFun SkeinValue::tau_part() const {
  RatFun s = plus - minus;
  s.num = s.num * Laurent(Rational(1, 2));
  return s.normalized();
}

std::string SkeinValue::to_string() const {
  return tau_free().to_string() + " + τ·" + tau_part().to_string();
}

}  // namespace krlab::ratfun
