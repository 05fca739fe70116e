#include "krlab/poly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace krlab::poly {

VariableTable::VariableTable() { add({"a", VarKind::A, {2, 0}, false}); }

int VariableTable::add(Variable v) {
  if (find(v.name) >= 0) throw DomainError("duplicate variable id: " + v.name);
  if (size() >= kMaxVars) throw DomainError("too many variables (limit " + std::to_string(kMaxVars) + ")");
  vars_.push_back(std::move(v));
  return size() - 1;
}

int VariableTable::add_mark(const std::string& name, bool boundary) {
  return add({name, VarKind::Mark, {0, 2}, boundary});
}

std::vector<int> VariableTable::add_alphabet(const std::string& name, int size, bool boundary) {
  if (size < 1 || size > 3) throw DomainError("alphabet size must be 1..3");
  if (size == 1) return {add_mark(name, boundary)};
  std::vector<int> ids;
  for (int k = 1; k <= size; ++k)
    ids.push_back(add({name + "_" + std::to_string(k), VarKind::Elementary, {0, 2 * k}, boundary}));
  return ids;
}

int VariableTable::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (vars_[i].name == name) return i;
  return -1;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Bideg Monomial::bidegree(const VariableTable& t) const {
  Bideg d;
  for (int i = 0; i < t.size(); ++i)
    if (e[i]) d = d + e[i] * t[i].deg;
  return d;
}

Monomial operator*(const Monomial& l, const Monomial& r) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = l.e[i] + r.e[i];
    if (s > 255) throw DomainError("monomial exponent overflow");
    m.e[i] = static_cast<std::uint8_t>(s);
  }
  m.deg = static_cast<std::uint16_t>(l.deg + r.deg);
  return m;
}

Monomial operator/(const Monomial& l, const Monomial& r) {
  Monomial m;
  for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint8_t>(l.e[i] - r.e[i]);
  m.deg = static_cast<std::uint16_t>(l.deg - r.deg);
  return m;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto b : m.e) h = (h ^ b) * 1099511628211ull;
  return h;
}

namespace {

bool term_greater(const Term& l, const Term& r) { return mono_less(r.m, l.m); }

// Sorts descending and merges equal monomials, dropping zeros.
void normalize(std::vector<Term>& ts) {
  std::sort(ts.begin(), ts.end(), term_greater);
  std::size_t out = 0;
  for (std::size_t i = 0; i < ts.size();) {
    std::size_t j = i + 1;
    Rational c = ts[i].c;
    while (j < ts.size() && ts[j].m == ts[i].m) c += ts[j++].c;
    if (sgn(c) != 0) {
      ts[out].m = ts[i].m;
      ts[out].c = c;
      ++out;
    }
    i = j;
  }
  ts.resize(out);
}

std::vector<Term> merge(const std::vector<Term>& l, const std::vector<Term>& r, bool subtract) {
  std::vector<Term> out;
  out.reserve(l.size() + r.size());
  std::size_t i = 0, j = 0;
  while (i < l.size() || j < r.size()) {
    if (j == r.size() || (i < l.size() && mono_less(r[j].m, l[i].m))) {
      out.push_back(l[i++]);
    } else if (i == l.size() || mono_less(l[i].m, r[j].m)) {
      out.push_back(r[j++]);
      if (subtract) out.back().c = -out.back().c;
    } else {
      Rational c = subtract ? Rational(l[i].c - r[j].c) : Rational(l[i].c + r[j].c);
      if (sgn(c) != 0) out.push_back({l[i].m, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::var(int i, int power) {
  if (i < 0 || i >= kMaxVars) throw DomainError("variable index out of range");
  Monomial m;
  m.e[i] = static_cast<std::uint8_t>(power);
  m.deg = static_cast<std::uint16_t>(power);
  return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  normalize(terms);
  Poly p;
  p.terms_ = std::move(terms);
  return p;
}

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.is_one()) return terms_.back().c;
  return 0;
}

bool Poly::involves(int var) const {
  for (const auto& t : terms_)
    if (t.m.e[var]) return true;
  return false;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.m.e[var]));
  return d;
}

Poly Poly::coefficient_in(int var, int k) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.m.e[var] == k) {
      Term u = t;
      u.m.e[var] = 0;
      u.m.deg = static_cast<std::uint16_t>(u.m.deg - k);
      out.push_back(std::move(u));
    }
  return from_terms(std::move(out));
}

std::optional<Bideg> Poly::bidegree(const VariableTable& t) const {
  if (terms_.empty()) return std::nullopt;
  Bideg d = terms_[0].m.bidegree(t);
  for (const auto& term : terms_)
    if (term.m.bidegree(t) != d) throw DomainError("inhomogeneous polynomial: " + to_string(t));
  return d;
}

bool Poly::is_homogeneous(const VariableTable& t) const {
  if (terms_.empty()) return true;
  Bideg d = terms_[0].m.bidegree(t);
  for (const auto& term : terms_)
    if (term.m.bidegree(t) != d) return false;
  return true;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.c *= c;
  }
  return *this;
}

Poly operator*(const Poly& l, const Poly& r) {
  if (l.is_zero() || r.is_zero()) return {};
  if (l.size() == 1 && l.terms_[0].m.is_one()) return r * l.terms_[0].c;
  if (r.size() == 1 && r.terms_[0].m.is_one()) return l * r.terms_[0].c;
  std::vector<Term> out;
  out.reserve(l.size() * r.size());
  for (const auto& a : l.terms_)
    for (const auto& b : r.terms_) out.push_back({a.m * b.m, a.c * b.c});
  return Poly::from_terms(std::move(out));
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

bool operator==(const Poly& l, const Poly& r) {
  if (l.terms_.size() != r.terms_.size()) return false;
  for (std::size_t i = 0; i < l.terms_.size(); ++i)
    if (!(l.terms_[i].m == r.terms_[i].m) || l.terms_[i].c != r.terms_[i].c) return false;
  return true;
}

std::string Poly::to_string(const VariableTable& t) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& term : terms_) {
    Rational c = term.c;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1;
    if (!unit || term.m.is_one()) os << c.get_str();
    bool need_star = !unit;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!term.m.e[i]) continue;
      if (need_star) os << "*";
      need_star = true;
      os << (i < t.size() ? t[i].name : "v" + std::to_string(i));
      if (term.m.e[i] > 1) os << "^" << static_cast<int>(term.m.e[i]);
    }
  }
  return os.str();
}

Poly pow(const Poly& p, int k) {
  Poly r(1);
  Poly b = p;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Poly divide_exact(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw DomainError("division by zero polynomial");
  const Term& ld = d.leading();
  std::vector<Term> quotient;
  Poly rem = p;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (!ld.m.divides(lr.m)) throw DomainError("non-exact polynomial division");
    Term q{lr.m / ld.m, lr.c / ld.c};
    rem -= Poly::monomial(q.m, q.c) * d;
    quotient.push_back(std::move(q));
  }
  return Poly::from_terms(std::move(quotient));
}

Poly substitute(const Poly& p, const std::map<int, Poly>& assignment) {
  if (assignment.empty()) return p;
  std::map<std::pair<int, int>, Poly> powers;
  auto power_of = [&](int var, int k) -> const Poly& {
    auto key = std::make_pair(var, k);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    return powers.emplace(key, pow(assignment.at(var), k)).first->second;
  };
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Monomial rest = t.m;
    std::vector<std::pair<int, int>> subs;
    for (const auto& [var, value] : assignment) {
      int k = rest.e[var];
      if (!k) continue;
      rest.e[var] = 0;
      rest.deg = static_cast<std::uint16_t>(rest.deg - k);
      subs.emplace_back(var, k);
    }
    if (subs.empty()) {
      out.push_back(t);
      continue;
    }
    Poly acc = Poly::monomial(rest, t.c);
    for (auto [var, k] : subs) acc = acc * power_of(var, k);
    out.insert(out.end(), acc.terms().begin(), acc.terms().end());
  }
  return Poly::from_terms(std::move(out));
}

Poly divided_difference(const Poly& p, int var, const Poly& A, const Poly& B) {
  int n = p.degree_in(var);
  // h[k] = complete homogeneous h_k(A, B)
  std::vector<Poly> Apow{Poly(1)}, Bpow{Poly(1)};
  for (int k = 1; k < n; ++k) {
    Apow.push_back(Apow.back() * A);
    Bpow.push_back(Bpow.back() * B);
  }
  Poly out;
  for (int k = 1; k <= n; ++k) {
    Poly c = p.coefficient_in(var, k);
    if (c.is_zero()) continue;
    Poly h;
    for (int i = 0; i < k; ++i) h += Apow[i] * Bpow[k - 1 - i];
    out += c * h;
  }
  return out;
}

std::optional<std::pair<Rational, Poly>> linear_in(const Poly& p, int var) {
  if (p.degree_in(var) != 1) return std::nullopt;
  Poly c = p.coefficient_in(var, 1);
  if (!c.is_constant() || c.is_zero()) return std::nullopt;
  return std::make_pair(c.constant_term(), p.coefficient_in(var, 0));
}

Poly elementary_symmetric(const std::vector<int>& alphabet, int k) {
  if (k < 0 || k > static_cast<int>(alphabet.size())) return {};
  if (k == 0) return 1;
  Poly out;
  int n = static_cast<int>(alphabet.size());
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    Poly t(1);
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) t *= Poly::var(alphabet[i]);
    out += t;
  }
  return out;
}

namespace {

Poly e_at(const std::vector<Poly>& E, int m, int i) {
  if (i == 0) return 1;
  if (i < 0 || i > m) return {};
  return E.at(i - 1);
}

void check_m(int m, const std::vector<Poly>& E) {
  if (m < 1 || m > 3) throw DomainError("alphabet size must be 1..3");
  if (static_cast<int>(E.size()) < m) throw DomainError("missing elementary generators");
}

}  // namespace

Poly power_sum_in_elementary(int m, int k, const std::vector<Poly>& E) {
  check_m(m, E);
  if (k < 0) throw DomainError("negative power sum index");
  std::vector<Poly> p{Poly(m)};
  for (int j = 1; j <= k; ++j) {
    Poly v = Rational((j % 2 ? 1 : -1) * j) * e_at(E, m, j);
    for (int i = 1; i < j; ++i) {
      Poly e = e_at(E, m, i);
      if (e.is_zero()) continue;
      v += Rational(i % 2 ? 1 : -1) * (e * p[j - i]);
    }
    p.push_back(std::move(v));
  }
  return p[k];
}

Poly complete_symmetric_in_elementary(int m, int k, const std::vector<Poly>& E) {
  check_m(m, E);
  if (k < 0) return {};
  std::vector<Poly> h{Poly(1)};
  for (int j = 1; j <= k; ++j) {
    Poly v;
    for (int i = 1; i <= std::min(j, m); ++i) v += Rational(i % 2 ? 1 : -1) * (E[i - 1] * h[j - i]);
    h.push_back(std::move(v));
  }
  return h[k];
}

}  // namespace krlab::poly
