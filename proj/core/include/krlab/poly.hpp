#pragma once

// Exact bigraded multivariate polynomials over Q.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "krlab/error.hpp"

namespace krlab::poly {

using Rational = mpq_class;

struct Bideg {
  int a = 0;
  int x = 0;

  friend Bideg operator+(Bideg l, Bideg r) { return {l.a + r.a, l.x + r.x}; }
  friend Bideg operator-(Bideg l, Bideg r) { return {l.a - r.a, l.x - r.x}; }
  friend Bideg operator*(int k, Bideg d) { return {k * d.a, k * d.x}; }
  friend bool operator==(Bideg l, Bideg r) = default;
  friend auto operator<=>(Bideg l, Bideg r) = default;
};

enum class VarKind { A, Mark, Elementary };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Mark;
  Bideg deg;
  // Boundary variables are killed (together with a) when computing graded dimensions.
  bool boundary = false;
};

inline constexpr int kMaxVars = 40;

class VariableTable {
 public:
  static constexpr int kA = 0;

  VariableTable();

  int add_mark(const std::string& name, bool boundary = false);
  // Adds the elementary symmetric generators name_1..name_size of an alphabet.
  std::vector<int> add_alphabet(const std::string& name, int size, bool boundary = false);

  int size() const { return static_cast<int>(vars_.size()); }
  const Variable& operator[](int i) const { return vars_.at(i); }
  int find(const std::string& name) const;
  void set_boundary(int i, bool b) { vars_.at(i).boundary = b; }

 private:
  int add(Variable v);
  std::vector<Variable> vars_;
};

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t deg = 0;

  int operator[](int i) const { return e[i]; }
  bool divides(const Monomial& o) const;
  bool is_one() const { return deg == 0; }
  Bideg bidegree(const VariableTable& t) const;

  friend Monomial operator*(const Monomial& l, const Monomial& r);
  // Caller guarantees r divides l.
  friend Monomial operator/(const Monomial& l, const Monomial& r);
  friend bool operator==(const Monomial& l, const Monomial& r) {
    return l.deg == r.deg && l.e == r.e;
  }
};

// Graded-lex order: total degree first, then lexicographic with variable 0 largest.
inline bool mono_less(const Monomial& l, const Monomial& r) {
  if (l.deg != r.deg) return l.deg < r.deg;
  return std::memcmp(l.e.data(), r.e.data(), kMaxVars) < 0;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

struct Term {
  Monomial m;
  Rational c;
};

// Polynomial stored as terms in strictly decreasing monomial order, no zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);            // NOLINT(google-explicit-constructor)
  static Poly var(int i, int power = 1);
  static Poly monomial(const Monomial& m, const Rational& c);
  // Builds from arbitrary (possibly repeated, unsorted) terms.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }

  bool involves(int var) const;
  int degree_in(int var) const;
  // Coefficient of var^k, as a polynomial free of var.
  Poly coefficient_in(int var, int k) const;

  // Bidegree of a homogeneous nonzero polynomial; nullopt for zero; throws if inhomogeneous.
  std::optional<Bideg> bidegree(const VariableTable& t) const;
  bool is_homogeneous(const VariableTable& t) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly l, const Poly& r) { return l += r; }
  friend Poly operator-(Poly l, const Poly& r) { return l -= r; }
  friend Poly operator*(const Poly& l, const Poly& r);
  friend Poly operator*(Poly l, const Rational& c) { return l *= c; }
  friend Poly operator*(const Rational& c, Poly r) { return r *= c; }
  friend Poly operator*(Poly l, int c) { return l *= Rational(c); }
  friend Poly operator*(int c, Poly r) { return r *= Rational(c); }
  Poly operator-() const;
  friend bool operator==(const Poly& l, const Poly& r);

  std::string to_string(const VariableTable& t) const;

 private:
  std::vector<Term> terms_;
};

using BigradedPoly = Poly;

Poly pow(const Poly& p, int k);

// Returns q with q * d == p; throws DomainError when d does not divide p.
Poly divide_exact(const Poly& p, const Poly& d);

// Simultaneous substitution of variables by polynomials.
Poly substitute(const Poly& p, const std::map<int, Poly>& assignment);

// (p|_{var=A} - p|_{var=B}) / (A - B), computed without division.
Poly divided_difference(const Poly& p, int var, const Poly& A, const Poly& B);

// If p = c*var + rest with c a nonzero constant and rest free of var, returns (c, rest).
std::optional<std::pair<Rational, Poly>> linear_in(const Poly& p, int var);

// e_k of the given mark variables.
Poly elementary_symmetric(const std::vector<int>& alphabet, int k);

// p_{m,k} and h_{m,k} evaluated at E_j := E[j-1] (Newton's identities).
Poly power_sum_in_elementary(int m, int k, const std::vector<Poly>& E);
Poly complete_symmetric_in_elementary(int m, int k, const std::vector<Poly>& E);

}  // namespace krlab::poly
