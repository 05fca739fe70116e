#include <doctest.h>

#include <random>

#include "krlab/poly.hpp"

using namespace krlab;
using namespace krlab::poly;

namespace {

// Raw power sum x_1^k + ... + x_m^k over explicit marks.
Poly raw_power_sum(const std::vector<int>& xs, int k) {
  Poly p;
  for (int v : xs) p += Poly::var(v, k);
  return p;
}

Poly random_poly(std::mt19937& rng, const std::vector<int>& vars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coeff(-5, 5), deg(0, maxdeg), pick(0, static_cast<int>(vars.size()) - 1);
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Poly m(coeff(rng));
    int d = deg(rng);
    for (int i = 0; i < d; ++i) m *= Poly::var(vars[pick(rng)]);
    p += m;
  }
  return p;
}

}  // namespace

TEST_CASE("variable table bidegrees") {
  VariableTable t;
  CHECK(t[VariableTable::kA].deg == Bideg{2, 0});
  int x = t.add_mark("x");
  CHECK(t[x].deg == Bideg{0, 2});
  auto gens = t.add_alphabet("X", 3);
  REQUIRE(gens.size() == 3);
  CHECK(t[gens[0]].deg == Bideg{0, 2});
  CHECK(t[gens[2]].deg == Bideg{0, 6});
  CHECK_THROWS_AS(t.add_mark("x"), DomainError);
}

TEST_CASE("arithmetic examples") {
  VariableTable t;
  int x1 = t.add_mark("x1"), x2 = t.add_mark("x2");
  Poly a = Poly::var(0);
  CHECK((Poly::var(x1) + Poly::var(x2)) * (Poly::var(x1) - Poly::var(x2)) == Poly::var(x1, 2) - Poly::var(x2, 2));
  CHECK((a * a).bidegree(t) == Bideg{4, 0});
  Poly p = Poly::var(x1) * 3 + a;
  CHECK((p + (-p)).is_zero());
  CHECK_THROWS_AS(p.bidegree(t), DomainError);
}

TEST_CASE("divide_exact") {
  VariableTable t;
  int x = t.add_mark("x"), y = t.add_mark("y");
  Poly X = Poly::var(x), Y = Poly::var(y);
  CHECK(divide_exact(pow(X, 3) - pow(Y, 3), X - Y) == X * X + X * Y + Y * Y);
  CHECK(divide_exact(X - Y, X - Y) == Poly(1));
  CHECK_THROWS_AS(divide_exact(X * X + Y, X - Y), DomainError);

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Poly q = random_poly(rng, {x, y, 0}, 4, 3), d = random_poly(rng, {x, y}, 3, 2);
    if (d.is_zero()) continue;
    CHECK(divide_exact(q * d, d) == q);
  }
}

TEST_CASE("power sums in elementary generators") {
  VariableTable t;
  int E1 = t.add_mark("E1"), E2 = t.add_mark("E2");
  std::vector<Poly> E{Poly::var(E1), Poly::var(E2)};
  CHECK(power_sum_in_elementary(2, 2, E) == pow(E[0], 2) - 2 * E[1]);
  CHECK(power_sum_in_elementary(2, 3, E) == pow(E[0], 3) - 3 * E[0] * E[1]);
  for (int k = 0; k <= 6; ++k) CHECK(power_sum_in_elementary(1, k, E) == pow(E[0], k));
  CHECK_THROWS_AS(power_sum_in_elementary(4, 2, E), DomainError);
}

TEST_CASE("substituting elementary polynomials reproduces raw power sums") {
  VariableTable t;
  std::vector<int> xs{t.add_mark("x1"), t.add_mark("x2"), t.add_mark("x3")};
  for (int m = 1; m <= 3; ++m) {
    std::vector<int> alph(xs.begin(), xs.begin() + m);
    std::vector<Poly> E;
    for (int j = 1; j <= m; ++j) E.push_back(elementary_symmetric(alph, j));
    for (int k = 0; k <= 8; ++k) {
      Poly expect = k == 0 ? Poly(m) : raw_power_sum(alph, k);
      CHECK(power_sum_in_elementary(m, k, E) == expect);
      // h_k = sum of all monomials of degree k
      Poly h;
      std::function<void(int, int, Poly)> rec = [&](int i, int left, Poly cur) {
        if (i == m - 1) {
          h += cur * Poly::var(alph[i], left);
          return;
        }
        for (int e = 0; e <= left; ++e) rec(i + 1, left - e, cur * Poly::var(alph[i], e));
      };
      rec(0, k, Poly(1));
      CHECK(complete_symmetric_in_elementary(m, k, E) == h);
    }
  }
}

TEST_CASE("elementary symmetric examples") {
  VariableTable t;
  int x1 = t.add_mark("x1"), x2 = t.add_mark("x2"), x3 = t.add_mark("x3");
  Poly X1 = Poly::var(x1), X2 = Poly::var(x2), X3 = Poly::var(x3);
  CHECK(elementary_symmetric({x1, x2, x3}, 2) == X1 * X2 + X2 * X3 + X3 * X1);
  CHECK(elementary_symmetric({x1}, 0) == Poly(1));
  CHECK(elementary_symmetric({x1, x2}, 4).is_zero());
}

TEST_CASE("complete symmetric examples and the derivative identity") {
  VariableTable t;
  int E1 = t.add_mark("E1"), E2 = t.add_mark("E2"), x = t.add_mark("x");
  std::vector<Poly> E{Poly::var(E1), Poly::var(E2)};
  CHECK(complete_symmetric_in_elementary(2, 1, E) == E[0]);
  for (int N = 1; N <= 4; ++N) CHECK(complete_symmetric_in_elementary(1, N, {Poly::var(x)}) == Poly::var(x, N));
  // d p_{2,3} / d E_2 as a divided difference at coincident points.
  Poly p = power_sum_in_elementary(2, 3, E);
  CHECK(divided_difference(p, E2, E[1], E[1]) == -3 * complete_symmetric_in_elementary(2, 1, E));
}

TEST_CASE("substitute and divided differences") {
  VariableTable t;
  int x = t.add_mark("x"), y = t.add_mark("y");
  Poly X = Poly::var(x), Y = Poly::var(y), a = Poly::var(0);
  CHECK(substitute(X - Y, {{y, X}}).is_zero());
  for (int N = 1; N <= 4; ++N) {
    CHECK(substitute(a * pow(X, N), {{0, Poly(1)}}) == pow(X, N));
    // U of a 2-valent vertex, at y := x
    Poly U = divided_difference(pow(X, N + 1), x, X, Y);
    CHECK(U * (X - Y) == pow(X, N + 1) - pow(Y, N + 1));
    CHECK(substitute(U, {{y, X}}) == Rational(N + 1) * pow(X, N));
  }
  // p_{2,3} differenced in E_1 between two alphabets
  int E1 = t.add_mark("E1"), F1 = t.add_mark("F1"), E2 = t.add_mark("E2"), T = t.add_mark("T");
  Poly p = power_sum_in_elementary(2, 3, {Poly::var(T), Poly::var(E2)});
  Poly q = divided_difference(p, T, Poly::var(E1), Poly::var(F1));
  Poly diff = substitute(p, {{T, Poly::var(E1)}}) - substitute(p, {{T, Poly::var(F1)}});
  CHECK(q * (Poly::var(E1) - Poly::var(F1)) == diff);
  CHECK(divide_exact(diff, Poly::var(E1) - Poly::var(F1)) == q);
}

TEST_CASE("homogeneity is preserved by products and substitution") {
  VariableTable t;
  std::vector<int> xs{t.add_mark("x"), t.add_mark("y"), t.add_mark("z")};
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    // homogeneous random polynomials: products of linear forms times powers of a
    auto hom = [&](int deg) {
      Poly p(1);
      std::uniform_int_distribution<int> c(-3, 3);
      for (int d = 0; d < deg; ++d) {
        Poly lin;
        for (int v : xs) lin += c(rng) * Poly::var(v);
        p *= lin;
      }
      return p;
    };
    Poly p = hom(2), q = hom(3);
    if (p.is_zero() || q.is_zero()) continue;
    CHECK((p * q).bidegree(t) == Bideg{0, 10});
    Poly s = substitute(p * q, {{xs[0], hom(1)}});
    CHECK(s.is_homogeneous(t));
  }
}
