#include <doctest.h>

#include "krlab/mf.hpp"

using namespace krlab;
using namespace krlab::mf;

namespace {

struct Ring {
  std::shared_ptr<VariableTable> t = std::make_shared<VariableTable>();
  int x, y, z;
  Ring() {
    x = t->add_mark("x", true);
    y = t->add_mark("y", true);
    z = t->add_mark("z", true);
  }
  Poly a() const { return Poly::var(0); }
  Poly X() const { return Poly::var(x); }
  Poly Y() const { return Poly::var(y); }
  Poly Z() const { return Poly::var(z); }
};

// h_N(u, v) = sum u^i v^{N-i}
Poly h(const Poly& u, const Poly& v, int N) {
  Poly s;
  for (int i = 0; i <= N; ++i) s += poly::pow(u, i) * poly::pow(v, N - i);
  return s;
}

KoszulSpec spec_of(const Ring& r, int N, std::vector<std::pair<Poly, Poly>> rows) {
  KoszulSpec s;
  s.table = r.t;
  s.N = N;
  for (auto& [l, rt] : rows) s.rows.push_back(make_row(*r.t, N, l, rt));
  return s;
}

bool same(const MatrixFactorization& m, const MatrixFactorization& n) {
  return m.basis0 == n.basis0 && m.basis1 == n.basis1 && m.d0 == n.d0 && m.d1 == n.d1 && m.potential == n.potential;
}

}  // namespace

TEST_CASE("koszul rank-2 factorizations") {
  Ring r;
  for (int N = 1; N <= 3; ++N) {
    auto m = koszul(spec_of(r, N, {{r.a() * h(r.X(), r.Y(), N), r.X() - r.Y()}}));
    CHECK(m.rank() == 2);
    CHECK(m.potential == r.a() * (poly::pow(r.X(), N + 1) - poly::pow(r.Y(), N + 1)));
    CHECK_NOTHROW(m.check());
    auto u = koszul(spec_of(r, N, {{Rational(N + 1) * r.a() * poly::pow(r.X(), N), Poly()}}));
    CHECK(u.potential.is_zero());
    REQUIRE(u.basis1.size() == 1);
    CHECK(u.basis1[0] == Bideg{-1, 1 - N});
  }
  CHECK_THROWS_AS(make_row(*r.t, 1, r.a(), r.X()), DomainError);
}

TEST_CASE("two-row koszul equals tensor of rows") {
  Ring r;
  int N = 2;
  auto s = spec_of(r, N, {{r.a() * h(r.X(), r.Y(), N), r.X() - r.Y()}, {r.a() * r.Z() * r.Z(), r.Z()}});
  auto m = koszul(s);
  CHECK(m.rank() == 4);
  CHECK_NOTHROW(m.check());
  CHECK(m.potential == s.potential());
  KoszulSpec s1 = s, s2 = s;
  s1.rows.resize(1);
  s2.rows.erase(s2.rows.begin());
  CHECK(same(tensor(koszul(s1), koszul(s2)), m));
}

TEST_CASE("swapping the entries of a row is a shifted flip") {
  Ring r;
  int N = 2;
  Poly a0 = r.a() * r.X(), a1 = r.X() * r.Y();  // degrees (2,2) and (0,4)
  auto lhs = koszul(spec_of(r, N, {{a1, a0}}));
  auto rhs = shift(koszul(spec_of(r, N, {{a0, a1}})), 1 - 0, N + 1 - 4, 1);
  CHECK(same(lhs, rhs));
  auto m = koszul(spec_of(r, N, {{a0, a1}}));
  CHECK(same(shift(shift(m, 0, 0, 1), 0, 0, 1), m));
  CHECK(same(shift(m, 0, 0, 0), m));
}

TEST_CASE("row operation builds the crossing model entries") {
  Ring r;
  int N = 2;
  Poly x1 = r.X(), y1 = r.Y(), x2 = r.Z();
  auto s = spec_of(r, N, {{r.a() * poly::pow(x1, N), x1 + y1 - x2}, {r.a() * poly::pow(x1, N - 1), x1 * y1 - x2 * x2}});
  auto t = row_operation(s, 0, 1, x1);
  CHECK(t.rows[0].left == s.rows[0].left + x1 * s.rows[1].left);
  CHECK(t.rows[1].right == s.rows[1].right - x1 * s.rows[0].right);
  CHECK(t.potential() == s.potential());
  CHECK(row_operation(s, 0, 1, Poly()).potential() == s.potential());
  CHECK_THROWS_AS(row_operation(s, 0, 1, r.a()), DomainError);
  auto tw = twist(s, 0, 1, Poly(0));
  CHECK(tw.rows[0].left == s.rows[0].left);
}

TEST_CASE("exclusion of a mark on a two-mark circle") {
  Ring r;
  for (int N = 1; N <= 3; ++N) {
    auto s = spec_of(r, N, {{r.a() * h(r.X(), r.Y(), N), r.X() - r.Y()}, {r.a() * h(r.Y(), r.X(), N), r.Y() - r.X()}});
    Exclusion e;
    auto t = exclude_variable(s, 0, r.y, &e);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].left == Rational(N + 1) * r.a() * poly::pow(r.X(), N));
    CHECK(t.rows[0].right.is_zero());
    CHECK(e.value == r.X());
    CHECK_THROWS_AS(exclude_variable(s, 0, 0, nullptr), DomainError);
  }
}

TEST_CASE("split contractibles") {
  Ring r;
  int N = 1;
  Poly w = r.a() * poly::pow(r.X(), 2);
  auto unit = koszul(spec_of(r, N, {{Poly(1), w}}));
  CHECK(split_contractibles(unit).rank() == 0);
  auto m = koszul(spec_of(r, N, {{r.a() * r.X(), r.X()}}));
  auto sum = direct_sum(m, shift(koszul(spec_of(r, N, {{w, Poly(1)}})), 2, 4, 0));
  auto red = split_contractibles(sum);
  CHECK(red.rank() == m.rank());
  CHECK_NOTHROW(red.check());
  CHECK(gdim(red, 20) == gdim(m, 20));
}

TEST_CASE("gdim of the unknot factorization") {
  Ring r;
  for (int N = 1; N <= 3; ++N) {
    auto u = koszul(spec_of(r, N, {{Rational(N + 1) * r.a() * poly::pow(r.X(), N), Poly()}}));
    auto g = gdim(u, 20);
    auto expect = GdimSeries::monomial(0, 0, 0, 1, 20) + GdimSeries::monomial(1, -1, 1 - N, 1, 20);
    CHECK(g == expect);
  }
  // a surviving internal variable
  auto tbl = std::make_shared<VariableTable>();
  int x = tbl->add_mark("x", false);
  KoszulSpec s;
  s.table = tbl;
  s.N = 1;
  s.rows.push_back(make_row(*tbl, 1, Poly::var(0) * Poly::var(x), Poly::var(x)));
  CHECK(gdim(koszul(s), 6) == GdimSeries::monomial(0, 0, 0, 1, 6));
}
