#include <doctest.h>

#include "krlab/moy.hpp"

using namespace krlab;
using namespace krlab::moy;
using mf::GdimSeries;

namespace {

constexpr int kTrunc = 24;

// 1 + tau alpha^-1 xi^x
GdimSeries one_plus(int x) { return GdimSeries::monomial(0, 0, 0, 1, kTrunc) + GdimSeries::monomial(1, -1, x, 1, kTrunc); }
GdimSeries xi(int x) { return GdimSeries::monomial(0, 0, x, 1, kTrunc); }

GdimSeries gdim_of(const std::string& name, int N) {
  auto f = graph_factorization(builtin_graph(name), N);
  f.mf.check();
  return mf::gdim(f.mf, kTrunc);
}

// Adds one extra mark on edge `e` (appended after the existing ones).
MoyGraph with_extra_mark(MoyGraph g, const std::string& e) {
  g.marks.push_back({e, "extra"});
  return g;
}

}  // namespace

TEST_CASE("DSL parsing and validation") {
  auto g = MoyGraph::parse("# circle\nv v\ne e 1 v v\nm e x  # mark\n");
  CHECK(g.vertices.size() == 1);
  CHECK(g.edges.size() == 1);
  CHECK(MoyGraph::parse(g.to_dsl()).to_dsl() == g.to_dsl());
  CHECK_THROWS_AS(MoyGraph::parse("v v\ne e 1 v w\nm e x\n"), DomainError);
  CHECK_THROWS_AS(MoyGraph::parse("v v\ne e 1 v v\n"), DomainError);
  CHECK_THROWS_AS(MoyGraph::parse("q\n"), ParseError);
  CHECK_THROWS_AS(builtin_graph("nope"), DomainError);
  for (const auto& n : builtin_names()) CHECK_NOTHROW(builtin_graph(n));
}

TEST_CASE("vertex factorizations") {
  auto t = std::make_shared<poly::VariableTable>();
  int x = t->add_mark("x"), y = t->add_mark("y"), u = t->add_mark("u"), v = t->add_mark("v"), w = t->add_mark("w");
  auto X12 = t->add_alphabet("X", 2), Y12 = t->add_alphabet("Y", 2);
  for (int N = 1; N <= 3; ++N) {
    auto arc = vertex_factorization(t, N, {{1, {x}}}, {{1, {y}}});
    REQUIRE(arc.rows.size() == 1);
    poly::Poly hN;
    for (int i = 0; i <= N; ++i) hN += poly::Poly::var(x, i) * poly::Poly::var(y, N - i);
    CHECK(arc.rows[0].left == poly::Poly::var(0) * hN);
    CHECK(arc.rows[0].right == poly::Poly::var(x) - poly::Poly::var(y));
    CHECK(arc.shift == poly::Bideg{0, 0});

    auto wide = vertex_factorization(t, N, {{1, {x}}, {1, {y}}}, {{1, {u}}, {1, {v}}});
    CHECK(wide.rows.size() == 2);
    CHECK(wide.shift == poly::Bideg{0, -1});
    auto raw = [&](std::vector<int> vars) {
      poly::Poly p;
      for (int q : vars) p += poly::Poly::var(q, N + 1);
      return p;
    };
    CHECK(wide.potential() == poly::Poly::var(0) * (raw({x, y}) - raw({u, v})));

    // m = 3 with a 2-colored alphabet on each side
    auto three = vertex_factorization(t, N, {{2, X12}, {1, {w}}}, {{2, Y12}, {1, {u}}});
    CHECK(three.rows.size() == 3);
    CHECK(three.shift == poly::Bideg{0, -2});
    std::vector<poly::Poly> EX{poly::Poly::var(X12[0]), poly::Poly::var(X12[1])};
    std::vector<poly::Poly> EY{poly::Poly::var(Y12[0]), poly::Poly::var(Y12[1])};
    poly::Poly expect = poly::power_sum_in_elementary(2, N + 1, EX) + poly::Poly::var(w, N + 1) -
                        poly::power_sum_in_elementary(2, N + 1, EY) - poly::Poly::var(u, N + 1);
    CHECK(three.potential() == poly::Poly::var(0) * expect);
    CHECK_NOTHROW(mf::koszul(three).check());
  }
  CHECK_THROWS_AS(vertex_factorization(t, 1, {{1, {x}}}, {{1, {y}}, {1, {u}}}), DomainError);
}

TEST_CASE("circle graded dimension") {
  for (int N = 1; N <= 3; ++N) {
    CHECK(gdim_of("circle", N) == one_plus(1 - N));
    auto two = with_extra_mark(builtin_graph("circle"), "e");
    auto f = graph_factorization(two, N);
    CHECK(f.mf.rank() == 2);
    CHECK(mf::gdim(f.mf, kTrunc) == one_plus(1 - N));
  }
}

TEST_CASE("R3 decomposition graphs") {
  for (int N = 1; N <= 3; ++N) {
    CAPTURE(N);
    auto g0 = gdim_of("r3-gamma0", N);
    auto g1 = gdim_of("r3-gamma1", N);
    auto g = gdim_of("r3-gamma", N);
    CHECK(g0 == one_plus(-N + 1) * one_plus(-N + 1) * one_plus(-N + 3));
    CHECK(g1 == xi(-2) * one_plus(-N + 1) * one_plus(-N + 3) * one_plus(-N + 5));
    CHECK(g == (xi(0) + xi(-2)) * one_plus(-N + 1) * one_plus(-N + 3) * one_plus(-N + 3));
    CHECK(g.total() == 16);
    CHECK(g == g0 + g1);
  }
}

TEST_CASE("edge splitting") {
  for (int N = 1; N <= 3; ++N) {
    auto g = gdim_of("theta-split", N);
    auto g1 = gdim_of("theta-merged", N);
    CHECK(g == (xi(1) + xi(-1)) * g1);
  }
}

TEST_CASE("marking independence on builtin graphs") {
  for (int N = 1; N <= 2; ++N)
    for (const auto& name : builtin_names()) {
      auto g = builtin_graph(name);
      auto base = mf::gdim(graph_factorization(g, N).mf, kTrunc);
      for (const auto& e : g.edges) {
        CAPTURE(name);
        CAPTURE(e.id);
        auto extra = graph_factorization(with_extra_mark(g, e.id), N);
        CHECK(mf::gdim(extra.mf, kTrunc) == base);
      }
    }
}
