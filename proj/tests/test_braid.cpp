#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <set>

#include "krlab/braid.hpp"

using namespace krlab;
using namespace krlab::braid;

namespace {

using QMat = std::vector<std::vector<mpq_class>>;

QMat identity(int n) {
  QMat m(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat mul(const QMat& a, const QMat& b) {
  int n = static_cast<int>(a.size());
  QMat c(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Unreduced Burau matrix at t = 3.
QMat burau(const BraidWord& w) {
  const mpq_class t = 3;
  QMat m = identity(w.strands);
  for (int l : w.letters) {
    QMat g = identity(w.strands);
    int i = std::abs(l) - 1;
    if (l > 0) {
      g[i][i] = 1 - t, g[i][i + 1] = t, g[i + 1][i] = 1, g[i + 1][i + 1] = 0;
    } else {
      g[i][i] = 0, g[i][i + 1] = 1, g[i + 1][i] = 1 / t, g[i + 1][i + 1] = 1 - 1 / t;
    }
    m = mul(m, g);
  }
  return m;
}

// Conjugacy invariants: traces of the first few powers.
std::vector<mpq_class> traces(const BraidWord& w) {
  QMat b = burau(w), p = b;
  std::vector<mpq_class> out;
  for (int k = 0; k < 3; ++k) {
    mpq_class tr = 0;
    for (std::size_t i = 0; i < p.size(); ++i) tr += p[i][i];
    out.push_back(tr);
    p = mul(p, b);
  }
  return out;
}

BraidWord random_word(std::mt19937& rng, int strands, int len) {
  std::uniform_int_distribution<int> idx(1, strands - 1), sg(0, 1);
  BraidWord w{strands, {}};
  for (int i = 0; i < len; ++i) w.letters.push_back(sg(rng) ? idx(rng) : -idx(rng));
  return w;
}

}  // namespace

TEST_CASE("parse") {
  auto w = parse("1 -2 1");
  CHECK(w.strands == 3);
  CHECK(w.letters == std::vector<int>{1, -2, 1});
  auto e = parse("", 2);
  CHECK(e.strands == 2);
  CHECK(e.letters.empty());
  auto s = parse("s1^-1");
  CHECK(s.strands == 2);
  CHECK(s.letters == std::vector<int>{-1});
  CHECK(parse("s1 s2^-1 s1 # comment").letters == std::vector<int>{1, -2, 1});
  CHECK(parse("s2^{-1} s1^1").letters == std::vector<int>{-2, 1});
  CHECK_THROWS_AS(parse("1 x"), ParseError);
  CHECK_THROWS_AS(parse("0"), ParseError);
  CHECK_THROWS_AS(parse("3", 2), ParseError);
  CHECK(parse("1 -2 1").writhe() == 1);
}

TEST_CASE("canonical form and simplify examples") {
  CHECK(canonical(parse("2 1 -1 1")).letters == std::vector<int>{1, 2});
  CHECK(canonical(parse("1 2 -1")).letters == std::vector<int>{2});
  auto a = simplify(parse("1 -1 2"));
  CHECK(a.strands == 2);
  CHECK(a.letters.empty());
  auto b = simplify(parse("1", 2));
  CHECK(b.strands == 1);
  CHECK(b.letters.empty());
  auto c = simplify(parse("1", 3));
  CHECK(c.strands == 2);
  CHECK(c.letters.empty());
  // absent top strand stays
  auto d = simplify(parse("", 3));
  CHECK(d.strands == 3);
  auto e = simplify(parse("-1 -1", 3));
  CHECK(e.strands == 3);
  // the conjugation identity (s2 s1)^-1 s1 (s2 s1) = s2 as braids
  CHECK(burau(parse("-1 -2 1 2 1")) == burau(parse("2", 3)));
}

TEST_CASE("markov search") {
  auto r = markov_search(parse("1 2 1"), 100, [](const BraidWord& w) { return w == canonical(parse("2 1 2")); });
  CHECK(r.goal >= 0);
  auto r2 = markov_search(parse("1", 3), 1000, [](const BraidWord& w) { return w.strands == 2 && w.letters.empty(); });
  REQUIRE(r2.goal >= 0);
  for (const auto& line : trace(r2, r2.goal)) {
    auto kind = line.substr(0, line.find(' '));
    CHECK((kind == "rotate" || kind == "braid" || kind == "braid-mixed" || kind == "commute" || kind == "conjugate" || kind == "destabilize"));
  }
  auto r3 = markov_search(parse("1 2 -1 2 1 -2 1"), 1);
  CHECK(r3.exhausted);
  CHECK(r3.nodes[0].word == canonical(parse("1 2 -1 2 1 -2 1")));
}

TEST_CASE("search moves preserve the braid conjugacy class") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto w = random_word(rng, 3 + trial % 2, 5);
    auto inv = traces(w);
    auto r = markov_search(w, 40);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      bool destab = false;
      for (const auto& line : trace(r, static_cast<int>(i))) destab |= line.rfind("destabilize", 0) == 0;
      if (!destab) CHECK(traces(r.nodes[i].word) == inv);
    }
  }
}

TEST_CASE("simplify properties") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    auto w = random_word(rng, 2 + trial % 3, 1 + trial % 6);
    auto s = simplify(w);
    CHECK(simplify(s) == s);
    // only positive destabilizations: writhe drops by exactly the number of removed strands
    CHECK(w.writhe() - (w.strands - s.strands) == s.writhe());
  }
}
