#include "krlab/complex.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <numeric>
#include <optional>

#include "krlab/moy.hpp"

namespace krlab::complex {

using poly::Rational;
using poly::VariableTable;

namespace {

Matrix mul(const Matrix& l, const Matrix& r, std::size_t rows, std::size_t cols) {
  Matrix out = mf::zero_matrix(rows, cols);
  std::size_t inner = r.size();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (l[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!r[k][j].is_zero()) out[i][j] += l[i][k] * r[k][j];
    }
  return out;
}

bool is_zero(const Matrix& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

Matrix sub(const Matrix& l, const Matrix& r) {
  Matrix out = l;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = 0; j < l[i].size(); ++j) out[i][j] -= r[i][j];
  return out;
}

}  // namespace

MfMorphism compose(const MfMorphism& g, const MfMorphism& f) {
  std::size_t c0 = f.f0.empty() ? 0 : f.f0[0].size();
  std::size_t c1 = f.f1.empty() ? 0 : f.f1[0].size();
  return {mul(g.f0, f.f0, g.f0.size(), c0), mul(g.f1, f.f1, g.f1.size(), c1)};
}

void check_morphism(const MatrixFactorization& src, const MatrixFactorization& dst, const MfMorphism& f,
                    Bideg degree) {
  std::size_t s0 = src.basis0.size(), s1 = src.basis1.size(), t0 = dst.basis0.size(), t1 = dst.basis1.size();
  auto shape = [](const Matrix& m, std::size_t r, std::size_t c) {
    if (m.size() != r) return false;
    for (const auto& row : m)
      if (row.size() != c) return false;
    return true;
  };
  if (!shape(f.f0, t0, s0) || !shape(f.f1, t1, s1)) throw DomainError("morphism shape mismatch");
  // dst.d0 f0 = f1 src.d0 and dst.d1 f1 = f0 src.d1
  if (!(mul(dst.d0, f.f0, t1, s0) == mul(f.f1, src.d0, t1, s0)) ||
      !(mul(dst.d1, f.f1, t0, s1) == mul(f.f0, src.d1, t0, s1)))
    throw DomainError("morphism does not commute with the differentials");
  auto degrees = [&](const Matrix& m, const std::vector<Bideg>& from, const std::vector<Bideg>& to) {
    for (std::size_t r = 0; r < to.size(); ++r)
      for (std::size_t c = 0; c < from.size(); ++c) {
        auto d = m[r][c].bidegree(*src.table);
        if (d && *d != degree + from[c] - to[r]) throw DomainError("morphism entry has wrong bidegree");
      }
  };
  degrees(f.f0, src.basis0, dst.basis0);
  degrees(f.f1, src.basis1, dst.basis1);
}

namespace {

// Diagonal morphism on the Koszul basis scaling e_b by scale(b), for the given flip.
MfMorphism diagonal_koszul_map(int rows, int flip, const std::function<Poly(unsigned)>& scale) {
  MfMorphism f;
  for (int eps = 0; eps < 2; ++eps) {
    auto basis = mf::koszul_basis(rows, eps ^ flip);
    Matrix m = mf::zero_matrix(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) m[i][i] = scale(basis[i]);
    (eps == 0 ? f.f0 : f.f1) = std::move(m);
  }
  return f;
}

// Marks may coincide when an arc returns to the crossing it left.
CrossingModel make_crossing(const mf::TablePtr& table, int sign, int x1, int y1, int x2, int y2, int N) {
  if (sign != 1 && sign != -1) throw DomainError("crossing sign must be +1 or -1");
  CrossingModel c;
  c.sign = sign;
  c.x1 = x1, c.y1 = y1, c.x2 = x2, c.y2 = y2;
  Poly X1 = Poly::var(x1), Y1 = Poly::var(y1), X2 = Poly::var(x2), Y2 = Poly::var(y2);
  c.s = X2 - X1;

  auto wide = moy::vertex_factorization(table, N, {{1, {x1}}, {1, {y1}}}, {{1, {x2}}, {1, {y2}}});
  // rows (a(U1 + x1 U2), x1+y1-x2-y2) and (a U2, (x2-x1)(x1-y2))
  c.gamma1 = mf::row_operation(wide, 0, 1, X1);
  c.gamma0 = c.gamma1;
  c.gamma0.shift = {0, 0};
  const auto& r = c.gamma1.rows[1];
  c.gamma0.rows[1] = mf::make_row(*table, N, r.left * c.s, X1 - Y2);
  if (!(c.gamma0.rows[1].right * c.s == r.right)) throw DomainError("crossing model rows are inconsistent");

  c.chi0 = diagonal_koszul_map(2, 0, [&](unsigned b) { return (b & 2u) ? Poly(1) : c.s; });
  c.chi1 = diagonal_koszul_map(2, 0, [&](unsigned b) { return (b & 2u) ? c.s : Poly(1); });
  return c;
}

}  // namespace

CrossingModel crossing_model(const mf::TablePtr& table, int sign, int x1, int y1, int x2, int y2, int N) {
  std::vector<int> marks{x1, y1, x2, y2};
  std::sort(marks.begin(), marks.end());
  if (std::adjacent_find(marks.begin(), marks.end()) != marks.end())
    throw DomainError("crossing model needs four distinct marks");
  return make_crossing(table, sign, x1, y1, x2, y2, N);
}

std::size_t ChainComplexOfMF::generators() const {
  std::size_t n = 0;
  for (const auto& [i, m] : terms) n += m.rank();
  return n;
}

void ChainComplexOfMF::check() const {
  for (const auto& [i, m] : terms) {
    m.check();
    if (!m.potential.is_zero()) throw DomainError("complex term does not factorize zero");
  }
  for (const auto& [i, f] : d_chi) {
    auto s = terms.find(i), t = terms.find(i + 1);
    if (s == terms.end() || t == terms.end()) throw DomainError("d_chi between missing terms");
    check_morphism(s->second, t->second, f, {0, 0});
    auto next = d_chi.find(i + 1);
    if (next != d_chi.end()) {
      auto sq = compose(next->second, f);
      if (!is_zero(sq.f0) || !is_zero(sq.f1)) throw DomainError("d_chi does not square to zero");
    }
  }
}

namespace {

struct UnionFind {
  std::vector<int> p;
  int make() {
    p.push_back(static_cast<int>(p.size()));
    return p.back();
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

struct CrossingSite {
  int sign;
  int x1, y1, x2, y2;  // temporary ids before arc compaction
};

int count_components(const braid::BraidWord& w) {
  std::vector<int> perm(w.strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : w.letters) std::swap(perm[std::abs(l) - 1], perm[std::abs(l)]);
  std::vector<bool> seen(w.strands);
  int cycles = 0;
  for (int s = 0; s < w.strands; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (int t = s; !seen[t]; t = perm[t]) seen[t] = true;
  }
  return cycles;
}

}  // namespace

ChainComplexOfMF build_complex(const braid::BraidWord& w, int N, const std::vector<ExtraMark>& extra,
                               BuildInfo* info) {
  w.validate();
  if (N < 1) throw DomainError("N must be at least 1");
  const int m = w.strands;
  const int len = static_cast<int>(w.letters.size());
  for (const auto& e : extra)
    if (e.before < 0 || e.before > len || e.strand < 1 || e.strand > m) throw DomainError("extra mark out of range");

  UnionFind uf;
  std::vector<int> bottom(m + 1), cur(m + 1);
  for (int p = 1; p <= m; ++p) bottom[p] = cur[p] = uf.make();
  std::vector<CrossingSite> sites;
  std::vector<std::pair<int, int>> arcs;  // (entrance, exit) of extra-mark subdivisions
  for (int k = 0; k <= len; ++k) {
    for (const auto& e : extra)
      if (e.before == k) {
        int v = uf.make();
        arcs.emplace_back(cur[e.strand], v);
        cur[e.strand] = v;
      }
    if (k == len) break;
    int l = w.letters[k], i = std::abs(l);
    int top_left = uf.make(), top_right = uf.make();
    sites.push_back({l > 0 ? 1 : -1, top_right, top_left, cur[i], cur[i + 1]});
    cur[i] = top_left;
    cur[i + 1] = top_right;
  }
  std::vector<bool> circle(m + 1, false);
  for (int p = 1; p <= m; ++p) {
    if (cur[p] == bottom[p]) circle[p] = true;
    uf.unite(cur[p], bottom[p]);
  }

  auto table = std::make_shared<VariableTable>();
  std::map<int, int> mark_of;  // union-find root -> variable id
  auto mark = [&](int tmp) {
    int r = uf.find(tmp);
    auto it = mark_of.find(r);
    if (it != mark_of.end()) return it->second;
    int id = table->add_mark("x" + std::to_string(mark_of.size() + 1));
    mark_of[r] = id;
    return id;
  };
  std::vector<CrossingModel> models;
  // Marks are created lazily; collect all ids first so the table is complete before building rows.
  std::vector<std::array<int, 4>> site_marks;
  for (const auto& s : sites) site_marks.push_back({mark(s.x1), mark(s.y1), mark(s.x2), mark(s.y2)});
  std::vector<std::pair<int, int>> arc_marks;
  for (const auto& [en, ex] : arcs) arc_marks.emplace_back(mark(en), mark(ex));
  std::vector<int> circle_marks;
  for (int p = 1; p <= m; ++p)
    if (circle[p]) circle_marks.push_back(mark(cur[p]));

  const int c = static_cast<int>(sites.size());
  // One container spec: common rows first, then the gamma0 and gamma1 second rows of each crossing.
  mf::KoszulSpec all;
  all.table = table;
  all.N = N;
  std::vector<Poly> s_scalars;
  for (int j = 0; j < c; ++j) {
    auto [x1, y1, x2, y2] = site_marks[j];
    models.push_back(make_crossing(table, sites[j].sign, x1, y1, x2, y2, N));
    all.rows.push_back(models.back().gamma0.rows[0]);
    s_scalars.push_back(models.back().s);
  }
  for (const auto& [en, ex] : arc_marks) {
    auto v = moy::vertex_factorization(table, N, {{1, {ex}}}, {{1, {en}}});
    all.rows.push_back(v.rows[0]);
  }
  for (int x : circle_marks) {
    auto v = moy::vertex_factorization(table, N, {{1, {x}}}, {{1, {x}}});
    all.rows.push_back(v.rows[0]);
  }
  int common = static_cast<int>(all.rows.size());
  for (int j = 0; j < c; ++j) all.rows.push_back(models[j].gamma0.rows[1]);
  for (int j = 0; j < c; ++j) all.rows.push_back(models[j].gamma1.rows[1]);

  // Exclude marks through common rows that are linear in some mark.
  std::vector<bool> excluded(table->size(), false);
  int n_excluded = 0;
  for (bool progress = true; progress;) {
    progress = false;
    for (int r = 0; r < common && !progress; ++r)
      for (int v = table->size() - 1; v >= 1 && !progress; --v) {
        if (!poly::linear_in(all.rows[r].right, v)) continue;
        mf::Exclusion ex;
        all = mf::exclude_variable(all, r, v, &ex);
        for (auto& s : s_scalars) s = poly::substitute(s, {{v, ex.value}});
        excluded[v] = true;
        ++n_excluded;
        --common;
        progress = true;
      }
  }

  ChainComplexOfMF out;
  out.table = table;
  out.N = N;
  for (int v = 1; v < table->size(); ++v)
    if (!excluded[v]) out.ring_vars.push_back(v);

  const int rows = common + c;
  const int flip = c % 2;
  struct Vertex {
    unsigned state;
    int degree;
    mf::MatrixFactorization mf;
    std::size_t start0 = 0, start1 = 0;
  };
  std::vector<Vertex> vertices;
  for (unsigned st = 0; st < (1u << c); ++st) {
    mf::KoszulSpec spec;
    spec.table = table;
    spec.N = N;
    spec.flip = flip;
    spec.rows.assign(all.rows.begin(), all.rows.begin() + common);
    int degree = 0;
    for (int j = 0; j < c; ++j) {
      bool hi = st >> j & 1;
      bool wide = sites[j].sign > 0 ? !hi : hi;
      spec.rows.push_back(all.rows[common + (wide ? c : 0) + j]);
      if (sites[j].sign > 0) {
        degree += hi ? 0 : -1;
        spec.shift = spec.shift + Bideg{1, N - 1};
      } else {
        degree += hi ? 1 : 0;
        spec.shift = spec.shift + (hi ? Bideg{-1, -N - 1} : Bideg{-1, -N + 1});
      }
    }
    vertices.push_back({st, degree, mf::koszul(spec)});
  }

  // Assemble terms as direct sums in increasing state order.
  for (auto& v : vertices) {
    auto& term = out.terms[v.degree];
    auto& sums = out.summands[v.degree];
    if (sums.empty()) term = v.mf;
    else term = mf::direct_sum(term, v.mf);
    Summand s;
    s.start0 = term.basis0.size() - v.mf.basis0.size();
    s.start1 = term.basis1.size() - v.mf.basis1.size();
    s.len0 = v.mf.basis0.size();
    s.len1 = v.mf.basis1.size();
    for (int j = 0; j < c; ++j) s.label += (v.state >> j & 1) ? '1' : '0';
    v.start0 = s.start0;
    v.start1 = s.start1;
    sums.push_back(s);
  }
  for (auto& [i, term] : out.terms) {
    auto nt = out.terms.find(i + 1);
    if (nt == out.terms.end()) continue;
    MfMorphism f{mf::zero_matrix(nt->second.basis0.size(), term.basis0.size()),
                 mf::zero_matrix(nt->second.basis1.size(), term.basis1.size())};
    out.d_chi[i] = f;
  }
  for (const auto& v : vertices)
    for (int j = 0; j < c; ++j) {
      if (v.state >> j & 1) continue;
      const auto& t = vertices[v.state | (1u << j)];
      int sign = std::popcount(v.state & ((1u << j) - 1)) % 2 ? -1 : 1;
      unsigned bit = 1u << (common + j);
      auto& f = out.d_chi[v.degree];
      for (int eps = 0; eps < 2; ++eps) {
        auto basis = mf::koszul_basis(rows, eps ^ flip);
        auto& mat = eps == 0 ? f.f0 : f.f1;
        std::size_t so = eps == 0 ? v.start0 : v.start1, to = eps == 0 ? t.start0 : t.start1;
        for (std::size_t k = 0; k < basis.size(); ++k) {
          bool set = basis[k] & bit;
          // positive crossings map gamma1 -> gamma0 (chi1), negative ones gamma0 -> gamma1 (chi0)
          bool scaled = sites[j].sign > 0 ? set : !set;
          Poly e = scaled ? s_scalars[j] : Poly(1);
          mat[to + k][so + k] = sign < 0 ? -e : e;
        }
      }
    }

  if (info) {
    info->crossings = c;
    info->components = count_components(w);
    info->excluded = n_excluded;
    info->cube_states.clear();
    for (const auto& v : vertices) {
      std::string s;
      for (int j = 0; j < c; ++j) s += (v.state >> j & 1) ? '1' : '0';
      info->cube_states.push_back(s);
    }
  }
  return out;
}

namespace {

struct Block {
  int degree;
  MatrixFactorization mf;
  std::string label;
  bool alive = true;
};

Matrix submatrix(const Matrix& m, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
  Matrix out = mf::zero_matrix(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out[r][c] = m[r0 + r][c0 + c];
  return out;
}

// Inverse of a constant invertible square matrix, or nullopt.
std::optional<Matrix> constant_inverse(const Matrix& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      if (!m[i][j].is_constant()) return std::nullopt;
      a[i][j] = m[i][j].constant_term();
    }
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  Matrix out = mf::zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = Poly(a[i][n + j]);
  return out;
}

}  // namespace

ChainComplexOfMF gaussian_eliminate(const ChainComplexOfMF& c) {
  std::vector<Block> blocks;
  std::map<std::pair<std::size_t, std::size_t>, MfMorphism> maps;
  std::map<int, std::vector<std::size_t>> by_degree;
  std::map<int, std::vector<std::size_t>> block_ids;

  for (const auto& [i, term] : c.terms) {
    std::vector<Summand> sums;
    auto it = c.summands.find(i);
    if (it != c.summands.end() && !it->second.empty()) sums = it->second;
    else sums.push_back({0, term.basis0.size(), 0, term.basis1.size(), ""});
    for (const auto& s : sums) {
      MatrixFactorization m;
      m.table = term.table;
      m.N = term.N;
      m.potential = term.potential;
      m.basis0.assign(term.basis0.begin() + s.start0, term.basis0.begin() + s.start0 + s.len0);
      m.basis1.assign(term.basis1.begin() + s.start1, term.basis1.begin() + s.start1 + s.len1);
      m.d0 = submatrix(term.d0, s.start1, s.len1, s.start0, s.len0);
      m.d1 = submatrix(term.d1, s.start0, s.len0, s.start1, s.len1);
      block_ids[i].push_back(blocks.size());
      blocks.push_back({i, std::move(m), s.label});
    }
    // The summands must split the term's differential.
    for (const auto& s : sums)
      for (const auto& t : sums) {
        if (&s == &t) continue;
        if (!is_zero(submatrix(term.d0, t.start1, t.len1, s.start0, s.len0)) ||
            !is_zero(submatrix(term.d1, t.start0, t.len0, s.start1, s.len1)))
          throw DomainError("summands do not split the matrix factorization differential");
      }
  }
  for (const auto& [i, f] : c.d_chi) {
    auto si = c.summands.find(i), ti = c.summands.find(i + 1);
    const auto& src = block_ids[i];
    const auto& dst = block_ids[i + 1];
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < dst.size(); ++b) {
        const auto& S = blocks[src[a]].mf;
        const auto& T = blocks[dst[b]].mf;
        std::size_t s0 = si != c.summands.end() && !si->second.empty() ? si->second[a].start0 : 0;
        std::size_t s1 = si != c.summands.end() && !si->second.empty() ? si->second[a].start1 : 0;
        std::size_t t0 = ti != c.summands.end() && !ti->second.empty() ? ti->second[b].start0 : 0;
        std::size_t t1 = ti != c.summands.end() && !ti->second.empty() ? ti->second[b].start1 : 0;
        MfMorphism g{submatrix(f.f0, t0, T.basis0.size(), s0, S.basis0.size()),
                     submatrix(f.f1, t1, T.basis1.size(), s1, S.basis1.size())};
        if (!is_zero(g.f0) || !is_zero(g.f1)) maps[{src[a], dst[b]}] = std::move(g);
      }
  }

  for (bool progress = true; progress;) {
    progress = false;
    for (auto& [key, phi] : maps) {
      auto [u, v] = key;
      if (!blocks[u].alive || !blocks[v].alive) continue;
      auto inv0 = constant_inverse(phi.f0);
      auto inv1 = constant_inverse(phi.f1);
      if (!inv0 || !inv1 || phi.f0.size() != blocks[u].mf.basis0.size() ||
          phi.f1.size() != blocks[u].mf.basis1.size())
        continue;
      MfMorphism phi_inv{*inv0, *inv1};
      std::vector<std::pair<std::size_t, MfMorphism>> deltas, gammas;  // x -> v and u -> y
      for (const auto& [k2, g] : maps) {
        if (k2.second == v && k2.first != u && blocks[k2.first].alive) deltas.emplace_back(k2.first, g);
        if (k2.first == u && k2.second != v && blocks[k2.second].alive) gammas.emplace_back(k2.second, g);
      }
      for (const auto& [x, delta] : deltas)
        for (const auto& [y, gamma] : gammas) {
          MfMorphism corr = compose(gamma, compose(phi_inv, delta));
          auto it = maps.find({x, y});
          MfMorphism base{mf::zero_matrix(corr.f0.size(), corr.f0.empty() ? 0 : corr.f0[0].size()),
                          mf::zero_matrix(corr.f1.size(), corr.f1.empty() ? 0 : corr.f1[0].size())};
          if (it != maps.end()) base = it->second;
          MfMorphism updated{sub(base.f0, corr.f0), sub(base.f1, corr.f1)};
          maps[{x, y}] = updated;
        }
      blocks[u].alive = blocks[v].alive = false;
      progress = true;
      break;
    }
    if (progress)
      for (auto it = maps.begin(); it != maps.end();) {
        bool drop = !blocks[it->first.first].alive || !blocks[it->first.second].alive ||
                    (is_zero(it->second.f0) && is_zero(it->second.f1));
        it = drop ? maps.erase(it) : std::next(it);
      }
  }

  ChainComplexOfMF out;
  out.table = c.table;
  out.N = c.N;
  out.ring_vars = c.ring_vars;
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> offset;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!blocks[b].alive) continue;
    int i = blocks[b].degree;
    auto& sums = out.summands[i];
    auto& term = out.terms[i];
    if (sums.empty()) term = blocks[b].mf;
    else term = mf::direct_sum(term, blocks[b].mf);
    Summand s;
    s.len0 = blocks[b].mf.basis0.size();
    s.len1 = blocks[b].mf.basis1.size();
    s.start0 = term.basis0.size() - s.len0;
    s.start1 = term.basis1.size() - s.len1;
    s.label = blocks[b].label;
    offset[b] = {s.start0, s.start1};
    sums.push_back(s);
  }
  for (auto& [i, term] : out.terms) {
    auto nt = out.terms.find(i + 1);
    if (nt == out.terms.end()) continue;
    out.d_chi[i] = {mf::zero_matrix(nt->second.basis0.size(), term.basis0.size()),
                    mf::zero_matrix(nt->second.basis1.size(), term.basis1.size())};
  }
  for (const auto& [key, g] : maps) {
    auto [u, v] = key;
    auto& f = out.d_chi[blocks[u].degree];
    auto [s0, s1] = offset[u];
    auto [t0, t1] = offset[v];
    for (std::size_t r = 0; r < g.f0.size(); ++r)
      for (std::size_t q = 0; q < g.f0[r].size(); ++q) f.f0[t0 + r][s0 + q] = g.f0[r][q];
    for (std::size_t r = 0; r < g.f1.size(); ++r)
      for (std::size_t q = 0; q < g.f1[r].size(); ++q) f.f1[t1 + r][s1 + q] = g.f1[r][q];
  }
  return out;
}

}  // namespace krlab::complex
