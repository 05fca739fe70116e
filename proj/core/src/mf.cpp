#include "krlab/mf.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace krlab::mf {

namespace {

Bideg potential_degree(int N) { return {2, 2 * N + 2}; }

using QMatrix = std::vector<std::vector<Rational>>;

std::size_t rank_q(QMatrix m) {
  std::size_t rank = 0;
  std::size_t rows = m.size();
  if (!rows) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        if (sgn(m[rank][k]) != 0) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Poly>(cols));
}

Matrix multiply(const Matrix& l, const Matrix& r) {
  std::size_t n = l.size();
  std::size_t k = r.size();
  std::size_t m = k ? r[0].size() : 0;
  Matrix out = zero_matrix(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (l[i][j].is_zero()) continue;
      for (std::size_t c = 0; c < m; ++c)
        if (!r[j][c].is_zero()) out[i][c] += l[i][j] * r[j][c];
    }
  return out;
}

void MatrixFactorization::check() const {
  auto square_check = [&](const Matrix& first, const Matrix& second, std::size_t n) {
    if (n == 0) return;
    Matrix prod = multiply(second, first);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Poly expect = i == j ? potential : Poly();
        if (!(prod[i][j] == expect)) throw DomainError("matrix factorization does not square to the potential");
      }
  };
  if (d0.size() != basis1.size() || d1.size() != basis0.size())
    throw DomainError("matrix factorization shape mismatch");
  square_check(d0, d1, basis0.size());
  square_check(d1, d0, basis1.size());
  auto degree_check = [&](const Matrix& d, const std::vector<Bideg>& src, const std::vector<Bideg>& dst) {
    for (std::size_t r = 0; r < dst.size(); ++r)
      for (std::size_t c = 0; c < src.size(); ++c) {
        auto deg = d[r][c].bidegree(*table);
        if (deg && *deg != Bideg{1, N + 1} + src[c] - dst[r])
          throw DomainError("differential entry has wrong bidegree");
      }
  };
  degree_check(d0, basis0, basis1);
  degree_check(d1, basis1, basis0);
}

Poly KoszulSpec::potential() const {
  Poly w;
  for (const auto& r : rows) w += r.left * r.right;
  return w;
}

KoszulRow make_row(const VariableTable& t, int N, Poly left, Poly right) {
  auto dl = left.bidegree(t);
  auto dr = right.bidegree(t);
  if (!dl && !dr) throw DomainError("Koszul row with two zero entries has no determined degree");
  if (dl && dr && *dl + *dr != potential_degree(N)) throw DomainError("Koszul row violates the degree condition");
  Bideg ld = dl ? *dl : potential_degree(N) - *dr;
  return {std::move(left), std::move(right), ld};
}

Bideg odd_generator_degree(const KoszulRow& row, int N) {
  return {1 - row.left_deg.a, N + 1 - row.left_deg.x};
}

std::vector<unsigned> koszul_basis(int rows, int parity) {
  std::vector<unsigned> out;
  for (unsigned b = 0; b < (1u << rows); ++b)
    if (std::popcount(b) % 2 == parity) out.push_back(b);
  return out;
}

std::vector<std::pair<unsigned, Poly>> koszul_d(const KoszulSpec& spec, unsigned b) {
  std::vector<std::pair<unsigned, Poly>> out;
  for (std::size_t j = 0; j < spec.rows.size(); ++j) {
    bool neg = std::popcount(b & ((1u << j) - 1)) % 2;
    const Poly& e = (b >> j & 1) ? spec.rows[j].right : spec.rows[j].left;
    if (e.is_zero()) continue;
    out.emplace_back(b ^ (1u << j), neg ? -e : e);
  }
  return out;
}

MatrixFactorization koszul(const KoszulSpec& spec) {
  int n = static_cast<int>(spec.rows.size());
  if (n > 20) throw DomainError("Koszul spec too large");
  for (const auto& r : spec.rows) {
    auto dl = r.left.bidegree(*spec.table);
    auto dr = r.right.bidegree(*spec.table);
    if ((dl && *dl != r.left_deg) || (dr && *dr != potential_degree(spec.N) - r.left_deg))
      throw DomainError("Koszul row violates the degree condition");
  }
  MatrixFactorization m;
  m.table = spec.table;
  m.N = spec.N;
  m.potential = spec.potential();
  std::vector<unsigned> parts[2] = {koszul_basis(n, 0), koszul_basis(n, 1)};
  std::unordered_map<unsigned, std::size_t> pos;
  for (int p = 0; p < 2; ++p)
    for (std::size_t i = 0; i < parts[p].size(); ++i) pos[parts[p][i]] = i;
  auto degree = [&](unsigned b) {
    Bideg d = spec.shift;
    for (int j = 0; j < n; ++j)
      if (b >> j & 1) d = d + odd_generator_degree(spec.rows[j], spec.N);
    return d;
  };
  // Component eps holds Koszul parity eps ^ flip.
  for (int eps = 0; eps < 2; ++eps) {
    auto& basis = eps == 0 ? m.basis0 : m.basis1;
    for (unsigned b : parts[eps ^ spec.flip]) basis.push_back(degree(b));
  }
  m.d0 = zero_matrix(m.basis1.size(), m.basis0.size());
  m.d1 = zero_matrix(m.basis0.size(), m.basis1.size());
  for (int eps = 0; eps < 2; ++eps) {
    auto& d = eps == 0 ? m.d0 : m.d1;
    for (unsigned b : parts[eps ^ spec.flip])
      for (auto& [t, c] : koszul_d(spec, b)) d[pos[t]][pos[b]] += c;
  }
  return m;
}

namespace {

struct Gen {
  int eps;
  std::size_t idx;
};

// Differential of generator (eps, idx): list of (target index in the other component, coefficient).
std::vector<std::pair<std::size_t, const Poly*>> apply_d(const MatrixFactorization& m, int eps, std::size_t idx) {
  const Matrix& d = eps == 0 ? m.d0 : m.d1;
  std::vector<std::pair<std::size_t, const Poly*>> out;
  for (std::size_t r = 0; r < d.size(); ++r)
    if (!d[r][idx].is_zero()) out.emplace_back(r, &d[r][idx]);
  return out;
}

}  // namespace

MatrixFactorization tensor(const MatrixFactorization& m, const MatrixFactorization& n) {
  MatrixFactorization t;
  t.table = m.table;
  t.N = m.N;
  t.potential = m.potential + n.potential;
  // component eps = list of (eps_m, i, eps_n, j)
  std::vector<std::tuple<int, std::size_t, int, std::size_t>> comp[2];
  std::map<std::tuple<int, std::size_t, int, std::size_t>, std::size_t> index;
  const std::pair<int, int> order[2][2] = {{{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}};
  for (int eps = 0; eps < 2; ++eps) {
    for (auto [em, en] : order[eps]) {
      const auto& bm = em == 0 ? m.basis0 : m.basis1;
      const auto& bn = en == 0 ? n.basis0 : n.basis1;
      for (std::size_t i = 0; i < bm.size(); ++i)
        for (std::size_t j = 0; j < bn.size(); ++j) {
          index[{em, i, en, j}] = comp[eps].size();
          comp[eps].emplace_back(em, i, en, j);
          (eps == 0 ? t.basis0 : t.basis1).push_back(bm[i] + bn[j]);
        }
    }
  }
  t.d0 = zero_matrix(t.basis1.size(), t.basis0.size());
  t.d1 = zero_matrix(t.basis0.size(), t.basis1.size());
  for (int eps = 0; eps < 2; ++eps) {
    auto& d = eps == 0 ? t.d0 : t.d1;
    for (std::size_t col = 0; col < comp[eps].size(); ++col) {
      auto [em, i, en, j] = comp[eps][col];
      for (auto [r, c] : apply_d(m, em, i)) d[index.at({1 - em, r, en, j})][col] += *c;
      for (auto [r, c] : apply_d(n, en, j)) {
        auto& slot = d[index.at({em, i, 1 - en, r})][col];
        if (em) slot -= *c;
        else slot += *c;
      }
    }
  }
  return t;
}

MatrixFactorization shift(const MatrixFactorization& m, int da, int dx, int flip) {
  MatrixFactorization s = m;
  for (auto& d : s.basis0) d = d + Bideg{da, dx};
  for (auto& d : s.basis1) d = d + Bideg{da, dx};
  if (flip % 2) {
    std::swap(s.basis0, s.basis1);
    std::swap(s.d0, s.d1);
  }
  return s;
}

MatrixFactorization direct_sum(const MatrixFactorization& m, const MatrixFactorization& n) {
  if (!(m.potential == n.potential)) throw DomainError("direct sum of factorizations with different potentials");
  MatrixFactorization s;
  s.table = m.table;
  s.N = m.N;
  s.potential = m.potential;
  s.basis0 = m.basis0;
  s.basis0.insert(s.basis0.end(), n.basis0.begin(), n.basis0.end());
  s.basis1 = m.basis1;
  s.basis1.insert(s.basis1.end(), n.basis1.begin(), n.basis1.end());
  auto block = [](const Matrix& a, const Matrix& b, std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc) {
    Matrix out = zero_matrix(ar + br, ac + bc);
    for (std::size_t i = 0; i < ar; ++i)
      for (std::size_t j = 0; j < ac; ++j) out[i][j] = a[i][j];
    for (std::size_t i = 0; i < br; ++i)
      for (std::size_t j = 0; j < bc; ++j) out[ar + i][ac + j] = b[i][j];
    return out;
  };
  s.d0 = block(m.d0, n.d0, m.basis1.size(), m.basis0.size(), n.basis1.size(), n.basis0.size());
  s.d1 = block(m.d1, n.d1, m.basis0.size(), m.basis1.size(), n.basis0.size(), n.basis1.size());
  return s;
}

namespace {

void check_rows(const KoszulSpec& spec, int i, int j) {
  int n = static_cast<int>(spec.rows.size());
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw DomainError("invalid Koszul row indices");
}

void check_degree(const KoszulSpec& spec, const Poly& c, Bideg expected) {
  auto d = c.bidegree(*spec.table);
  if (d && *d != expected) throw DomainError("operation coefficient has wrong bidegree");
}

}  // namespace

KoszulSpec row_operation(const KoszulSpec& spec, int i, int j, const Poly& c) {
  check_rows(spec, i, j);
  check_degree(spec, c, spec.rows[i].left_deg - spec.rows[j].left_deg);
  KoszulSpec out = spec;
  out.rows[i].left += c * spec.rows[j].left;
  out.rows[j].right -= c * spec.rows[i].right;
  return out;
}

KoszulSpec twist(const KoszulSpec& spec, int i, int j, const Poly& k) {
  check_rows(spec, i, j);
  check_degree(spec, k, spec.rows[i].left_deg + spec.rows[j].left_deg - potential_degree(spec.N));
  KoszulSpec out = spec;
  out.rows[i].left += k * spec.rows[j].right;
  out.rows[j].left -= k * spec.rows[i].right;
  return out;
}

KoszulSpec exclude_variable(const KoszulSpec& spec, int row, int v, Exclusion* record) {
  if (row < 0 || row >= static_cast<int>(spec.rows.size())) throw DomainError("invalid Koszul row index");
  auto lin = poly::linear_in(spec.rows[row].right, v);
  if (!lin) throw DomainError("right entry is not linear with unit coefficient in the excluded variable");
  auto [c, rest] = *lin;
  Poly value = rest * Rational(-1 / c);
  std::map<int, Poly> sub{{v, value}};
  KoszulSpec out = spec;
  out.rows.clear();
  for (int r = 0; r < static_cast<int>(spec.rows.size()); ++r) {
    if (r == row) continue;
    KoszulRow nr = spec.rows[r];
    nr.left = poly::substitute(nr.left, sub);
    nr.right = poly::substitute(nr.right, sub);
    out.rows.push_back(std::move(nr));
  }
  if (record) *record = {row, v, value, c};
  return out;
}

namespace {

// Eliminates the constant entry d0[r][c] (r indexes basis1, c indexes basis0).
void eliminate_d0(MatrixFactorization& m, std::size_t r, std::size_t c) {
  Rational inv = 1 / m.d0[r][c].constant_term();
  Matrix d0 = zero_matrix(m.basis1.size() - 1, m.basis0.size() - 1);
  for (std::size_t i = 0, ni = 0; i < m.basis1.size(); ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, nj = 0; j < m.basis0.size(); ++j) {
      if (j == c) continue;
      Poly e = m.d0[i][j];
      if (!m.d0[i][c].is_zero() && !m.d0[r][j].is_zero()) e -= (m.d0[i][c] * m.d0[r][j]) * inv;
      d0[ni][nj++] = std::move(e);
    }
    ++ni;
  }
  Matrix d1 = zero_matrix(m.basis0.size() - 1, m.basis1.size() - 1);
  for (std::size_t i = 0, ni = 0; i < m.basis0.size(); ++i) {
    if (i == c) continue;
    for (std::size_t j = 0, nj = 0; j < m.basis1.size(); ++j) {
      if (j == r) continue;
      d1[ni][nj++] = m.d1[i][j];
    }
    ++ni;
  }
  m.d0 = std::move(d0);
  m.d1 = std::move(d1);
  m.basis0.erase(m.basis0.begin() + static_cast<long>(c));
  m.basis1.erase(m.basis1.begin() + static_cast<long>(r));
}

bool find_constant(const Matrix& d, std::size_t& r, std::size_t& c) {
  for (r = 0; r < d.size(); ++r)
    for (c = 0; c < d[r].size(); ++c)
      if (!d[r][c].is_zero() && d[r][c].is_constant()) return true;
  return false;
}

}  // namespace

MatrixFactorization split_contractibles(const MatrixFactorization& m) {
  MatrixFactorization out = m;
  for (;;) {
    std::size_t r, c;
    if (find_constant(out.d0, r, c)) {
      eliminate_d0(out, r, c);
    } else if (find_constant(out.d1, r, c)) {
      out = shift(out, 0, 0, 1);
      eliminate_d0(out, r, c);
      out = shift(out, 0, 0, 1);
    } else {
      return out;
    }
  }
}

long GdimSeries::total() const {
  long s = 0;
  for (auto& [k, v] : terms) s += v;
  return s;
}

GdimSeries GdimSeries::truncated(int x) const {
  GdimSeries g;
  g.x_truncation = std::min(x, x_truncation);
  for (auto& [k, v] : terms)
    if (std::get<2>(k) <= g.x_truncation) g.terms[k] = v;
  return g;
}

GdimSeries GdimSeries::shifted(int eps, int da, int dx) const {
  GdimSeries g;
  g.x_truncation = x_truncation + dx;
  for (auto& [k, v] : terms) {
    auto [e, a, x] = k;
    g.terms[{(e + eps) % 2, a + da, x + dx}] = v;
  }
  return g;
}

std::string GdimSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : terms) {
    auto [e, a, x] = k;
    if (!first) os << " + ";
    first = false;
    os << v;
    if (e) os << "*t";
    if (a) os << "*alpha^" << a;
    if (x) os << "*xi^" << x;
  }
  if (first) os << "0";
  os << "  (x <= " << x_truncation << ")";
  return os.str();
}

GdimSeries GdimSeries::monomial(int eps, int a, int x, long c, int x_truncation) {
  GdimSeries g;
  g.x_truncation = x_truncation;
  if (c) g.terms[{eps % 2, a, x}] = c;
  return g;
}

GdimSeries operator+(const GdimSeries& l, const GdimSeries& r) {
  GdimSeries g;
  g.x_truncation = std::min(l.x_truncation, r.x_truncation);
  for (const auto* s : {&l, &r})
    for (auto& [k, v] : s->terms)
      if (std::get<2>(k) <= g.x_truncation) g.terms[k] += v;
  std::erase_if(g.terms, [](const auto& kv) { return kv.second == 0; });
  return g;
}

GdimSeries operator*(const GdimSeries& l, const GdimSeries& r) {
  GdimSeries g;
  g.x_truncation = std::min(l.x_truncation, r.x_truncation);
  for (auto& [kl, vl] : l.terms)
    for (auto& [kr, vr] : r.terms) {
      auto [e1, a1, x1] = kl;
      auto [e2, a2, x2] = kr;
      g.terms[{(e1 + e2) % 2, a1 + a2, x1 + x2}] += vl * vr;
    }
  std::erase_if(g.terms, [](const auto& kv) { return kv.second == 0; });
  return g;
}

bool operator==(const GdimSeries& l, const GdimSeries& r) {
  int t = std::min(l.x_truncation, r.x_truncation);
  return l.truncated(t).terms == r.truncated(t).terms;
}

namespace {

// All monomials in `vars` (with x-weights) of exact x-degree `deg`.
void enumerate_monomials(const std::vector<int>& vars, const std::vector<int>& weights, std::size_t k, int deg,
                         poly::Monomial& cur, std::vector<poly::Monomial>& out) {
  if (k == vars.size()) {
    if (deg == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * weights[k] <= deg; ++e) {
    cur.e[vars[k]] = static_cast<std::uint8_t>(e);
    cur.deg = static_cast<std::uint16_t>(cur.deg + e);
    enumerate_monomials(vars, weights, k + 1, deg - e * weights[k], cur, out);
    cur.deg = static_cast<std::uint16_t>(cur.deg - e);
  }
  cur.e[vars[k]] = 0;
}

Poly kill(const Poly& p, const std::vector<bool>& killed) {
  std::vector<poly::Term> out;
  for (const auto& t : p.terms()) {
    bool dead = false;
    for (int v = 0; v < poly::kMaxVars && !dead; ++v) dead = t.m.e[v] && killed[v];
    if (!dead) out.push_back(t);
  }
  return Poly::from_terms(std::move(out));
}

}  // namespace

GdimSeries gdim(const MatrixFactorization& m, int x_truncation) {
  const VariableTable& t = *m.table;
  std::vector<bool> killed(poly::kMaxVars, false), present(poly::kMaxVars, false);
  killed[VariableTable::kA] = true;
  for (int v = 0; v < t.size(); ++v)
    if (t[v].boundary) killed[v] = true;
  if (!kill(m.potential, killed).is_zero()) throw DomainError("potential does not lie in the maximal homogeneous ideal");

  Matrix d[2] = {m.d0, m.d1};
  for (auto& mat : d)
    for (auto& row : mat)
      for (auto& e : row) {
        for (const auto& term : e.terms())
          for (int v = 0; v < poly::kMaxVars; ++v)
            if (term.m.e[v]) present[v] = true;
        e = kill(e, killed);
      }
  std::vector<int> vars, weights;
  for (int v = 0; v < t.size(); ++v)
    if (present[v] && !killed[v]) {
      if (t[v].deg.a != 0 || t[v].deg.x <= 0) throw DomainError("unsupported surviving variable in gdim");
      vars.push_back(v);
      weights.push_back(t[v].deg.x);
    }
  const std::vector<Bideg>* basis[2] = {&m.basis0, &m.basis1};

  struct Slice {
    std::vector<std::pair<std::size_t, poly::Monomial>> elems;
    std::unordered_map<poly::Monomial, std::vector<std::pair<std::size_t, std::size_t>>, poly::MonomialHash> lookup;
  };
  std::map<std::tuple<int, int, int>, Slice> cache;
  auto slice = [&](int eps, int a, int x) -> const Slice& {
    auto key = std::make_tuple(eps, a, x);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Slice s;
    for (std::size_t g = 0; g < basis[eps]->size(); ++g) {
      const Bideg& gd = (*basis[eps])[g];
      if (gd.a != a || gd.x > x) continue;
      std::vector<poly::Monomial> mons;
      poly::Monomial cur;
      enumerate_monomials(vars, weights, 0, x - gd.x, cur, mons);
      for (auto& mo : mons) {
        s.lookup[mo].emplace_back(g, s.elems.size());
        s.elems.emplace_back(g, mo);
      }
    }
    return cache.emplace(key, std::move(s)).first->second;
  };
  auto rank_between = [&](int eps, int a, int x) -> std::size_t {
    const Slice& src = slice(eps, a, x);
    const Slice& dst = slice(1 - eps, a + 1, x + m.N + 1);
    if (src.elems.empty() || dst.elems.empty()) return 0;
    QMatrix q(dst.elems.size(), std::vector<Rational>(src.elems.size()));
    const Matrix& dm = d[eps];
    for (std::size_t c = 0; c < src.elems.size(); ++c) {
      auto [g, mono] = src.elems[c];
      for (std::size_t h = 0; h < dm.size(); ++h) {
        for (const auto& term : dm[h][g].terms()) {
          poly::Monomial prod = mono * term.m;
          auto it = dst.lookup.find(prod);
          if (it == dst.lookup.end()) throw DomainError("inhomogeneous differential in gdim");
          for (auto [hg, idx] : it->second)
            if (hg == h) q[idx][c] += term.c;
        }
      }
    }
    return rank_q(std::move(q));
  };

  GdimSeries out;
  out.x_truncation = x_truncation;
  std::set<std::tuple<int, int, int>> keys;
  for (int eps = 0; eps < 2; ++eps)
    for (const auto& gd : *basis[eps])
      for (int x = gd.x; x <= x_truncation; x += 2) keys.insert({eps, gd.a, x});
  for (auto [eps, a, x] : keys) {
    std::size_t dim = slice(eps, a, x).elems.size();
    if (!dim) continue;
    long h = static_cast<long>(dim) - static_cast<long>(rank_between(eps, a, x)) -
             static_cast<long>(rank_between(1 - eps, a - 1, x - m.N - 1));
    if (h) out.terms[{eps, a, x}] = h;
  }
  return out;
}

}  // namespace krlab::mf
