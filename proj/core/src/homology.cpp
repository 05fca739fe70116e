// Two-stage homology: the cube complex is cut into free Q[a]-modules, one per (term, parity,
// generator, monomial in the ring marks). Unit entries of d_mf are then cancelled across the
// whole filtered complex, which changes d_chi by the usual zig-zag correction but leaves
// H(H(C, d_mf), d_chi) unchanged. Each slice then splits along d_mf into small pieces whose
// homology is written as cyclic summands; d_chi between summands is cancelled where it is an
// isomorphism and whatever is left goes through the presented-module computation.

#include <algorithm>
#include <array>
#include <chrono>
#include <climits>
#include <functional>
#include <unordered_map>

#include "krlab/error.hpp"
#include "krlab/qamod.hpp"
#include "small_rational.hpp"

namespace krlab::qamod {

namespace {

using poly::Monomial;
using poly::MonomialHash;

struct Cell {
  int term = 0, eps = 0, a = 0, x = 0;
};

struct Entry {
  int target_slot;
  Rational c;
  Monomial nu;
  int nu_x;
};

struct RawEdge {
  int x, y;
  const Rational* c;
};

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(const detail::SmallRational& v) { return v.is_zero(); }
inline Rational to_rational(const Rational& v) { return v; }
inline Rational to_rational(const detail::SmallRational& v) { return v.to_mpq(); }

using Adjacency = std::vector<std::vector<std::pair<int, Rational>>>;

struct Reduced {
  std::vector<bool> alive;
  Adjacency out0, out1;
  std::size_t eliminated = 0;
};

// Sparse filtered complex with flat adjacency lists (degrees are small, so linear scans win).
template <class T>
class Graph {
 public:
  explicit Graph(std::size_t n) : alive_(n, true), out0_(n), out1_(n), in0_(n), in1_(n) {}

  void add0(int x, int y, const T& v) { add(out0_, in0_, x, y, v); }
  void add1(int x, int y, const T& v) { add(out1_, in1_, x, y, v); }

  // Cancels unit entries of d_mf until none is left; `a` holds the a-degree of every cell.
  std::size_t eliminate_units(const std::vector<int>& a) {
    std::size_t eliminated = 0;
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t b = 0; b < alive_.size(); ++b) {
        if (!alive_[b]) continue;
        int best = -1;
        std::size_t best_cost = SIZE_MAX;
        for (const auto& [y, v] : out0_[b]) {
          if (a[y] != a[b] + 1) continue;
          std::size_t cost = in0_[y].size() + in1_[y].size();
          if (cost < best_cost) {
            best_cost = cost;
            best = y;
          }
        }
        if (best < 0) continue;
        eliminate(static_cast<int>(b), best);
        eliminated += 2;
        progress = true;
      }
    }
    // Cells without any d_mf edge are free summands of H(d_mf); a unit of d_chi between two
    // of them can be cancelled on that page directly.
    auto isolated = [&](int y) { return out0_[y].empty() && in0_[y].empty(); };
    for (std::size_t b = 0; b < alive_.size(); ++b) {
      if (!alive_[b] || !isolated(static_cast<int>(b))) continue;
      int best = -1;
      std::size_t best_cost = SIZE_MAX;
      for (const auto& [y, v] : out1_[b]) {
        if (a[y] != a[b] || !isolated(y)) continue;
        std::size_t cost = in1_[y].size();
        if (cost < best_cost) {
          best_cost = cost;
          best = y;
        }
      }
      if (best < 0) continue;
      eliminate_chi(static_cast<int>(b), best);
      eliminated += 2;
    }
    return eliminated;
  }

  Reduced result(std::size_t eliminated) const {
    Reduced r{alive_, Adjacency(alive_.size()), Adjacency(alive_.size()), eliminated};
    for (std::size_t x = 0; x < alive_.size(); ++x) {
      for (const auto& [y, v] : out0_[x]) r.out0[x].emplace_back(y, to_rational(v));
      for (const auto& [y, v] : out1_[x]) r.out1[x].emplace_back(y, to_rational(v));
    }
    return r;
  }

 private:
  using Row = std::vector<std::pair<int, T>>;

  // b -> c is a unit entry of d_mf; the rest of the differential picks up -d(x)_c u^-1 d(b).
  void eliminate(int b, int c) {
    T u = find(out0_[b], c);
    Row db0, db1;
    for (const auto& [y, v] : out0_[b])
      if (y != c) db0.emplace_back(y, v);
    db1 = out1_[b];
    Row src0, src1;
    for (int x : in0_[c])
      if (x != b) src0.emplace_back(x, find(out0_[x], c) / u);
    for (int x : in1_[c]) src1.emplace_back(x, find(out1_[x], c) / u);
    for (const auto& [x, lam] : src0) {
      for (const auto& [y, v] : db0) add0(x, y, -(lam * v));
      for (const auto& [y, v] : db1) add1(x, y, -(lam * v));
    }
    // the d_chi-then-d_chi part of the zig-zag lands two steps up and is not needed
    for (const auto& [x, lam] : src1)
      for (const auto& [y, v] : db0) add1(x, y, -(lam * v));
    detach(b);
    detach(c);
  }

  // b -> c is a unit entry of d_chi between cells without d_mf edges.
  void eliminate_chi(int b, int c) {
    T u = find(out1_[b], c);
    Row db1, src1;
    for (const auto& [y, v] : out1_[b])
      if (y != c) db1.emplace_back(y, v);
    for (int x : in1_[c])
      if (x != b) src1.emplace_back(x, find(out1_[x], c) / u);
    for (const auto& [x, lam] : src1)
      for (const auto& [y, v] : db1) add1(x, y, -(lam * v));
    detach(b);
    detach(c);
  }

  static T find(const Row& row, int y) {
    for (const auto& [k, v] : row)
      if (k == y) return v;
    throw DomainError("internal: missing matrix entry");
  }

  static void erase_value(std::vector<int>& v, int x) {
    for (auto& e : v)
      if (e == x) {
        e = v.back();
        v.pop_back();
        return;
      }
  }

  static void erase_key(Row& row, int y) {
    for (auto& e : row)
      if (e.first == y) {
        e = std::move(row.back());
        row.pop_back();
        return;
      }
  }

  static void add(std::vector<Row>& out, std::vector<std::vector<int>>& in, int x, int y, const T& v) {
    if (is_zero(v)) return;
    for (auto& e : out[x])
      if (e.first == y) {
        e.second += v;
        if (is_zero(e.second)) {
          e = std::move(out[x].back());
          out[x].pop_back();
          erase_value(in[y], x);
        }
        return;
      }
    out[x].emplace_back(y, v);
    in[y].push_back(x);
  }

  void detach(int b) {
    alive_[b] = false;
    for (const auto& [y, v] : out0_[b]) erase_value(in0_[y], b);
    for (const auto& [y, v] : out1_[b]) erase_value(in1_[y], b);
    for (int x : in0_[b]) erase_key(out0_[x], b);
    for (int x : in1_[b]) erase_key(out1_[x], b);
    out0_[b].clear();
    out1_[b].clear();
    in0_[b].clear();
    in1_[b].clear();
  }

  std::vector<bool> alive_;
  std::vector<Row> out0_, out1_;
  std::vector<std::vector<int>> in0_, in1_;
};

template <class T>
Reduced reduce_with(const std::vector<int>& a, const std::vector<RawEdge>& e0, const std::vector<RawEdge>& e1) {
  Graph<T> g(a.size());
  for (const auto& e : e0) g.add0(e.x, e.y, T(*e.c));
  for (const auto& e : e1) g.add1(e.x, e.y, T(*e.c));
  std::size_t n = g.eliminate_units(a);
  return g.result(n);
}

// Machine-word arithmetic first; exact GMP arithmetic only if something overflows.
Reduced reduce(const std::vector<int>& a, const std::vector<RawEdge>& e0, const std::vector<RawEdge>& e1) {
  try {
    return reduce_with<detail::SmallRational>(a, e0, e1);
  } catch (const detail::SmallRational::Overflow&) {
    return reduce_with<Rational>(a, e0, e1);
  }
}

// Monomials in `vars` (x-degrees `dx`) of x-degree at most `budget`; deg is left unset.
void enumerate_monomials(const std::vector<int>& vars, const std::vector<int>& dx, int budget,
                         const std::function<void(const Monomial&, int)>& emit) {
  Monomial m;
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int used) {
    if (k == vars.size()) {
      emit(m, used);
      return;
    }
    for (int e = 0; used + e * dx[k] <= budget; ++e) {
      m.e[vars[k]] = static_cast<std::uint8_t>(e);
      rec(k + 1, used + e * dx[k]);
    }
    m.e[vars[k]] = 0;
  };
  rec(0, 0);
}

Monomial with_degree(Monomial m) {
  int d = 0;
  for (auto b : m.e) d += b;
  m.deg = static_cast<std::uint16_t>(d);
  return m;
}

}  // namespace

GradedQaModule two_stage_homology(const complex::ChainComplexOfMF& c, const HomologyOptions& opt,
                                  HomologyStats* stats) {
  if (opt.x_window < 0) throw DomainError("x-window must be non-negative");
  GradedQaModule result;
  if (c.terms.empty()) return result;
  if (opt.check_complex) c.check();
  using Clock = std::chrono::steady_clock;
  auto t_start = Clock::now();
  const auto& table = *c.table;
  const int N = c.N;

  int x_min = INT_MAX;
  for (const auto& [i, m] : c.terms) {
    for (const auto& d : m.basis0) x_min = std::min(x_min, d.x);
    for (const auto& d : m.basis1) x_min = std::min(x_min, d.x);
  }
  if (x_min == INT_MAX) {
    result.x_min = result.x_max = 0;
    return result;
  }
  const int x_report = x_min + opt.x_window;
  const int x_top = x_report + N + 1;
  result.x_min = x_min;
  result.x_max = x_report;

  std::vector<int> dx;
  std::vector<bool> is_ring(table.size(), false);
  for (int v : c.ring_vars) {
    int d = table[v].deg.x;
    if (d <= 0 || table[v].deg.a != 0) throw DomainError("ring variable without positive x-degree");
    dx.push_back(d);
    is_ring[v] = true;
  }

  // slot = (term, parity, generator)
  struct Slot {
    int term, eps, gen;
    poly::Bideg deg;
  };
  std::vector<Slot> slots;
  std::map<std::tuple<int, int, int>, int> slot_of;
  for (const auto& [i, m] : c.terms)
    for (int eps = 0; eps < 2; ++eps) {
      const auto& basis = eps ? m.basis1 : m.basis0;
      for (std::size_t g = 0; g < basis.size(); ++g) {
        slot_of[{i, eps, static_cast<int>(g)}] = static_cast<int>(slots.size());
        slots.push_back({i, eps, static_cast<int>(g), basis[g]});
      }
    }

  // a-exponents are implied by the degrees, so only the ring-mark part is kept
  auto split_term = [&](const poly::Term& t) {
    Monomial nu = t.m;
    nu.e[poly::VariableTable::kA] = 0;
    int x = 0;
    for (int v = 1; v < table.size(); ++v) {
      if (!nu.e[v]) continue;
      if (!is_ring[v]) throw DomainError("differential involves a variable outside the base ring");
      x += nu.e[v] * table[v].deg.x;
    }
    return std::pair{with_degree(nu), x};
  };

  std::vector<std::vector<Entry>> d0_entries(slots.size()), d1_entries(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& sl = slots[s];
    const auto& m = c.terms.at(sl.term);
    const auto& d = sl.eps ? m.d1 : m.d0;
    for (std::size_t r = 0; r < d.size(); ++r)
      for (const auto& t : d[r][sl.gen].terms()) {
        auto [nu, x] = split_term(t);
        d0_entries[s].push_back({slot_of.at({sl.term, 1 - sl.eps, static_cast<int>(r)}), t.c, nu, x});
      }
    auto it = c.d_chi.find(sl.term);
    if (it == c.d_chi.end() || !c.terms.count(sl.term + 1)) continue;
    const auto& f = sl.eps ? it->second.f1 : it->second.f0;
    for (std::size_t r = 0; r < f.size(); ++r)
      for (const auto& t : f[r][sl.gen].terms()) {
        auto [nu, x] = split_term(t);
        Rational coeff = sl.eps ? Rational(-t.c) : t.c;
        d1_entries[s].push_back({slot_of.at({sl.term + 1, sl.eps, static_cast<int>(r)}), coeff, nu, x});
      }
  }

  std::vector<Cell> cells;
  std::vector<std::unordered_map<Monomial, int, MonomialHash>> lookup(slots.size());
  std::vector<std::vector<std::pair<int, Monomial>>> members(slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& sl = slots[s];
    if (sl.deg.x > x_top) continue;
    enumerate_monomials(c.ring_vars, dx, x_top - sl.deg.x, [&](const Monomial& mu, int used) {
      Monomial key = with_degree(mu);
      int id = static_cast<int>(cells.size());
      cells.push_back({sl.term, sl.eps, sl.deg.a, sl.deg.x + used});
      lookup[s].emplace(key, id);
      members[s].emplace_back(id, key);
    });
  }
  std::vector<RawEdge> e0, e1;
  for (std::size_t s = 0; s < slots.size(); ++s)
    for (const auto& [id, mu] : members[s]) {
      int used = cells[id].x - slots[s].deg.x;
      for (const auto& e : d0_entries[s])
        if (slots[e.target_slot].deg.x + used + e.nu_x <= x_top)
          e0.push_back({id, lookup[e.target_slot].at(mu * e.nu), &e.c});
      for (const auto& e : d1_entries[s])
        if (slots[e.target_slot].deg.x + used + e.nu_x <= x_top)
          e1.push_back({id, lookup[e.target_slot].at(mu * e.nu), &e.c});
    }
  lookup.clear();
  members.clear();
  const std::size_t total_cells = cells.size();

  auto t_sliced = Clock::now();
  std::vector<int> adeg(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) adeg[k] = cells[k].a;
  const Reduced g = reduce(adeg, e0, e1);
  const std::size_t eliminated = g.eliminated;
  e0.clear();
  e1.clear();

  auto t_eliminated = Clock::now();
  // Surviving cells grouped by (term, parity, x).
  std::map<std::tuple<int, int, int>, std::vector<int>> groups;
  for (std::size_t id = 0; id < cells.size(); ++id)
    if (g.alive[id]) groups[{cells[id].term, cells[id].eps, cells[id].x}].push_back(static_cast<int>(id));
  auto group = [&](int term, int eps, int x) -> const std::vector<int>& {
    static const std::vector<int> none;
    auto it = groups.find({term, eps, x});
    return it == groups.end() ? none : it->second;
  };
  auto degrees = [&](const std::vector<int>& ids) {
    std::vector<int> d;
    for (int id : ids) d.push_back(cells[id].a);
    return d;
  };
  // position of a cell inside whichever list currently holds it
  std::vector<int> pos(cells.size(), -1);
  auto block = [&](const std::vector<int>& src, const std::vector<int>& dst, bool chi) {
    SliceMatrix m = SliceMatrix::zero(degrees(src), degrees(dst), chi ? 0 : 1);
    for (std::size_t k = 0; k < src.size(); ++k)
      for (const auto& [y, v] : (chi ? g.out1 : g.out0)[src[k]]) {
        auto l = static_cast<std::size_t>(pos[y]);
        if (pos[y] >= 0 && l < dst.size() && dst[l] == y) m.q[l][k] = v;
      }
    return m;
  };

  const int i_min = c.terms.begin()->first, i_max = c.terms.rbegin()->first;

  // H(d_mf) of one slice, written as cyclic summands with explicit representatives.
  struct Summand {
    int level = 0, degree = 0;
    int l = 0;  // 0 for a free summand, else Q[a]/(a^l)
    std::vector<std::pair<int, Rational>> rep;
  };
  // A piece of the slice that d_mf does not connect to anything else.
  struct Component {
    Span K;
    SliceMatrix L;             // K coordinates -> summand coordinates
    std::vector<int> summand;  // per summand coordinate: index into the summand list, -1 if killed
  };
  std::vector<int> parent(cells.size(), -1), comp_of(cells.size(), -1);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };

  auto add_summand = [&](QaSlice& s, int degree, int l) {
    if (l == 0)
      s.free.push_back(degree);
    else
      s.torsion.emplace_back(l, degree);
  };

  for (int eps = 0; eps < 2; ++eps)
    for (int k = x_min; k <= x_report; ++k) {
      std::vector<Summand> sm;
      std::vector<Component> comps;
      std::vector<int> touched;
      for (int i = i_min; i <= i_max; ++i) {
        const auto& B = group(i, eps, k);
        if (B.empty()) continue;
        const auto& A = group(i, 1 - eps, k - N - 1);
        const auto& C = group(i, 1 - eps, k + N + 1);
        for (const auto* list : {&B, &A, &C})
          for (int id : *list) parent[id] = id;
        for (const auto* list : {&B, &A})
          for (int id : *list)
            for (const auto& [y, v] : g.out0[id])
              if (parent[y] >= 0) parent[root(id)] = root(y);
        std::map<int, std::array<std::vector<int>, 3>> parts;  // B, A, C cells per root
        for (int id : B) parts[root(id)][0].push_back(id);
        for (int id : A) parts[root(id)][1].push_back(id);
        for (int id : C) parts[root(id)][2].push_back(id);
        for (const auto* list : {&B, &A, &C})
          for (int id : *list) parent[id] = -1;

        for (auto& [r, p] : parts) {
          if (p[0].empty()) continue;
          for (const auto& list : p)
            for (std::size_t n = 0; n < list.size(); ++n) pos[list[n]] = static_cast<int>(n);
          Component comp;
          comp.K = Span(degrees(p[0]), kernel(block(p[0], p[2], false)));
          std::vector<int> kdeg = comp.K.degrees();
          std::vector<GradedVector> rel;
          for (const auto& col : columns(block(p[1], p[0], false))) {
            auto co = comp.K.solve(col);
            if (!co) throw DomainError("internal: image of d_mf is not inside its kernel");
            rel.push_back(std::move(*co));
          }
          std::vector<int> rdeg;
          for (const auto& v : rel) rdeg.push_back(v.degree);
          SliceMatrix R = SliceMatrix::zero(rdeg, kdeg, 0);
          for (std::size_t col = 0; col < rel.size(); ++col)
            for (std::size_t row = 0; row < kdeg.size(); ++row) R.q[row][col] = rel[col].v[row];
          SmithForm f = smith(R, true);
          std::vector<int> ell(kdeg.size(), 0);
          for (std::size_t n = 0; n < f.pivots.size(); ++n) ell[f.pivots[n].first] = f.exponents[n] == 0 ? -1 : f.exponents[n];
          comp.summand.assign(kdeg.size(), -1);
          for (std::size_t row = 0; row < kdeg.size(); ++row) {
            if (ell[row] < 0) continue;
            Summand s{i, kdeg[row], ell[row], {}};
            for (std::size_t t = 0; t < p[0].size(); ++t) {
              Rational v = 0;
              for (std::size_t b = 0; b < kdeg.size(); ++b)
                if (sgn(f.left_inv.q[b][row]) != 0) v += comp.K.basis()[b].v[t] * f.left_inv.q[b][row];
              if (sgn(v) != 0) s.rep.emplace_back(p[0][t], std::move(v));
            }
            comp.summand[row] = static_cast<int>(sm.size());
            sm.push_back(std::move(s));
          }
          comp.L = std::move(f.left);
          for (int id : p[1]) pos[id] = -1;
          for (int id : p[2]) pos[id] = -1;
          for (int id : p[0]) comp_of[id] = static_cast<int>(comps.size()), touched.push_back(id);
          comps.push_back(std::move(comp));
        }
      }
      if (sm.empty()) continue;

      // d_chi between summands
      const std::size_t n = sm.size();
      std::vector<std::vector<std::pair<int, Rational>>> out(n);
      std::vector<std::vector<int>> in(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::map<int, std::vector<Rational>> img;  // by component
        for (const auto& [cell, coeff] : sm[j].rep)
          for (const auto& [y, v] : g.out1[cell]) {
            int ci = comp_of[y];
            if (ci < 0) throw DomainError("internal: d_chi leaves the slice");
            auto& vec = img[ci];
            vec.resize(comps[ci].K.ambient().size());
            vec[pos[y]] += coeff * v;
          }
        for (auto& [ci, vec] : img) {
          const auto& comp = comps[ci];
          auto co = comp.K.solve({sm[j].degree, std::move(vec)});
          if (!co) throw DomainError("internal: d_chi does not preserve ker d_mf");
          for (std::size_t row = 0; row < comp.summand.size(); ++row) {
            int t = comp.summand[row];
            if (t < 0) continue;
            Rational v = 0;
            for (std::size_t b = 0; b < co->v.size(); ++b)
              if (sgn(comp.L.q[row][b]) != 0) v += comp.L.q[row][b] * co->v[b];
            if (sgn(v) == 0) continue;
            int twice = sm[j].degree - sm[t].degree;
            if (twice < 0 || twice % 2) throw DomainError("internal: d_chi is not homogeneous");
            if (sm[t].l > 0 && twice / 2 >= sm[t].l) continue;
            if (sm[t].l == 0 && sm[j].l > 0) throw DomainError("internal: torsion maps onto a free summand");
            out[j].emplace_back(t, std::move(v));
            in[t].push_back(static_cast<int>(j));
          }
        }
      }
      for (int id : touched) pos[id] = comp_of[id] = -1;

      // Cancel isomorphisms between equal summands, then solve what remains piece by piece.
      std::vector<bool> alive(n, true);
      auto entry = [&](int x, int y) -> Rational* {
        for (auto& [z, v] : out[x])
          if (z == y) return &v;
        return nullptr;
      };
      auto drop = [&](int x) {
        for (const auto& [z, v] : out[x]) std::erase(in[z], x);
        for (int w : in[x]) std::erase_if(out[w], [x](const auto& e) { return e.first == x; });
        out[x].clear();
        in[x].clear();
        alive[x] = false;
      };
      for (std::size_t x = 0; x < n; ++x) {
        if (!alive[x]) continue;
        int y = -1;
        std::size_t best = SIZE_MAX;
        for (const auto& [z, v] : out[x])
          if (sm[z].degree == sm[x].degree && sm[z].l == sm[x].l && in[z].size() < best) {
            best = in[z].size();
            y = z;
          }
        if (y < 0) continue;
        const Rational u = *entry(static_cast<int>(x), y);
        const auto row = out[x];
        for (int w : std::vector<int>(in[y])) {
          if (w == static_cast<int>(x)) continue;
          Rational lam = *entry(w, y) / u;
          for (const auto& [z, v] : row) {
            if (z == y) continue;
            if (sm[z].l > 0 && (sm[w].degree - sm[z].degree) / 2 >= sm[z].l) continue;
            if (Rational* e = entry(w, z)) {
              *e -= lam * v;
              if (sgn(*e) == 0) {
                std::erase_if(out[w], [z](const auto& p) { return p.first == z; });
                std::erase(in[z], w);
              }
            } else {
              out[w].emplace_back(z, -lam * v);
              in[z].push_back(w);
            }
          }
        }
        drop(static_cast<int>(x));
        drop(y);
      }

      std::vector<int> up(n);
      for (std::size_t j = 0; j < n; ++j) up[j] = static_cast<int>(j);
      std::function<int(int)> top = [&](int x) { return up[x] == x ? x : up[x] = top(up[x]); };
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [t, v] : out[j]) up[top(static_cast<int>(j))] = top(t);
      std::map<int, std::map<int, std::vector<int>>> pieces;  // root -> level -> summands
      for (std::size_t j = 0; j < n; ++j)
        if (alive[j]) pieces[top(static_cast<int>(j))][sm[j].level].push_back(static_cast<int>(j));

      std::vector<int> local(n, -1);
      for (auto& [r, levels] : pieces) {
        if (levels.size() == 1 && levels.begin()->second.size() == 1) {
          int j = levels.begin()->second.front();
          add_summand(result.slices[{eps, sm[j].level, k}], sm[j].degree, sm[j].l);
          continue;
        }
        for (auto& [i, js] : levels)
          for (std::size_t q = 0; q < js.size(); ++q) local[js[q]] = static_cast<int>(q);
        auto gens = [&](int i) -> const std::vector<int>& {
          static const std::vector<int> none;
          auto it = levels.find(i);
          return it == levels.end() ? none : it->second;
        };
        auto kdeg_of = [&](int i) {
          std::vector<int> d;
          for (int j : gens(i)) d.push_back(sm[j].degree);
          return d;
        };
        auto relations = [&](int i) {
          std::vector<GradedVector> P;
          const auto& js = gens(i);
          for (std::size_t q = 0; q < js.size(); ++q) {
            if (sm[js[q]].l == 0) continue;
            GradedVector e{sm[js[q]].degree + 2 * sm[js[q]].l, std::vector<Rational>(js.size())};
            e.v[q] = 1;
            P.push_back(std::move(e));
          }
          return P;
        };
        auto phi = [&](int i) {
          std::vector<GradedVector> out_i;
          std::size_t next = gens(i + 1).size();
          for (int j : gens(i)) {
            GradedVector v{sm[j].degree, std::vector<Rational>(next)};
            for (const auto& [t, c] : out[j]) v.v[local[t]] = c;
            out_i.push_back(std::move(v));
          }
          return out_i;
        };
        for (const auto& [i, js] : levels) {
          std::vector<int> kdeg = kdeg_of(i);
          std::vector<GradedVector> cycles;
          std::vector<int> ndeg = kdeg_of(i + 1);
          if (ndeg.empty()) {
            for (std::size_t q = 0; q < kdeg.size(); ++q) {
              GradedVector e{kdeg[q], std::vector<Rational>(kdeg.size())};
              e.v[q] = 1;
              cycles.push_back(std::move(e));
            }
          } else {
            // z with phi(z) in the relations of the next level
            auto ph = phi(i);
            auto nP = relations(i + 1);
            std::vector<int> src = kdeg;
            for (const auto& p : nP) src.push_back(p.degree);
            SliceMatrix m = SliceMatrix::zero(src, ndeg, 0);
            for (std::size_t col = 0; col < ph.size(); ++col)
              for (std::size_t row = 0; row < ndeg.size(); ++row) m.q[row][col] = ph[col].v[row];
            for (std::size_t col = 0; col < nP.size(); ++col)
              for (std::size_t row = 0; row < ndeg.size(); ++row) m.q[row][kdeg.size() + col] = -nP[col].v[row];
            for (auto& kv : kernel(m)) {
              kv.v.resize(kdeg.size());
              cycles.push_back(std::move(kv));
            }
          }
          Span Z(kdeg, cycles);
          if (Z.rank() == 0) continue;
          std::vector<GradedVector> bounds = relations(i);
          if (levels.count(i - 1))
            for (auto& v : phi(i - 1)) bounds.push_back(std::move(v));
          std::vector<int> bdeg;
          for (const auto& b : bounds) bdeg.push_back(b.degree);
          SliceMatrix rel = SliceMatrix::zero(bdeg, Z.degrees(), 0);
          for (std::size_t col = 0; col < bounds.size(); ++col) {
            auto co = Z.solve(bounds[col]);
            if (!co) throw DomainError("internal: boundary is not a cycle");
            for (std::size_t row = 0; row < Z.rank(); ++row) rel.q[row][col] = co->v[row];
          }
          QaSlice s = cokernel(rel);
          if (s.empty()) continue;
          auto& slot = result.slices[{eps, i, k}];
          slot.free.insert(slot.free.end(), s.free.begin(), s.free.end());
          slot.torsion.insert(slot.torsion.end(), s.torsion.begin(), s.torsion.end());
        }
      }
    }
  for (auto& [key, s] : result.slices) {
    std::sort(s.free.begin(), s.free.end());
    std::sort(s.torsion.begin(), s.torsion.end());
  }

  if (stats) {
    stats->cells = total_cells;
    stats->eliminated = eliminated;
    stats->x_internal = x_top;
    auto secs = [](auto d) { return std::chrono::duration<double>(d).count(); };
    stats->seconds_slicing = secs(t_sliced - t_start);
    stats->seconds_elimination = secs(t_eliminated - t_sliced);
    stats->seconds_slices = secs(Clock::now() - t_eliminated);
  }
  return result;
}

}  // namespace krlab::qamod
