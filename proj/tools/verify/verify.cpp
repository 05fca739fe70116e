#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "krlab/braid.hpp"
#include "krlab/complex.hpp"
#include "krlab/error.hpp"
#include "krlab/moy.hpp"
#include "krlab/qamod.hpp"
#include "krlab/skein.hpp"

namespace krlab::verify {

namespace {

using braid::BraidWord;
using qamod::GradedQaModule;
using qamod::QaSlice;
using ratfun::Fraction;
using ratfun::Laurent;
using ratfun::RatFun;
using ratfun::SkeinValue;
using Rational = mpq_class;

GradedQaModule homology(const std::string& word, int strands, int N, int window) {
  auto c = complex::build_complex(braid::parse(word, strands), N);
  return qamod::two_stage_homology(c, {window, true});
}

std::string describe(const BraidWord& w) { return "\"" + w.to_string() + "\" on " + std::to_string(w.strands) + " strands"; }

// Every braid word with at most `letters` letters on exactly `strands` strands.
std::vector<BraidWord> all_words(int strands, int letters) {
  std::vector<BraidWord> out{{strands, {}}};
  std::vector<int> alphabet;
  for (int i = 1; i < strands; ++i) alphabet.insert(alphabet.end(), {i, -i});
  for (std::size_t start = 0, len = 0; len < static_cast<std::size_t>(letters); ++len) {
    std::size_t end = out.size();
    for (std::size_t k = start; k < end; ++k)
      for (int l : alphabet) {
        BraidWord w = out[k];
        w.letters.push_back(l);
        out.push_back(std::move(w));
      }
    start = end;
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// 1, 2: closed forms for the unknot and its negative stabilization

GradedQaModule unknot_table(int N, int lo, int hi) {
  GradedQaModule m;
  m.x_min = lo;
  m.x_max = hi;
  for (int l = 0; l < N; ++l) m.slices[{1, 0, -N + 1 + 2 * l}].free.push_back(-1);
  for (int x = N + 1; x <= hi; x += 2) m.slices[{1, 0, x}].torsion.emplace_back(1, -1);
  std::erase_if(m.slices, [&](const auto& kv) { return std::get<2>(kv.first) < lo || std::get<2>(kv.first) > hi; });
  return m;
}

GradedQaModule negative_unknot_table(int N, int lo, int hi) {
  GradedQaModule m;
  m.x_min = lo;
  m.x_max = hi;
  for (int l = 0; l < N; ++l) m.slices[{1, 0, -N + 1 + 2 * l}].free.push_back(-1);
  for (int x = 0; x <= hi; x += 2) m.slices[{0, 1, x}].torsion.emplace_back(1, -2);
  std::erase_if(m.slices, [&](const auto& kv) { return std::get<2>(kv.first) < lo || std::get<2>(kv.first) > hi; });
  return m;
}

std::string first_difference(const GradedQaModule& got, const GradedQaModule& want) {
  std::set<std::tuple<int, int, int>> keys;
  for (const auto& [k, s] : got.slices) keys.insert(k);
  for (const auto& [k, s] : want.slices) keys.insert(k);
  for (const auto& k : keys) {
    auto a = got.slices.count(k) ? got.slices.at(k) : QaSlice{};
    auto b = want.slices.count(k) ? want.slices.at(k) : QaSlice{};
    if (a == b) continue;
    std::ostringstream os;
    auto [e, i, x] = k;
    os << "slice (" << e << "," << i << "," << x << "): got " << a.free.size() << " free/" << a.torsion.size()
       << " torsion, expected " << b.free.size() << " free/" << b.torsion.size() << " torsion";
    return os.str();
  }
  return "windows differ";
}

bool check_closed_form(const std::string& word, int strands, int N, bool negative, std::string& detail,
                       std::ostream* log) {
  const int W = 20;
  auto m = homology(word, strands, N, W);
  // compare on the whole reported window, which must reach down to the lowest summand
  const int lo = m.x_min, hi = m.x_max;
  if (lo > -N + 1 || hi - lo < W) {
    detail = "window [" + std::to_string(m.x_min) + ", " + std::to_string(m.x_max) + "] misses the required range";
    return false;
  }
  auto got = m.window(lo, hi);
  auto want = negative ? negative_unknot_table(N, lo, hi) : unknot_table(N, lo, hi);
  if (log) *log << "  N=" << N << " " << got.slices.size() << " nonzero slices\n";
  if (got.slices != want.slices) {
    detail = "N=" + std::to_string(N) + ": " + first_difference(got, want);
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------------------------
// 3: invariance

bool same_on_overlap(const GradedQaModule& a, const GradedQaModule& b, std::string& why) {
  int lo = std::max(a.x_min, b.x_min), hi = std::min(a.x_max, b.x_max);
  if (hi - lo < 12) {
    why = "windows overlap on fewer than 12 degrees";
    return false;
  }
  auto wa = a.window(lo, hi), wb = b.window(lo, hi);
  if (wa.slices == wb.slices) return true;
  why = first_difference(wa, wb);
  return false;
}

// ---------------------------------------------------------------------------------------------
// 4, 5: graded dimensions of MOY graphs

constexpr int kTrunc = 24;
mf::GdimSeries one_plus(int x) {
  return mf::GdimSeries::monomial(0, 0, 0, 1, kTrunc) + mf::GdimSeries::monomial(1, -1, x, 1, kTrunc);
}
mf::GdimSeries xi_power(int x) { return mf::GdimSeries::monomial(0, 0, x, 1, kTrunc); }
mf::GdimSeries gdim_of(const std::string& name, int N) {
  auto f = moy::graph_factorization(moy::builtin_graph(name), N);
  f.mf.check();
  return mf::gdim(f.mf, kTrunc);
}

// ---------------------------------------------------------------------------------------------
// 7: the unlink formula exactly as stated, as a general quotient

Laurent mono(int a, int x, const Rational& c = 1) { return Laurent::monomial(c, a, x); }

Fraction literal_unlink(int m, int N, int t) {
  Fraction one{Laurent(1), Laurent(1)};
  Fraction qn{mono(0, -N) - mono(0, N), mono(0, -1) - mono(0, 1)};
  Fraction r{mono(1, -1, t) + mono(0, -N), mono(0, -N) - mono(0, N)};
  Fraction rm = one;
  for (int k = 0; k < m; ++k) rm = rm * r;
  Fraction pre{mono(-1, 0, t), Laurent(1)};
  Fraction prem = one;
  for (int k = 0; k < m; ++k) prem = prem * pre * qn;
  Fraction geo{Laurent(1), Laurent(1) - mono(2, 0)};
  Fraction tail = (rm - one) / Fraction{mono(1, -N - 1, t) + Laurent(1), Laurent(1)};
  return prem * (geo + tail);
}

// P(U^m) = tau alpha^-1 ([N] P(U^{m-1}) + xi^N / (xi^-1 - xi) ((1 + tau alpha^-1 xi^{1-N}) / (1 - xi^2))^{m-1})
Fraction unlink_recursion_rhs(const Fraction& prev, int m, int N, int t) {
  Fraction qn{mono(0, -N) - mono(0, N), mono(0, -1) - mono(0, 1)};
  Fraction base{Laurent(1) + mono(-1, 1 - N, t), Laurent(1) - mono(0, 2)};
  Fraction pw{Laurent(1), Laurent(1)};
  for (int k = 0; k < m - 1; ++k) pw = pw * base;
  Fraction lead{mono(-1, 0, t), Laurent(1)};
  return lead * (qn * prev + Fraction{mono(0, N), mono(0, -1) - mono(0, 1)} * pw);
}

// ---------------------------------------------------------------------------------------------
// 9: the homology Euler characteristic with a window that grows until the tail is confirmed

qamod::EulerResult homology_euler(const BraidWord& w, int N, int* used_window) {
  auto c = complex::build_complex(w, N);
  qamod::EulerResult r;
  for (int W = 16; W <= 28; W += 4) {
    auto m = qamod::two_stage_homology(c, {W, false});
    r = qamod::euler_characteristic(m);
    if (used_window) *used_window = W;
    if (r.tail_verified) break;
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// 10: dimensions at a = 1 straight from the cube complex, by linear algebra over Q

using QMat = std::vector<std::vector<Rational>>;  // rows x cols

// Row-reduces in place and returns the rank.
std::size_t row_reduce(QMat& m, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || sgn(m[k][c]) == 0) continue;
      Rational f = m[k][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[k][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Null space of a (rows x cols) matrix, as column vectors.
std::vector<std::vector<Rational>> null_space(QMat m, std::size_t cols) {
  std::size_t rank = row_reduce(m, cols);
  std::vector<std::size_t> pivot_col;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t r = 0; r < rank; ++r) {
    std::size_t c = 0;
    while (sgn(m[r][c]) == 0) ++c;
    pivot_col.push_back(c);
    is_pivot[c] = true;
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][f] / m[r][pivot_col[r]];
    out.push_back(std::move(v));
  }
  return out;
}

class AOneOracle {
 public:
  explicit AOneOracle(const complex::ChainComplexOfMF& c) : c_(c) {
    for (int v : c.ring_vars) dx_.push_back((*c.table)[v].deg.x);
  }

  // dim H(H(C|_{a=1}, d_mf), d_chi) at (eps, i, x)
  long dim(int eps, int i, int x) {
    auto e1 = [&](int t) -> long {
      if (!c_.terms.count(t)) return 0;
      return static_cast<long>(kernel(t, eps, x).size()) - static_cast<long>(image_rank(t, eps, x));
    };
    return e1(i) - induced_rank(i, eps, x) - induced_rank(i - 1, eps, x);
  }

 private:
  using Exps = std::vector<int>;
  struct Basis {
    std::vector<std::pair<int, Exps>> elems;  // (generator, ring exponents)
    std::map<std::pair<int, Exps>, std::size_t> index;
  };

  const Basis& basis(int t, int eps, int x) {
    auto key = std::make_tuple(t, eps, x);
    if (auto it = bases_.find(key); it != bases_.end()) return it->second;
    Basis b;
    const auto& m = c_.terms.at(t);
    const auto& gens = eps ? m.basis1 : m.basis0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      int rest = x - gens[g].x;
      if (rest < 0) continue;
      Exps e(dx_.size(), 0);
      std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
        if (v == dx_.size()) {
          if (left == 0) {
            b.index[{static_cast<int>(g), e}] = b.elems.size();
            b.elems.emplace_back(static_cast<int>(g), e);
          }
          return;
        }
        for (int k = 0; k * dx_[v] <= left; ++k) {
          e[v] = k;
          rec(v + 1, left - k * dx_[v]);
        }
        e[v] = 0;
      };
      rec(0, rest);
    }
    return bases_.emplace(key, std::move(b)).first->second;
  }

  // Matrix of d_mf (chi = false) or d_chi at a = 1 from slice (t, eps, x); rows = target basis.
  QMat map(int t, int eps, int x, bool chi) {
    const Basis& src = basis(t, eps, x);
    int tt = chi ? t + 1 : t, te = chi ? eps : 1 - eps, tx = chi ? x : x + c_.N + 1;
    if (!c_.terms.count(tt) || (chi && !c_.d_chi.count(t))) return QMat(0, std::vector<Rational>(src.elems.size()));
    const Basis& dst = basis(tt, te, tx);
    QMat out(dst.elems.size(), std::vector<Rational>(src.elems.size()));
    const auto& mf = c_.terms.at(t);
    const auto& d = chi ? (eps ? c_.d_chi.at(t).f1 : c_.d_chi.at(t).f0) : (eps ? mf.d1 : mf.d0);
    for (std::size_t col = 0; col < src.elems.size(); ++col) {
      const auto& [g, e] = src.elems[col];
      for (std::size_t r = 0; r < d.size(); ++r)
        for (const auto& term : d[r][g].terms()) {
          Exps f = e;
          for (int v = 1; v < c_.table->size(); ++v) {
            if (!term.m[v]) continue;
            auto it = std::find(c_.ring_vars.begin(), c_.ring_vars.end(), v);
            if (it == c_.ring_vars.end()) throw DomainError("entry outside the base ring");
            f[static_cast<std::size_t>(it - c_.ring_vars.begin())] += term.m[v];
          }
          auto hit = dst.index.find({static_cast<int>(r), f});
          if (hit == dst.index.end()) throw DomainError("target outside the enumerated slice");
          out[hit->second][col] += term.c;
        }
    }
    return out;
  }

  std::vector<std::vector<Rational>> kernel(int t, int eps, int x) {
    std::size_t n = basis(t, eps, x).elems.size();
    return null_space(map(t, eps, x, false), n);
  }
  std::size_t image_rank(int t, int eps, int x) {
    QMat m = map(t, 1 - eps, x - c_.N - 1, false);
    return row_reduce(m, m.empty() ? 0 : m[0].size());
  }
  // Image of d_mf into (t, eps, x) as row vectors.
  QMat image_rows(int t, int eps, int x) {
    QMat m = map(t, 1 - eps, x - c_.N - 1, false);
    std::size_t cols = m.empty() ? 0 : m[0].size();
    QMat rows(cols, std::vector<Rational>(m.size()));
    for (std::size_t r = 0; r < m.size(); ++r)
      for (std::size_t c = 0; c < cols; ++c) rows[c][r] = m[r][c];
    return rows;
  }

  // rank of the map induced by d_chi from E1 at term t to E1 at term t + 1
  long induced_rank(int t, int eps, int x) {
    if (!c_.terms.count(t) || !c_.terms.count(t + 1)) return 0;
    auto K = kernel(t, eps, x);
    QMat chi = map(t, eps, x, true);
    QMat rows = image_rows(t + 1, eps, x);
    std::size_t dim = basis(t + 1, eps, x).elems.size();
    QMat base = rows;
    std::size_t r0 = row_reduce(base, dim);
    for (const auto& k : K) {
      std::vector<Rational> v(dim);
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < k.size(); ++c)
          if (sgn(k[c]) != 0) v[r] += chi[r][c] * k[c];
      rows.push_back(std::move(v));
    }
    return static_cast<long>(row_reduce(rows, dim)) - static_cast<long>(r0);
  }

  const complex::ChainComplexOfMF& c_;
  std::vector<int> dx_;
  std::map<std::tuple<int, int, int>, Basis> bases_;
};

// ---------------------------------------------------------------------------------------------
// 11: randomized algebraic properties

struct PropertyRun {
  long instances = 0, failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (!failures++) first = what;
  }
};

class RandomAlgebra {
 public:
  RandomAlgebra(std::mt19937& rng, int N) : rng_(rng), N_(N) {
    x_ = t_->add_mark("x", true);
    y_ = t_->add_mark("y", true);
    z_ = t_->add_mark("z", true);
  }

  // A random homogeneous polynomial in x, y, z of x-degree 2d (a-degree 0).
  poly::Poly marks(int d) {
    poly::Poly p;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; i + j <= d; ++j) {
        int c = coeff();
        if (c) p += c * poly::Poly::var(x_, i) * poly::Poly::var(y_, j) * poly::Poly::var(z_, d - i - j);
      }
    return p;
  }

  mf::KoszulSpec spec(int rows) {
    mf::KoszulSpec s;
    s.table = t_;
    s.N = N_;
    for (int k = 0; k < rows; ++k) {
      int r = std::uniform_int_distribution<int>(1, N_)(rng_);
      poly::Poly right = marks(r), left = poly::Poly::var(0) * marks(N_ + 1 - r);
      if (right.is_zero() && left.is_zero()) right = poly::Poly::var(x_, r);
      s.rows.push_back(mf::make_row(*t_, N_, left, right));
    }
    return s;
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::shared_ptr<poly::VariableTable> table() { return t_; }
  int x() const { return x_; }
  int y() const { return y_; }

 private:
  int coeff() { return std::uniform_int_distribution<int>(-2, 2)(rng_); }

  std::mt19937& rng_;
  int N_;
  std::shared_ptr<poly::VariableTable> t_ = std::make_shared<poly::VariableTable>();
  int x_, y_, z_;
};

void mf_properties(std::mt19937& rng, PropertyRun& run) {
  for (int trial = 0; trial < 240; ++trial) {
    int N = 1 + trial % 3;
    RandomAlgebra ra(rng, N);
    auto s = ra.spec(1 + ra.pick(3));
    std::string tag = "mf trial " + std::to_string(trial);
    try {
      auto m = mf::koszul(s);
      m.check();
      auto g = mf::gdim(m, kTrunc);
      ++run.instances;
      mf::shift(m, 2, 4, 1).check();
      if (s.rows.size() >= 2) {
        int i = ra.pick(static_cast<int>(s.rows.size())), j = (i + 1) % static_cast<int>(s.rows.size());
        // row operation: c has degree deg(left_i) - deg(left_j)
        int dc = s.rows[i].left_deg.x - s.rows[j].left_deg.x;
        if (dc >= 0 && dc % 2 == 0) {
          auto r = mf::koszul(mf::row_operation(s, i, j, ra.marks(dc / 2)));
          r.check();
          if (!(mf::gdim(r, kTrunc) == g)) run.fail(tag + ": gdim changed under a row operation");
          ++run.instances;
        }
        // twist: k has degree deg(left_i) + deg(left_j) - deg(potential)
        int dk = s.rows[i].left_deg.x + s.rows[j].left_deg.x - (2 * N + 2);
        if (dk >= 0 && dk % 2 == 0) {
          auto tw = mf::koszul(mf::twist(s, i, j, poly::Poly::var(0) * ra.marks(dk / 2)));
          tw.check();
          if (!(mf::gdim(tw, kTrunc) == g)) run.fail(tag + ": gdim changed under a twist");
          ++run.instances;
        }
      }
      auto other = mf::koszul(ra.spec(1));
      mf::tensor(m, other).check();
      mf::direct_sum(m, mf::shift(m, 2, 2, 1)).check();
      auto split = mf::split_contractibles(m);
      split.check();
      if (!(mf::gdim(split, kTrunc) == g)) run.fail(tag + ": gdim changed when splitting contractibles");
      ++run.instances;
      // exclusion of y through a row whose right entry is x - y
      mf::KoszulSpec ex = s;
      ex.rows.push_back(mf::make_row(*ra.table(), N, poly::Poly(), poly::Poly::var(ra.x()) - poly::Poly::var(ra.y())));
      auto e = mf::exclude_variable(ex, static_cast<int>(ex.rows.size()) - 1, ra.y());
      mf::koszul(e).check();
      ++run.instances;
    } catch (const Error& err) {
      run.fail(tag + ": " + err.what());
    }
  }
}

void complex_properties(std::mt19937& rng, PropertyRun& run) {
  std::vector<BraidWord> words;
  for (int m = 1; m <= 3; ++m)
    for (auto& w : all_words(m, m == 3 ? 2 : 3)) words.push_back(w);
  std::shuffle(words.begin(), words.end(), rng);
  for (int N = 1; N <= 2; ++N)
    for (const auto& w : words) {
      try {
        auto c = complex::build_complex(w, N);
        c.check();
        auto e = complex::gaussian_eliminate(c);
        e.check();
        // homology is unchanged by the elimination
        auto h0 = qamod::two_stage_homology(c, {8, true});
        auto h1 = qamod::two_stage_homology(e, {8, true});
        if (h0.slices != h1.slices) run.fail(describe(w) + ": elimination changed the homology");
        run.instances += 2;
      } catch (const Error& err) {
        run.fail(describe(w) + ": " + err.what());
      }
    }
}

void smith_properties(std::mt19937& rng, PropertyRun& run) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t R = static_cast<std::size_t>(uni(1, 6)), C = static_cast<std::size_t>(uni(1, 6));
    std::vector<int> src(C), dst(R);
    for (auto& d : src) d = 2 * uni(-3, 3);
    for (auto& d : dst) d = 2 * uni(-3, 3);
    auto m = qamod::SliceMatrix::zero(src, dst, 0);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t c = 0; c < C; ++c)
        if (m.exponent(r, c) >= 0 && uni(0, 2)) m.q[r][c] = Rational(uni(-4, 4)) / uni(1, 3);
    std::string tag = "smith trial " + std::to_string(trial);
    try {
      auto f = qamod::smith(m);
      auto lmr = qamod::multiply(qamod::multiply(f.left, m), f.right);
      if (lmr.q != f.diagonal.q) run.fail(tag + ": left * M * right differs from the diagonal form");
      auto back = qamod::multiply(qamod::multiply(f.left_inv, f.diagonal), f.right_inv);
      if (back.q != m.q) run.fail(tag + ": inverse transforms do not reconstruct M");
      for (std::size_t k = 1; k < f.exponents.size(); ++k)
        if (f.exponents[k - 1] > f.exponents[k]) run.fail(tag + ": divisibility chain broken");
      std::set<std::size_t> rows, cols;
      for (auto [r, c] : f.pivots) rows.insert(r), cols.insert(c);
      if (rows.size() != f.pivots.size() || cols.size() != f.pivots.size()) run.fail(tag + ": repeated pivot line");
      for (std::size_t r = 0; r < R; ++r)
        for (std::size_t c = 0; c < C; ++c)
          if (sgn(f.diagonal.q[r][c]) != 0 && !std::count(f.pivots.begin(), f.pivots.end(), std::make_pair(r, c)))
            run.fail(tag + ": off-pivot entry survives");
      f.left.validate();
      f.right.validate();
      ++run.instances;
    } catch (const Error& err) {
      run.fail(tag + ": " + err.what());
    }
  }
}

void moy_properties(PropertyRun& run) {
  for (int N = 1; N <= 2; ++N)
    for (const auto& name : moy::builtin_names()) {
      auto g = moy::builtin_graph(name);
      auto base = mf::gdim(moy::graph_factorization(g, N).mf, kTrunc);
      for (const auto& e : g.edges) {
        auto h = g;
        h.marks.push_back({e.id, "extra"});
        auto f = moy::graph_factorization(h, N);
        f.mf.check();
        if (!(mf::gdim(f.mf, kTrunc) == base)) run.fail(name + ": extra mark on " + e.id + " changed gdim");
        ++run.instances;
      }
    }
}

// ---------------------------------------------------------------------------------------------

std::vector<Criterion> make_criteria() {
  std::vector<Criterion> out;

  out.push_back({1, "unknot homology", 5, [](std::string& d, std::ostream* log) {
                   for (int N = 1; N <= 3; ++N)
                     if (!check_closed_form("", 1, N, false, d, log)) return false;
                   d = "N = 1, 2, 3 match on the window";
                   return true;
                 }});

  out.push_back({2, "negative stabilization", 30, [](std::string& d, std::ostream* log) {
                   for (int N = 1; N <= 2; ++N)
                     if (!check_closed_form("-1", 2, N, true, d, log)) return false;
                   d = "N = 1, 2 match on the window";
                   return true;
                 }});

  out.push_back({3, "invariance", 300, [](std::string& d, std::ostream* log) {
                   const int W = 20;
                   std::vector<std::vector<std::pair<std::string, int>>> groups = {
                       {{"", 1}, {"1", 2}},
                       {{"1 2 1", 3}, {"2 1 2", 3}},
                       {{"1 1 -2", 3}, {"1 -2 1", 3}, {"-2 1 1", 3}},
                   };
                   for (int N = 1; N <= 2; ++N)
                     for (const auto& g : groups) {
                       auto ref = homology(g[0].first, g[0].second, N, W);
                       for (std::size_t k = 1; k < g.size(); ++k) {
                         auto other = homology(g[k].first, g[k].second, N, W);
                         std::string why;
                         if (!same_on_overlap(ref, other, why)) {
                           d = "N=" + std::to_string(N) + " \"" + g[0].first + "\" vs \"" + g[k].first + "\": " + why;
                           return false;
                         }
                         if (log) *log << "  N=" << N << " \"" << g[0].first << "\" = \"" << g[k].first << "\"\n";
                       }
                     }
                   d = "7 pairs agree for N = 1, 2";
                   return true;
                 }});

  out.push_back({4, "MOY graded dimensions", 10, [](std::string& d, std::ostream*) {
                   for (int N = 1; N <= 3; ++N) {
                     auto g0 = gdim_of("r3-gamma0", N), g1 = gdim_of("r3-gamma1", N), g = gdim_of("r3-gamma", N);
                     bool ok = g0 == one_plus(-N + 1) * one_plus(-N + 1) * one_plus(-N + 3) &&
                               g1 == xi_power(-2) * one_plus(-N + 1) * one_plus(-N + 3) * one_plus(-N + 5) &&
                               g == (xi_power(0) + xi_power(-2)) * one_plus(-N + 1) * one_plus(-N + 3) * one_plus(-N + 3) &&
                               g.total() == 16 && g == g0 + g1;
                     if (!ok) {
                       d = "mismatch at N=" + std::to_string(N) + ": gdim = " + g.to_string();
                       return false;
                     }
                   }
                   d = "closed forms, total 16 and additivity for N = 1, 2, 3";
                   return true;
                 }});

  out.push_back({5, "edge splitting", 5, [](std::string& d, std::ostream*) {
                   for (int N = 1; N <= 3; ++N)
                     if (!(gdim_of("theta-split", N) == (xi_power(1) + xi_power(-1)) * gdim_of("theta-merged", N))) {
                       d = "mismatch at N=" + std::to_string(N);
                       return false;
                     }
                   d = "N = 1, 2, 3";
                   return true;
                 }});

  out.push_back({6, "skein residual", 120, [](std::string& d, std::ostream* log) {
                   long checked = 0;
                   for (int N = 1; N <= 2; ++N) {
                     skein::Evaluator ev(N);
                     for (int m = 1; m <= 3; ++m)
                       for (const auto& w : all_words(m, 4))
                         for (int p = 1; p <= static_cast<int>(w.letters.size()); ++p) {
                           if (!skein::skein_residual(w, p, N, &ev).is_zero()) {
                             d = "nonzero residual for " + describe(w) + " at " + std::to_string(p) + ", N=" +
                                 std::to_string(N);
                             return false;
                           }
                           ++checked;
                         }
                     if (log) *log << "  N=" << N << " memo calls " << ev.stats().calls << "\n";
                   }
                   d = std::to_string(checked) + " residuals vanish";
                   return true;
                 }});

  out.push_back({7, "unlink values", 5, [](std::string& d, std::ostream*) {
                   for (int N = 1; N <= 3; ++N) {
                     Fraction prev[2];
                     for (int m = 1; m <= 4; ++m) {
                       auto v = skein::unlink_value(m, N);
                       auto e = skein::evaluate({m, {}}, N);
                       if (!(e == v)) {
                         d = "evaluate differs from unlink_value at m=" + std::to_string(m);
                         return false;
                       }
                       for (int s = 0; s < 2; ++s) {
                         int t = s == 0 ? 1 : -1;
                         const RatFun& f = s == 0 ? v.plus : v.minus;
                         Fraction lit = literal_unlink(m, N, t);
                         if (!(lit == f)) {
                           d = "closed form differs at m=" + std::to_string(m) + ", N=" + std::to_string(N);
                           return false;
                         }
                         if (m >= 2 && !(unlink_recursion_rhs(prev[s], m, N, t) == f)) {
                           d = "recursion fails at m=" + std::to_string(m) + ", N=" + std::to_string(N);
                           return false;
                         }
                         prev[s] = lit;
                       }
                     }
                     // P(U) = tau alpha^-1 ([N] / (1 - alpha^2) + xi^N / (xi^-1 - xi))
                     auto u = skein::unlink_value(1, N);
                     for (int s = 0; s < 2; ++s) {
                       int t = s == 0 ? 1 : -1;
                       Fraction qn{mono(0, -N) - mono(0, N), mono(0, -1) - mono(0, 1)};
                       Fraction want = Fraction{mono(-1, 0, t), Laurent(1)} *
                                       (qn * Fraction{Laurent(1), Laurent(1) - mono(2, 0)} +
                                        Fraction{mono(0, N), mono(0, -1) - mono(0, 1)});
                       if (!(want == (s == 0 ? u.plus : u.minus))) {
                         d = "unknot value differs at N=" + std::to_string(N);
                         return false;
                       }
                     }
                   }
                   d = "m <= 4, N = 1, 2, 3";
                   return true;
                 }});

  out.push_back({8, "flype non-detection", 600, [](std::string& d, std::ostream* log) {
                   auto power = [](int g, int k) { return std::vector<int>(static_cast<std::size_t>(std::abs(k)), k < 0 ? -g : g); };
                   auto cat = [](std::initializer_list<std::vector<int>> parts) {
                     std::vector<int> out;
                     for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
                     return out;
                   };
                   std::vector<std::pair<BraidWord, BraidWord>> pairs;
                   for (auto [p, q, r] : {std::tuple{0, 0, 1}, std::tuple{1, 1, 1}})
                     pairs.push_back({{3, cat({power(1, 2 * p + 1), power(2, 2 * r), power(1, 2 * q), power(2, -1)})},
                                      {3, cat({power(1, 2 * p + 1), power(2, -1), power(1, 2 * q), power(2, 2 * r)})}});
                   pairs.push_back({{4, {1, -2, 1, -2, 3, 3, 3, 2, -3}}, {4, {1, -2, 1, -2, -3, 2, 3, 3, 3}}});
                   for (int N = 1; N <= 2; ++N) {
                     skein::Evaluator ev(N);
                     for (const auto& [a, b] : pairs) {
                       if (!(ev.evaluate(a) == ev.evaluate(b))) {
                         d = "values differ for " + describe(a) + " and " + describe(b) + ", N=" + std::to_string(N);
                         return false;
                       }
                       if (log) *log << "  N=" << N << " " << describe(a) << " = " << describe(b) << "\n";
                     }
                   }
                   d = "3 pairs, N = 1, 2";
                   return true;
                 }});

  out.push_back({9, "cross-pipeline Euler characteristic", 900, [](std::string& d, std::ostream* log) {
                   skein::Evaluator ev(1);
                   long n = 0;
                   for (int m = 1; m <= 3; ++m)
                     for (const auto& w : all_words(m, 3)) {
                       int W = 0;
                       auto h = homology_euler(w, 1, &W);
                       if (!h.tail_verified) {
                         d = "tail of " + describe(w) + " not confirmed up to window " + std::to_string(W) + ": " + h.note;
                         return false;
                       }
                       auto s = ev.evaluate(w);
                       if (!(h.value == s)) {
                         d = "mismatch for " + describe(w) + ": homology " + h.value.to_string() + ", skein " + s.to_string();
                         return false;
                       }
                       if (log) *log << "  " << describe(w) << " window " << W << " ok\n";
                       ++n;
                     }
                   d = std::to_string(n) + " closures agree";
                   return true;
                 }});

  out.push_back({10, "sl(N) specialization", 60, [](std::string& d, std::ostream* log) {
                   struct Case {
                     std::string word;
                     int strands, N, W;
                   };
                   std::vector<Case> cases = {{"", 1, 1, 12}, {"", 1, 2, 12}, {"", 1, 3, 12}, {"-1", 2, 1, 10},
                                              {"-1", 2, 2, 10}, {"1", 2, 1, 10},  {"1 1", 2, 1, 8}};
                   for (const auto& cs : cases) {
                     auto c = complex::build_complex(braid::parse(cs.word, cs.strands), cs.N);
                     auto m = qamod::two_stage_homology(c, {cs.W, true});
                     auto table = qamod::specialize(m, qamod::At::AOne);
                     AOneOracle oracle(c);
                     std::set<std::pair<int, int>> cells;
                     for (const auto& [i, t] : c.terms) cells.insert({0, i}), cells.insert({1, i});
                     long unknot_total = 0;
                     for (auto [eps, i] : cells)
                       for (int x = m.x_min; x <= m.x_max; ++x) {
                         long want = oracle.dim(eps, i, x);
                         auto it = m.slices.find({eps, i, x});
                         long free = it == m.slices.end() ? 0 : static_cast<long>(it->second.free.size());
                         long tab = table.dims.count({eps, i, x}) ? table.dims.at({eps, i, x}) : 0;
                         if (want != free || want != tab) {
                           d = "\"" + cs.word + "\" N=" + std::to_string(cs.N) + " slice (" + std::to_string(eps) + "," +
                               std::to_string(i) + "," + std::to_string(x) + "): a=1 dimension " + std::to_string(want) +
                               ", free rank " + std::to_string(free);
                           return false;
                         }
                         if (cs.word.empty()) {
                           if ((eps != 1 || i != 0) && tab != 0) {
                             d = "unknot has a=1 homology outside (1,0)";
                             return false;
                           }
                           unknot_total += tab;
                         }
                       }
                     if (cs.word.empty() && unknot_total != cs.N) {
                       d = "unknot a=1 dimension " + std::to_string(unknot_total) + " for N=" + std::to_string(cs.N);
                       return false;
                     }
                     if (log) *log << "  \"" << cs.word << "\" N=" << cs.N << " ok\n";
                   }
                   d = "free ranks equal a=1 dimensions on 7 examples";
                   return true;
                 }});

  out.push_back({11, "algebraic property suites", 300, [](std::string& d, std::ostream* log) {
                   std::mt19937 rng(20240611);
                   PropertyRun run;
                   mf_properties(rng, run);
                   smith_properties(rng, run);
                   moy_properties(run);
                   complex_properties(rng, run);
                   if (log) *log << "  " << run.instances << " instances\n";
                   if (run.failures) {
                     d = std::to_string(run.failures) + " failures; first: " + run.first;
                     return false;
                   }
                   if (run.instances < 500) {
                     d = "only " + std::to_string(run.instances) + " instances";
                     return false;
                   }
                   d = std::to_string(run.instances) + " instances, no failures";
                   return true;
                 }});
  return out;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = make_criteria();
  return all;
}

CriterionResult run_criterion(const Criterion& c, std::ostream* log) {
  CriterionResult r{c.id, c.name, false, 0, c.limit_seconds, ""};
  auto t0 = std::chrono::steady_clock::now();
  try {
    r.correct = c.run(r.detail, log);
  } catch (const std::exception& e) {
    r.correct = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string format(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass() ? "PASS" : "FAIL") << " " << std::setw(2) << r.id << "  " << r.name << "  (" << std::fixed
     << std::setprecision(1) << r.seconds << " s, limit " << std::setprecision(0) << r.limit_seconds << " s)";
  if (r.correct && !r.pass()) os << "  over time";
  if (!r.detail.empty()) os << "  " << r.detail;
  return os.str();
}

}  // namespace krlab::verify
