#include "krlab/qamod.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

#include "krlab/error.hpp"

namespace krlab::qamod {

SliceMatrix SliceMatrix::zero(std::vector<int> source, std::vector<int> target, int degree) {
  SliceMatrix m;
  m.q.assign(target.size(), std::vector<Rational>(source.size()));
  m.source = std::move(source);
  m.target = std::move(target);
  m.degree = degree;
  return m;
}

void SliceMatrix::validate() const {
  if (q.size() != target.size()) throw DomainError("slice matrix row count mismatch");
  for (std::size_t r = 0; r < q.size(); ++r) {
    if (q[r].size() != source.size()) throw DomainError("slice matrix column count mismatch");
    for (std::size_t c = 0; c < source.size(); ++c) {
      if (sgn(q[r][c]) == 0) continue;
      int twice = source[c] + degree - target[r];
      if (twice < 0 || twice % 2 != 0) throw DomainError("entry is not a monomial c*a^j with j >= 0");
    }
  }
}

std::string SliceMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < q.size(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < source.size(); ++c) {
      if (c) os << ", ";
      if (sgn(q[r][c]) == 0) {
        os << "0";
        continue;
      }
      os << q[r][c].get_str();
      if (int e = exponent(r, c); e > 0) os << "*a" << (e > 1 ? "^" + std::to_string(e) : "");
    }
    os << "]\n";
  }
  return os.str();
}

SliceMatrix multiply(const SliceMatrix& l, const SliceMatrix& r) {
  if (l.source != r.target) throw DomainError("slice matrix product with mismatched degrees");
  SliceMatrix out = SliceMatrix::zero(r.source, l.target, l.degree + r.degree);
  for (std::size_t i = 0; i < l.target.size(); ++i)
    for (std::size_t k = 0; k < l.source.size(); ++k) {
      if (sgn(l.q[i][k]) == 0) continue;
      for (std::size_t j = 0; j < r.source.size(); ++j)
        if (sgn(r.q[k][j]) != 0) out.q[i][j] += l.q[i][k] * r.q[k][j];
    }
  return out;
}

namespace {

SliceMatrix identity(const std::vector<int>& degrees) {
  SliceMatrix m = SliceMatrix::zero(degrees, degrees, 0);
  for (std::size_t i = 0; i < degrees.size(); ++i) m.q[i][i] = 1;
  return m;
}

}  // namespace

SmithForm smith(const SliceMatrix& m, bool record_transforms) {
  m.validate();
  SmithForm f;
  if (record_transforms) {
    f.left = f.left_inv = identity(m.target);
    f.right = f.right_inv = identity(m.source);
  }
  SliceMatrix w = m;
  std::size_t R = m.target.size(), C = m.source.size();
  std::vector<bool> row_used(R), col_used(C);
  for (;;) {
    int best = INT_MAX;
    std::size_t pr = 0, pc = 0;
    for (std::size_t r = 0; r < R; ++r) {
      if (row_used[r]) continue;
      for (std::size_t c = 0; c < C; ++c)
        if (!col_used[c] && sgn(w.q[r][c]) != 0 && w.exponent(r, c) < best) {
          best = w.exponent(r, c);
          pr = r;
          pc = c;
        }
    }
    if (best == INT_MAX) break;
    const Rational piv = w.q[pr][pc];
    for (std::size_t r = 0; r < R; ++r) {
      if (r == pr || sgn(w.q[r][pc]) == 0) continue;
      Rational lam = w.q[r][pc] / piv;
      for (std::size_t c = 0; c < C; ++c)
        if (sgn(w.q[pr][c]) != 0) w.q[r][c] -= lam * w.q[pr][c];
      if (!record_transforms) continue;
      for (std::size_t c = 0; c < R; ++c) f.left.q[r][c] -= lam * f.left.q[pr][c];
      for (std::size_t c = 0; c < R; ++c) f.left_inv.q[c][pr] += lam * f.left_inv.q[c][r];
    }
    for (std::size_t c = 0; c < C; ++c) {
      if (c == pc || sgn(w.q[pr][c]) == 0) continue;
      Rational mu = w.q[pr][c] / piv;
      w.q[pr][c] = 0;  // column pc is zero outside the pivot row by now
      if (!record_transforms) continue;
      for (std::size_t r = 0; r < C; ++r) f.right.q[r][c] -= mu * f.right.q[r][pc];
      for (std::size_t r = 0; r < C; ++r) f.right_inv.q[pc][r] += mu * f.right_inv.q[c][r];
    }
    row_used[pr] = col_used[pc] = true;
    f.pivots.emplace_back(pr, pc);
    f.exponents.push_back(best);
  }
  f.diagonal = std::move(w);
  return f;
}

Span::Span(std::vector<int> ambient, const std::vector<GradedVector>& generators) : ambient_(std::move(ambient)) {
  std::vector<GradedVector> work = generators;
  for (const auto& g : work) {
    if (g.v.size() != ambient_.size()) throw DomainError("span generator has the wrong length");
    for (std::size_t r = 0; r < g.v.size(); ++r) {
      int twice = g.degree - ambient_[r];
      if (sgn(g.v[r]) != 0 && (twice < 0 || twice % 2)) throw DomainError("span generator is not homogeneous");
    }
  }
  std::vector<bool> active(work.size(), true);
  for (std::size_t r = 0; r < ambient_.size(); ++r) {
    std::size_t p = work.size();
    for (std::size_t k = 0; k < work.size(); ++k)
      if (active[k] && sgn(work[k].v[r]) != 0 && (p == work.size() || work[k].degree < work[p].degree)) p = k;
    if (p == work.size()) continue;
    for (std::size_t k = 0; k < work.size(); ++k) {
      if (k == p || !active[k] || sgn(work[k].v[r]) == 0) continue;
      Rational lam = work[k].v[r] / work[p].v[r];
      for (std::size_t i = 0; i < ambient_.size(); ++i)
        if (sgn(work[p].v[i]) != 0) work[k].v[i] -= lam * work[p].v[i];
    }
    active[p] = false;
    basis_.push_back(work[p]);
    pivot_rows_.push_back(r);
  }
}

std::vector<int> Span::degrees() const {
  std::vector<int> d;
  for (const auto& b : basis_) d.push_back(b.degree);
  return d;
}

std::optional<GradedVector> Span::solve(const GradedVector& v) const {
  GradedVector rest = v;
  GradedVector coords{v.degree, std::vector<Rational>(basis_.size())};
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const auto& b = basis_[k];
    std::size_t r = pivot_rows_[k];
    if (sgn(rest.v[r]) == 0) continue;
    int twice = v.degree - b.degree;
    if (twice < 0 || twice % 2) return std::nullopt;
    Rational lam = rest.v[r] / b.v[r];
    coords.v[k] = lam;
    for (std::size_t i = 0; i < rest.v.size(); ++i)
      if (sgn(b.v[i]) != 0) rest.v[i] -= lam * b.v[i];
  }
  for (const auto& x : rest.v)
    if (sgn(x) != 0) return std::nullopt;
  return coords;
}

std::vector<GradedVector> kernel(const SliceMatrix& m) {
  m.validate();
  std::size_t R = m.target.size(), C = m.source.size();
  // work columns alongside the transformation T (source coordinates)
  std::vector<std::vector<Rational>> w(C, std::vector<Rational>(R)), t(C, std::vector<Rational>(C));
  for (std::size_t c = 0; c < C; ++c) {
    for (std::size_t r = 0; r < R; ++r) w[c][r] = m.q[r][c];
    t[c][c] = 1;
  }
  std::vector<bool> active(C, true);
  for (std::size_t r = 0; r < R; ++r) {
    std::size_t p = C;
    for (std::size_t c = 0; c < C; ++c)
      if (active[c] && sgn(w[c][r]) != 0 && (p == C || m.source[c] < m.source[p])) p = c;
    if (p == C) continue;
    for (std::size_t c = 0; c < C; ++c) {
      if (c == p || !active[c] || sgn(w[c][r]) == 0) continue;
      Rational lam = w[c][r] / w[p][r];
      for (std::size_t i = 0; i < R; ++i)
        if (sgn(w[p][i]) != 0) w[c][i] -= lam * w[p][i];
      for (std::size_t i = 0; i < C; ++i)
        if (sgn(t[p][i]) != 0) t[c][i] -= lam * t[p][i];
    }
    active[p] = false;
  }
  std::vector<GradedVector> out;
  for (std::size_t c = 0; c < C; ++c)
    if (active[c]) out.push_back({m.source[c], std::move(t[c])});
  return out;
}

std::vector<GradedVector> columns(const SliceMatrix& m) {
  std::vector<GradedVector> out;
  for (std::size_t c = 0; c < m.source.size(); ++c) {
    GradedVector g{m.source[c] + m.degree, std::vector<Rational>(m.target.size())};
    for (std::size_t r = 0; r < m.target.size(); ++r) g.v[r] = m.q[r][c];
    out.push_back(std::move(g));
  }
  return out;
}

QaSlice cokernel(const SliceMatrix& relations) {
  SmithForm f = smith(relations, false);
  QaSlice s;
  std::vector<bool> pivot_row(relations.target.size());
  for (std::size_t k = 0; k < f.pivots.size(); ++k) {
    std::size_t r = f.pivots[k].first;
    pivot_row[r] = true;
    if (f.exponents[k] > 0) s.torsion.emplace_back(f.exponents[k], relations.target[r]);
  }
  for (std::size_t r = 0; r < relations.target.size(); ++r)
    if (!pivot_row[r]) s.free.push_back(relations.target[r]);
  std::sort(s.free.begin(), s.free.end());
  std::sort(s.torsion.begin(), s.torsion.end());
  return s;
}

GradedQaModule GradedQaModule::window(int lo, int hi) const {
  GradedQaModule out;
  out.x_min = std::max(lo, x_min);
  out.x_max = std::min(hi, x_max);
  for (const auto& [k, s] : slices)
    if (std::get<2>(k) >= out.x_min && std::get<2>(k) <= out.x_max) out.slices.emplace(k, s);
  return out;
}

std::vector<Tail> GradedQaModule::tails(int min_repeats) const {
  std::vector<Tail> out;
  std::set<std::pair<int, int>> cells;
  for (const auto& [k, s] : slices) cells.emplace(std::get<0>(k), std::get<1>(k));
  for (auto [eps, i] : cells)
    for (int top : {x_max, x_max - 1}) {
      auto at = [&](int x) {
        auto it = slices.find({eps, i, x});
        return it == slices.end() ? QaSlice{} : it->second;
      };
      QaSlice pattern = at(top);
      if (pattern.empty()) continue;
      int start = top, run = 1;
      while (start - 2 >= x_min && at(start - 2) == pattern) {
        start -= 2;
        ++run;
      }
      if (run >= min_repeats) out.push_back({eps, i, start, pattern});
    }
  return out;
}

std::string GradedQaModule::to_table() const {
  std::ostringstream os;
  os << "window x in [" << x_min << ", " << x_max << "]\n";
  if (slices.empty()) os << "(zero)\n";
  for (const auto& [k, s] : slices) {
    auto [eps, i, x] = k;
    os << "eps=" << eps << " i=" << i << " x=" << x << " :";
    for (int f : s.free) os << " Q[a]{" << f << "}";
    for (auto [l, t] : s.torsion) os << " Q[a]/(a" << (l > 1 ? "^" + std::to_string(l) : "") << "){" << t << "}";
    os << "\n";
  }
  return os.str();
}

DimensionTable specialize(const GradedQaModule& m, At at) {
  DimensionTable d;
  for (const auto& [k, s] : m.slices) {
    auto [eps, i, x] = k;
    long n = static_cast<long>(s.free.size());
    if (at == At::AZero) {
      n += static_cast<long>(s.torsion.size());
      for (int f : s.free) ++d.generators[{eps, i, x, f}];
      for (auto [l, t] : s.torsion) ++d.generators[{eps, i, x, t}];
    }
    if (n) d.dims[k] = n;
  }
  return d;
}

namespace {

using ratfun::Laurent;
using ratfun::RatFun;
using ratfun::SkeinValue;

// Numerators over (1 - alpha^2) at tau = +1 and tau = -1.
std::pair<Laurent, Laurent> window_numerators(const GradedQaModule& m) {
  Laurent plus, minus;
  for (const auto& [k, s] : m.slices) {
    auto [eps, i, x] = k;
    Laurent term;
    for (int f : s.free) term.add_term(1, f, x);
    for (auto [l, t] : s.torsion) {
      term.add_term(1, t, x);
      term.add_term(-1, t + 2 * l, x);
    }
    if (i % 2) term = -term;
    plus += term;
    minus += eps ? -term : term;
  }
  return {plus, minus};
}

Laurent truncate_xi(const Laurent& l, int hi) {
  Laurent out;
  for (const auto& [k, c] : l.terms())
    if (k.second <= hi) out.add_term(c, k.first, k.second);
  return out;
}

int top_xi(const Laurent& l) {
  int t = INT_MIN;
  for (const auto& [k, c] : l.terms()) t = std::max(t, k.second);
  return t;
}

}  // namespace

SkeinValue euler_window(const GradedQaModule& m) {
  auto [plus, minus] = window_numerators(m);
  return {RatFun(plus, 1, 0).normalized(), RatFun(minus, 1, 0).normalized()};
}

EulerResult euler_characteristic(const GradedQaModule& m, const EulerOptions& opt) {
  EulerResult res;
  auto [plus, minus] = window_numerators(m);
  if (plus.is_zero() && minus.is_zero()) {
    res.tail_verified = true;
    res.tail_order = 0;
    return res;
  }
  const Laurent factor = Laurent(1) - Laurent::monomial(1, 0, 2);
  Laurent fp = plus, fm = minus;
  for (int n = 0; n <= opt.max_order; ++n) {
    Laurent tp = truncate_xi(fp, m.x_max), tm = truncate_xi(fm, m.x_max);
    int top = std::max(top_xi(tp), top_xi(tm));
    if (m.x_max - top >= opt.verify_span) {
      res.value = {RatFun(tp, 1, n).normalized(), RatFun(tm, 1, n).normalized()};
      res.tail_verified = true;
      res.tail_order = n;
      res.note = "tail summed as F/(1-xi^2)^" + std::to_string(n) + ", confirmed on x in (" +
                 std::to_string(top) + ", " + std::to_string(m.x_max) + "]";
      return res;
    }
    fp = tp * factor;
    fm = tm * factor;
  }
  res.value = euler_window(m);
  res.note = "no tail fit within the window; value is the truncated window sum";
  return res;
}

}  // namespace krlab::qamod
