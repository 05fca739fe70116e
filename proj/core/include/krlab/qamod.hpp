#pragma once

// Graded linear algebra over Q[a] and the two-stage homology of a cube complex.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "krlab/complex.hpp"
#include "krlab/ratfun.hpp"

namespace krlab::qamod {

using Rational = mpq_class;
using QMatrix = std::vector<std::vector<Rational>>;

// A homogeneous map of free graded Q[a]-modules inside one slice. Entry (r, c) stands for
// q[r][c] * a^((source[c] + degree - target[r]) / 2).
struct SliceMatrix {
  std::vector<int> source, target;  // a-degrees of the basis elements
  int degree = 0;
  QMatrix q;  // target.size() x source.size()

  static SliceMatrix zero(std::vector<int> source, std::vector<int> target, int degree);
  // a-exponent carried by entry (r, c); may be negative or fractional-invalid for zero entries.
  int exponent(std::size_t r, std::size_t c) const { return (source[c] + degree - target[r]) / 2; }
  // Throws DomainError if a nonzero entry has a negative or half-integral a-exponent.
  void validate() const;
  std::string to_string() const;
};

SliceMatrix multiply(const SliceMatrix& l, const SliceMatrix& r);

struct SmithForm {
  // Pivot positions (row, column) of the diagonal form and their a-exponents, non-decreasing.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<int> exponents;
  // left * M * right = D and left_inv * D * right_inv = M, all as graded Q-representatives:
  // left acts on target degrees, right on source degrees.
  SliceMatrix left, left_inv, right, right_inv, diagonal;
};

// Diagonalizes by graded row and column operations, always pivoting on a least a-exponent.
// Without `record_transforms` only pivots, exponents and the diagonal are filled in.
SmithForm smith(const SliceMatrix& m, bool record_transforms = true);

// A homogeneous vector of the free module with basis degrees `degrees`: v[r] stands for
// v[r] * a^((degree - degrees[r]) / 2).
struct GradedVector {
  int degree = 0;
  std::vector<Rational> v;
};

// A Q[a]-submodule given in echelon form; solve() returns coordinates in the echelon basis.
class Span {
 public:
  Span() = default;
  Span(std::vector<int> ambient, const std::vector<GradedVector>& generators);

  const std::vector<GradedVector>& basis() const { return basis_; }
  const std::vector<int>& ambient() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  // Coordinates over Q[a] (as graded Q-representatives), or nullopt if v is not in the span.
  std::optional<GradedVector> solve(const GradedVector& v) const;
  std::vector<int> degrees() const;

 private:
  std::vector<int> ambient_;
  std::vector<GradedVector> basis_;
  std::vector<std::size_t> pivot_rows_;
};

// A basis of the kernel of m as a graded Q[a]-module (vectors in source coordinates).
std::vector<GradedVector> kernel(const SliceMatrix& m);
// Columns of m as graded vectors of the target.
std::vector<GradedVector> columns(const SliceMatrix& m);

// Free shifts and torsion pairs (l, t) meaning Q[a]/(a^l){t}, both sorted.
struct QaSlice {
  std::vector<int> free;
  std::vector<std::pair<int, int>> torsion;

  bool empty() const { return free.empty() && torsion.empty(); }
  friend bool operator==(const QaSlice&, const QaSlice&) = default;
};

// Decomposition of the cokernel of `relations` (target = generators).
QaSlice cokernel(const SliceMatrix& relations);

// A repeating tail: for every x >= start with x = start mod 2 the slice equals `pattern`.
struct Tail {
  int eps = 0, i = 0, start = 0;
  QaSlice pattern;
};

struct GradedQaModule {
  std::map<std::tuple<int, int, int>, QaSlice> slices;  // (eps, i, x-degree), empty slices omitted
  int x_min = 0, x_max = 0;                             // reported window

  bool empty() const { return slices.empty(); }
  friend bool operator==(const GradedQaModule& l, const GradedQaModule& r) {
    return l.slices == r.slices && l.x_min == r.x_min && l.x_max == r.x_max;
  }
  // Restriction to x-degrees in [lo, hi].
  GradedQaModule window(int lo, int hi) const;
  // Detects period-2 constant tails at the top of the window (at least `min_repeats` repeats).
  std::vector<Tail> tails(int min_repeats = 3) const;
  std::string to_table() const;
};

struct HomologyOptions {
  int x_window = 20;  // report x-degrees in [x_min, x_min + x_window]
  bool check_complex = true;
};

struct HomologyStats {
  std::size_t cells = 0;       // free Q[a]-generators after slicing
  std::size_t eliminated = 0;  // cells removed by unit pivots
  int x_internal = 0;          // highest x-degree built internally
  double seconds_slicing = 0, seconds_elimination = 0, seconds_slices = 0;
};

// H(H(C, d_mf), d_chi) slice by slice.
GradedQaModule two_stage_homology(const complex::ChainComplexOfMF& c, const HomologyOptions& opt = {},
                                  HomologyStats* stats = nullptr);

enum class At { AOne, AZero };
// Q-dimensions per (eps, i, x) and, for a = 0, per (eps, i, x, a-degree) too.
struct DimensionTable {
  std::map<std::tuple<int, int, int>, long> dims;
  std::map<std::tuple<int, int, int, int>, long> generators;  // a = 0 only
};
DimensionTable specialize(const GradedQaModule& m, At at);

struct EulerOptions {
  int max_order = 6;    // largest power of (1 - xi^2) tried when summing the tail
  int verify_span = 6;  // x-degrees at the top of the window that must confirm the fit
};

struct EulerResult {
  ratfun::SkeinValue value;
  bool tail_verified = false;
  int tail_order = -1;
  std::string note;
};

// Graded Euler characteristic; the infinite x-tail is summed by fitting the window to
// F / (1 - xi^2)^n with F a Laurent polynomial.
EulerResult euler_characteristic(const GradedQaModule& m, const EulerOptions& opt = {});

// The truncated sum over the window only (no tail fitting).
ratfun::SkeinValue euler_window(const GradedQaModule& m);

}  // namespace krlab::qamod
