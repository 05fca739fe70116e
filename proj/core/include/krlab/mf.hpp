#pragma once

// Z2 + Z^2 graded matrix factorizations over Q[a, marks].

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "krlab/poly.hpp"

namespace krlab::mf {

using poly::Bideg;
using poly::Poly;
using poly::Rational;
using poly::VariableTable;
using TablePtr = std::shared_ptr<const VariableTable>;

// Dense matrix, row-major.
using Matrix = std::vector<std::vector<Poly>>;

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix multiply(const Matrix& l, const Matrix& r);

struct MatrixFactorization {
  TablePtr table;
  int N = 1;
  Poly potential;
  std::vector<Bideg> basis0, basis1;
  Matrix d0;  // basis1.size() x basis0.size()
  Matrix d1;  // basis0.size() x basis1.size()

  std::size_t rank() const { return basis0.size() + basis1.size(); }
  // Throws DomainError unless d1 d0 = w Id, d0 d1 = w Id and every entry has the forced bidegree.
  void check() const;
};

struct KoszulRow {
  Poly left, right;
  // Bidegree of left (known even when left is zero).
  Bideg left_deg;
};

struct KoszulSpec {
  TablePtr table;
  int N = 1;
  std::vector<KoszulRow> rows;
  Bideg shift;
  int flip = 0;

  Poly potential() const;
};

// Builds a row and validates homogeneity; left_deg is inferred from whichever entry is nonzero.
KoszulRow make_row(const VariableTable& t, int N, Poly left, Poly right);

// Degree of the odd generator of a single row.
Bideg odd_generator_degree(const KoszulRow& row, int N);

// Bit vectors of the Koszul basis with the given parity (before flip), increasing order.
std::vector<unsigned> koszul_basis(int rows, int parity);
// Koszul differential on e_b: list of (target bit vector, coefficient).
std::vector<std::pair<unsigned, Poly>> koszul_d(const KoszulSpec& spec, unsigned b);

MatrixFactorization koszul(const KoszulSpec& spec);
MatrixFactorization tensor(const MatrixFactorization& m, const MatrixFactorization& n);
MatrixFactorization shift(const MatrixFactorization& m, int da, int dx, int flip);
MatrixFactorization direct_sum(const MatrixFactorization& m, const MatrixFactorization& n);

KoszulSpec row_operation(const KoszulSpec& spec, int i, int j, const Poly& c);
KoszulSpec twist(const KoszulSpec& spec, int i, int j, const Poly& k);

struct Exclusion {
  int row = 0;       // position of the removed row in the spec it was removed from
  int var = 0;       // excluded variable
  Poly value;        // var := value
  Rational scale;    // right entry was scale * (var - value)
};

// Removes `row` whose right entry is c*(v - p) with p free of v and c a nonzero constant,
// substituting v := p everywhere.
KoszulSpec exclude_variable(const KoszulSpec& spec, int row, int v, Exclusion* record = nullptr);

// Eliminates constant entries until none remain.
MatrixFactorization split_contractibles(const MatrixFactorization& m);

struct GdimSeries {
  // (eps, a-degree, x-degree) -> dimension
  std::map<std::tuple<int, int, int>, long> terms;
  int x_truncation = 0;

  long total() const;
  GdimSeries truncated(int x) const;
  GdimSeries shifted(int eps, int da, int dx) const;
  std::string to_string() const;

  static GdimSeries monomial(int eps, int a, int x, long c, int x_truncation);
  friend GdimSeries operator+(const GdimSeries& l, const GdimSeries& r);
  friend GdimSeries operator*(const GdimSeries& l, const GdimSeries& r);
  friend bool operator==(const GdimSeries& l, const GdimSeries& r);
};

// Graded dimension of H(M / I M) with I = (a, boundary variables).
GdimSeries gdim(const MatrixFactorization& m, int x_truncation);

}  // namespace krlab::mf
