#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cartier/bigint.hpp"

namespace cartier {

// Dense matrix over Z, row-major. Empty dimensions permitted.
struct IntMatrix {
  long rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  IntMatrix(long r, long c, std::vector<Int> entries)
      : rows(r), cols(c), a(std::move(entries)) {}

  Int& at(long r, long c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(long r, long c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IntMatrix identity(long n);
  static IntMatrix zero(long r, long c) { return IntMatrix(r, c); }
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rr);
  static IntMatrix diag(const std::vector<Int>& d, long r, long c);
  static IntMatrix col_vec(const std::vector<Int>& v);

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
  bool is_zero() const;

  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& o) const;
  IntMatrix add(const IntMatrix& o) const;
  IntMatrix sub(const IntMatrix& o) const;
  IntMatrix scaled(const Int& s) const;
  IntMatrix neg() const { return scaled(-1); }
  IntMatrix hstack(const IntMatrix& o) const;  // [this | o]
  IntMatrix vstack(const IntMatrix& o) const;  // [this ; o]
  IntMatrix submatrix_cols(long c0, long c1) const;  // columns [c0, c1)
  IntMatrix submatrix_rows(long r0, long r1) const;
  std::vector<Int> column(long c) const;
  std::vector<Int> apply(const std::vector<Int>& v) const;  // this * v
  IntMatrix mod_reduced(const Int& m) const;                 // entrywise mod into [0, m)
  std::string str() const;
};

struct SNFResult {
  IntMatrix left;   // unimodular, rows x rows
  IntMatrix diag;   // rows x cols, diagonal, successive divisibility, nonnegative
  IntMatrix right;  // unimodular, cols x cols
  long rank = 0;    // number of nonzero diagonal entries
};

// left * m * right == diag.  Smallest-nonzero-entry pivoting.
SNFResult smith_normal_form(const IntMatrix& m);

// Determinant via fraction-free Gaussian elimination (used in tests to certify
// unimodularity of SNF transforms).
Int determinant(const IntMatrix& m);

// Basis (as columns) of { v : m v = 0 }; the lattice is saturated.
IntMatrix nullspace(const IntMatrix& m);

// Columnwise integer solve m * X = b; nullopt if any column has no solution.
std::optional<IntMatrix> solve_integer(const IntMatrix& m, const IntMatrix& b);
std::optional<IntMatrix> solve_integer(const SNFResult& snf, const IntMatrix& b);

// Is b (a column vector) in the lattice spanned by the columns of m?
bool in_column_lattice(const IntMatrix& m, const std::vector<Int>& b);

// Generators (columns) of { x : f x lies in the column lattice of lat }.
IntMatrix preimage_lattice(const IntMatrix& f, const IntMatrix& lat);

}  // namespace cartier
