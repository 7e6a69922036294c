#include "cartier/int_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "cartier/errors.hpp"

namespace cartier {

IntMatrix IntMatrix::identity(long n) {
  IntMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rr) {
  long r = static_cast<long>(rr.size());
  long c = r ? static_cast<long>(rr[0].size()) : 0;
  IntMatrix m(r, c);
  for (long i = 0; i < r; ++i)
    for (long j = 0; j < c; ++j) m.at(i, j) = rr[i][j];
  return m;
}

IntMatrix IntMatrix::diag(const std::vector<Int>& d, long r, long c) {
  IntMatrix m(r, c);
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<long>(i), static_cast<long>(i)) = d[i];
  return m;
}

IntMatrix IntMatrix::col_vec(const std::vector<Int>& v) {
  IntMatrix m(static_cast<long>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<long>(i), 0) = v[i];
  return m;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& o) const {
  if (cols != o.rows) throw CartierError("Internal", "matrix dim mismatch in mul");
  IntMatrix r(rows, o.cols);
  for (long i = 0; i < rows; ++i)
    for (long k = 0; k < cols; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (long j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

IntMatrix IntMatrix::add(const IntMatrix& o) const {
  IntMatrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
  return r;
}

IntMatrix IntMatrix::sub(const IntMatrix& o) const {
  IntMatrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
  return r;
}

IntMatrix IntMatrix::scaled(const Int& s) const {
  IntMatrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] * s;
  return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& o) const {
  if (rows != o.rows) throw CartierError("Internal", "hstack row mismatch");
  IntMatrix r(rows, cols + o.cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
    for (long j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
  }
  return r;
}

IntMatrix IntMatrix::vstack(const IntMatrix& o) const {
  if (cols != o.cols && rows != 0 && o.rows != 0)
    throw CartierError("Internal", "vstack col mismatch");
  long c = rows ? cols : o.cols;
  IntMatrix r(rows + o.rows, c);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
  for (long i = 0; i < o.rows; ++i)
    for (long j = 0; j < o.cols; ++j) r.at(rows + i, j) = o.at(i, j);
  return r;
}

IntMatrix IntMatrix::submatrix_cols(long c0, long c1) const {
  IntMatrix r(rows, c1 - c0);
  for (long i = 0; i < rows; ++i)
    for (long j = c0; j < c1; ++j) r.at(i, j - c0) = at(i, j);
  return r;
}

IntMatrix IntMatrix::submatrix_rows(long r0, long r1) const {
  IntMatrix r(r1 - r0, cols);
  for (long i = r0; i < r1; ++i)
    for (long j = 0; j < cols; ++j) r.at(i - r0, j) = at(i, j);
  return r;
}

std::vector<Int> IntMatrix::column(long c) const {
  std::vector<Int> v(rows);
  for (long i = 0; i < rows; ++i) v[i] = at(i, c);
  return v;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& v) const {
  std::vector<Int> r(rows);
  for (long i = 0; i < rows; ++i) {
    Int s = 0;
    for (long j = 0; j < cols; ++j)
      if (at(i, j) != 0) s += at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

IntMatrix IntMatrix::mod_reduced(const Int& m) const {
  IntMatrix r(rows, cols);
  for (size_t i = 0; i < a.size(); ++i) r.a[i] = mod_pos(a[i], m);
  return r;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (long i = 0; i < rows; ++i) {
    os << (i ? " [" : "[");
    for (long j = 0; j < cols; ++j) os << (j ? "," : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

struct SNFWork {
  IntMatrix m, l, r;

  void row_swap(long i, long j) {
    if (i == j) return;
    for (long c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    for (long c = 0; c < l.cols; ++c) std::swap(l.at(i, c), l.at(j, c));
  }
  void col_swap(long i, long j) {
    if (i == j) return;
    for (long rr = 0; rr < m.rows; ++rr) std::swap(m.at(rr, i), m.at(rr, j));
    for (long rr = 0; rr < r.rows; ++rr) std::swap(r.at(rr, i), r.at(rr, j));
  }
  // row i -= q * row j
  void row_sub(long i, long j, const Int& q) {
    if (q == 0) return;
    for (long c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(j, c);
    for (long c = 0; c < l.cols; ++c) l.at(i, c) -= q * l.at(j, c);
  }
  void col_sub(long i, long j, const Int& q) {
    if (q == 0) return;
    for (long rr = 0; rr < m.rows; ++rr) m.at(rr, i) -= q * m.at(rr, j);
    for (long rr = 0; rr < r.rows; ++rr) r.at(rr, i) -= q * r.at(rr, j);
  }
  void row_negate(long i) {
    for (long c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
    for (long c = 0; c < l.cols; ++c) l.at(i, c) = -l.at(i, c);
  }
};

}  // namespace

SNFResult smith_normal_form(const IntMatrix& input) {
  SNFWork w{input, IntMatrix::identity(input.rows), IntMatrix::identity(input.cols)};
  IntMatrix& m = w.m;
  long n = std::min(m.rows, m.cols);

  for (long t = 0; t < n; ++t) {
    for (;;) {
      // Smallest-nonzero-entry pivot in the trailing submatrix: keeps
      // intermediate entry growth down compared to first-nonzero pivoting.
      // Re-selected every sweep so the pivot magnitude never increases.
      long pi = -1, pj = -1;
      Int best = 0;
      for (long i = t; i < m.rows; ++i)
        for (long j = t; j < m.cols; ++j) {
          const Int& x = m.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (pi < 0 || ax < best) {
            best = ax;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) goto column_done;  // trailing block zero
      w.row_swap(t, pi);
      w.col_swap(t, pj);

      bool residue = false;
      for (long i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / m.at(t, t);
        w.row_sub(i, t, q);
        if (m.at(i, t) != 0) residue = true;
      }
      for (long j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / m.at(t, t);
        w.col_sub(j, t, q);
        if (m.at(t, j) != 0) residue = true;
      }
      if (residue) continue;  // remainders are strictly smaller; re-pivot on them
      // pivot divides its row/col; enforce divisibility into the trailing block
      bool fixed = false;
      for (long i = t + 1; i < m.rows && !fixed; ++i)
        for (long j = t + 1; j < m.cols && !fixed; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            // fold row i into row t so the offending entry enters row t
            w.row_sub(t, i, Int(-1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (m.at(t, t) < 0) w.row_negate(t);
  }
column_done:;

  SNFResult res;
  res.left = std::move(w.l);
  res.right = std::move(w.r);
  res.diag = std::move(w.m);
  for (long t = 0; t < n; ++t)
    if (res.diag.at(t, t) != 0) ++res.rank;
  return res;
}

Int determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw CartierError("Internal", "determinant of non-square");
  long n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix w = m;
  Int prev = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      long s = -1;
      for (long i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { s = i; break; }
      if (s < 0) return 0;
      for (long j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(s, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j) {
        Int num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
        w.at(i, j) = num / prev;  // exact by Bareiss
      }
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

IntMatrix nullspace(const IntMatrix& m) {
  SNFResult s = smith_normal_form(m);
  std::vector<long> free_cols;
  long n = std::min(m.rows, m.cols);
  for (long j = 0; j < m.cols; ++j)
    if (j >= n || s.diag.at(j, j) == 0) free_cols.push_back(j);
  IntMatrix k(m.cols, static_cast<long>(free_cols.size()));
  for (size_t idx = 0; idx < free_cols.size(); ++idx)
    for (long i = 0; i < m.cols; ++i) k.at(i, static_cast<long>(idx)) = s.right.at(i, free_cols[idx]);
  return k;
}

std::optional<IntMatrix> solve_integer(const SNFResult& s, const IntMatrix& b) {
  const IntMatrix& d = s.diag;
  long rows = d.rows, cols = d.cols;
  IntMatrix lb = s.left.mul(b);
  IntMatrix y(cols, b.cols);
  long n = std::min(rows, cols);
  for (long c = 0; c < b.cols; ++c) {
    for (long i = 0; i < rows; ++i) {
      const Int& v = lb.at(i, c);
      if (i < n && d.at(i, i) != 0) {
        if (v % d.at(i, i) != 0) return std::nullopt;
        y.at(i, c) = v / d.at(i, i);
      } else if (v != 0) {
        return std::nullopt;
      }
    }
  }
  return s.right.mul(y);
}

std::optional<IntMatrix> solve_integer(const IntMatrix& m, const IntMatrix& b) {
  return solve_integer(smith_normal_form(m), b);
}

bool in_column_lattice(const IntMatrix& m, const std::vector<Int>& b) {
  return solve_integer(m, IntMatrix::col_vec(b)).has_value();
}

IntMatrix preimage_lattice(const IntMatrix& f, const IntMatrix& lat) {
  // x with f x = lat * lambda for some integer lambda
  IntMatrix stacked = f.hstack(lat.scaled(-1));
  IntMatrix ns = nullspace(stacked);
  return ns.submatrix_rows(0, f.cols);
}

}  // namespace cartier
