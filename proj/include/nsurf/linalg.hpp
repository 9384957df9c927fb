#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsurf/integer.hpp"

namespace nsurf {

// Dense row-major integer matrix.  Desk-scale sizes only (tens of rows and
// columns), so no attempt at sparsity here; the matching matrix keeps its
// own sparse form and converts on demand.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Integer& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const Integer& at(std::size_t r, std::size_t c) const {
    return a[r * cols + c];
  }

  NormalVector row_vec(std::size_t r) const {
    return NormalVector(a.begin() + static_cast<std::ptrdiff_t>(r * cols),
                        a.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
  }

  void set_row(std::size_t r, const NormalVector& v) {
    for (std::size_t c = 0; c < cols; ++c) at(r, c) = v[c];
  }

  void append_row(const NormalVector& v) {
    if (rows == 0 && cols == 0) cols = v.size();
    if (v.size() != cols)
      throw std::invalid_argument("append_row: dimension mismatch");
    a.insert(a.end(), v.begin(), v.end());
    ++rows;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

// Convenience for tests and fixtures; cols_hint covers the 0-row case.
inline IntMatrix matrix_from(
    std::initializer_list<std::initializer_list<long long>> rows,
    std::size_t cols_hint = 0) {
  IntMatrix m;
  m.rows = rows.size();
  m.cols = cols_hint;
  for (const auto& r : rows) m.cols = r.size();
  m.a.reserve(m.rows * m.cols);
  for (const auto& r : rows) {
    if (r.size() != m.cols)
      throw std::invalid_argument("matrix_from: ragged rows");
    for (long long x : r) m.a.emplace_back(x);
  }
  return m;
}

inline IntMatrix matrix_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matrix_mul: shape");
  IntMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j)
        r.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return r;
}

namespace detail {

// One-step Bareiss fraction-free elimination.  Returns the pivot column of
// each eliminated row; matrix is consumed.
inline std::vector<std::size_t> bareiss_pivots(IntMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t j = c; j < m.cols; ++j)
        std::swap(m.at(p, j), m.at(r, j));
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = c + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(r, c) * m.at(i, j) - m.at(i, c) * m.at(r, j)) / prev;
      m.at(i, c) = 0;
    }
    prev = m.at(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const IntMatrix& m) {
  return detail::bareiss_pivots(m).size();
}

// Pivot columns of a row echelon form: a maximal independent column set.
inline std::vector<std::size_t> independent_columns(const IntMatrix& m) {
  return detail::bareiss_pivots(m);
}

// Bareiss determinant; square matrices only.
inline Integer determinant(IntMatrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("determinant: not square");
  if (m.rows == 0) return 1;
  int sign = 1;
  Integer prev = 1;
  for (std::size_t r = 0; r < m.rows; ++r) {
    std::size_t p = r;
    while (p < m.rows && m.at(p, r) == 0) ++p;
    if (p == m.rows) return 0;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols; ++j)
        std::swap(m.at(p, j), m.at(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      for (std::size_t j = r + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(r, r) * m.at(i, j) - m.at(i, r) * m.at(r, j)) / prev;
      m.at(i, r) = 0;
    }
    prev = m.at(r, r);
  }
  return sign > 0 ? m.at(m.rows - 1, m.rows - 1) : -m.at(m.rows - 1, m.rows - 1);
}

// Cramer solution of a square system M x = rhs: x_i = num[i] / den with
// den = det(M) != 0.  Throws on singular M.
struct CramerSolution {
  std::vector<Integer> num;
  Integer den;
};

inline CramerSolution solve_cramer(const IntMatrix& m,
                                   const std::vector<Integer>& rhs) {
  if (m.rows != m.cols || rhs.size() != m.rows)
    throw std::invalid_argument("solve_cramer: shape");
  CramerSolution s;
  s.den = determinant(m);
  if (s.den == 0) throw std::invalid_argument("solve_cramer: singular system");
  s.num.resize(m.rows);
  for (std::size_t i = 0; i < m.cols; ++i) {
    IntMatrix mi = m;
    for (std::size_t r = 0; r < m.rows; ++r) mi.at(r, i) = rhs[r];
    s.num[i] = determinant(mi);
  }
  return s;
}

// Smith normal form.  Diagonalizes A by unimodular row and column operations
// and returns D together with the *inverses* of the transformations, so that
// A == left_inv * D * right_inv.  Diagonal entries are non-negative and each
// divides the next.  Pass track=false to skip the transform bookkeeping when
// only the diagonal is wanted.
struct SmithResult {
  IntMatrix d;
  IntMatrix left_inv;   // U^-1 where U A W = D
  IntMatrix right_inv;  // W^-1
};

inline SmithResult smith_normal_form(IntMatrix m, bool track = true) {
  const std::size_t rows = m.rows, cols = m.cols;
  SmithResult res;
  if (track) {
    res.left_inv = IntMatrix::identity(rows);
    res.right_inv = IntMatrix::identity(cols);
  }

  // Row ops act as m <- E m, so left_inv <- left_inv E^-1 (column ops on
  // left_inv).  Column ops act as m <- m F, so right_inv <- F^-1 right_inv
  // (row ops on right_inv).
  auto row_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    if (!track) return;
    for (std::size_t r = 0; r < rows; ++r)
      std::swap(res.left_inv.at(r, i), res.left_inv.at(r, j));
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(m.at(r, i), m.at(r, j));
    if (!track) return;
    for (std::size_t c = 0; c < cols; ++c)
      std::swap(res.right_inv.at(i, c), res.right_inv.at(j, c));
  };
  auto row_addmul = [&](std::size_t i, std::size_t j, const Integer& f) {
    // row_i += f * row_j;  left_inv col_j -= f * col_i
    for (std::size_t c = 0; c < cols; ++c) m.at(i, c) += f * m.at(j, c);
    if (!track) return;
    for (std::size_t r = 0; r < rows; ++r)
      res.left_inv.at(r, j) -= f * res.left_inv.at(r, i);
  };
  auto col_addmul = [&](std::size_t j, std::size_t i, const Integer& f) {
    // col_j += f * col_i;  right_inv row_i -= f * row_j
    for (std::size_t r = 0; r < rows; ++r) m.at(r, j) += f * m.at(r, i);
    if (!track) return;
    for (std::size_t c = 0; c < cols; ++c)
      res.right_inv.at(i, c) -= f * res.right_inv.at(j, c);
  };

  const std::size_t t_max = rows < cols ? rows : cols;
  bool exhausted = false;
  for (std::size_t t = 0; t < t_max && !exhausted; ++t) {
    for (;;) {
      // Smallest nonzero |entry| of the trailing submatrix as pivot.
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (m.at(i, j) == 0) continue;
          Integer v = boost::multiprecision::abs(m.at(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        exhausted = true;
        break;
      }
      row_swap(t, pi);
      col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m.at(i, t) == 0) continue;
        Integer q = m.at(i, t) / m.at(t, t);
        if (q != 0) row_addmul(i, t, -q);
        if (m.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m.at(t, j) == 0) continue;
        Integer q = m.at(t, j) / m.at(t, t);
        if (q != 0) col_addmul(j, t, -q);
        if (m.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder became available

      // Divisibility fix-up: the pivot must divide the whole submatrix.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols && divides; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            row_addmul(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
  }

  // Non-negative diagonal.
  for (std::size_t t = 0; t < t_max; ++t)
    if (m.at(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) m.at(t, c) = -m.at(t, c);
      if (!track) continue;
      for (std::size_t r = 0; r < rows; ++r)
        res.left_inv.at(r, t) = -res.left_inv.at(r, t);
    }
  res.d = std::move(m);
  return res;
}

}  // namespace nsurf
