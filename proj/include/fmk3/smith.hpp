#pragma once

#include <cstddef>

#include "fmk3/matrix.hpp"

namespace fmk3 {

// left * input * right == diag, with left/right unimodular, diag entries
// nonnegative and satisfying d1 | d2 | ... (trailing zeros allowed).
struct SmithDecomposition {
  IntMatrix left;
  IntMatrix diag;
  IntMatrix right;
};

namespace detail {

// Clears row t and column t of a (entries beyond index t) by unimodular row
// and column operations, mirrored into u and v. Assumes a(t,t) != 0.
inline void clear_cross(IntMatrix& a, IntMatrix& u, IntMatrix& v,
                        std::size_t t) {
  const std::size_t rows = a.rows(), cols = a.cols();
  while (true) {
    bool dirty = false;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (a(i, t) == 0) continue;
      Int q = floor_div(a(i, t), a(t, t));
      if (q != 0) {
        a.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
      }
      if (a(i, t) != 0) {  // remainder: swap it into the pivot slot
        a.swap_rows(t, i);
        u.swap_rows(t, i);
        dirty = true;
      }
    }
    if (dirty) continue;
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (a(t, j) == 0) continue;
      Int q = floor_div(a(t, j), a(t, t));
      if (q != 0) {
        a.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
      }
      if (a(t, j) != 0) {
        a.swap_cols(t, j);
        v.swap_cols(t, j);
        dirty = true;
      }
    }
    if (!dirty) return;
  }
}

}  // namespace detail

// Deterministic Smith normal form: pivot choice is the smallest nonzero
// |entry| of the working submatrix, ties broken by (row, col).
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t k = rows < cols ? rows : cols;

  std::size_t t = 0;
  for (; t < k; ++t) {
    // locate pivot
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a(i, j) == 0) continue;
        if (pi == rows ||
            abs_int(a(i, j)) < abs_int(a(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    if (pi == rows) break;  // remaining block is zero
    a.swap_rows(t, pi);
    u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    v.swap_cols(t, pj);
    detail::clear_cross(a, u, v, t);
  }

  // enforce the divisibility chain
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < t; ++i)
      for (std::size_t j = i + 1; j < t; ++j) {
        if (a(j, j) % a(i, i) == 0) continue;
        a.add_col_multiple(i, j, Int(1));
        v.add_col_multiple(i, j, Int(1));
        detail::clear_cross(a, u, v, i);
        changed = true;
      }
  }

  for (std::size_t i = 0; i < k; ++i) {
    if (a(i, i) < 0) {
      a.scale_row(i, Int(-1));
      u.scale_row(i, Int(-1));
    }
  }
  return SmithDecomposition{std::move(u), std::move(a), std::move(v)};
}

}  // namespace fmk3
