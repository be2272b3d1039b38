#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bookcover/bigint.hpp"
#include "bookcover/errors.hpp"

namespace bookcover {

// Dense integer matrix, row major, arbitrary-precision entries.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(std::vector<std::vector<Int>> rows_in) {
    IntMatrix m(rows_in.size(), rows_in.empty() ? 0 : rows_in[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (rows_in[i].size() != m.cols)
        throw InternalError("from_rows: ragged rows");
      for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = std::move(rows_in[i][j]);
    }
    return m;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

inline IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw InternalError("multiply: shape mismatch");
  IntMatrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(IntMatrix m) {
  if (m.rows != m.cols) throw InternalError("determinant: not square");
  const std::size_t n = m.rows;
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = v / prev;  // exact by Bareiss
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

struct SmithResult {
  std::vector<Int> diagonal;  // length min(rows, cols); nonneg; d_i | d_{i+1} among nonzero
  std::size_t rank = 0;
  std::optional<IntMatrix> left;   // U with U * M * V = diag
  std::optional<IntMatrix> right;  // V
};

// Smith normal form by unimodular row/column operations. Pivot is the
// minimal nonzero absolute value of the remaining submatrix, ties broken by
// position; this keeps intermediate entries from blowing up, which is the
// main performance hazard of exact SNF.
inline SmithResult smith_normal_form(IntMatrix m, bool want_witnesses = false) {
  SmithResult out;
  const std::size_t nr = m.rows, nc = m.cols;
  IntMatrix u, v;
  if (want_witnesses) {
    u = IntMatrix::identity(nr);
    v = IntMatrix::identity(nc);
  }

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < nc; ++k) std::swap(m.at(i, k), m.at(j, k));
    if (want_witnesses)
      for (std::size_t k = 0; k < nr; ++k) std::swap(u.at(i, k), u.at(j, k));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < nr; ++k) std::swap(m.at(k, i), m.at(k, j));
    if (want_witnesses)
      for (std::size_t k = 0; k < nc; ++k) std::swap(v.at(k, i), v.at(k, j));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < nc; ++k) m.at(dst, k) += c * m.at(src, k);
    if (want_witnesses)
      for (std::size_t k = 0; k < nr; ++k) u.at(dst, k) += c * u.at(src, k);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < nr; ++k) m.at(k, dst) += c * m.at(k, src);
    if (want_witnesses)
      for (std::size_t k = 0; k < nc; ++k) v.at(k, dst) += c * v.at(k, src);
  };
  auto negate_row = [&](std::size_t i) {
    for (std::size_t k = 0; k < nc; ++k) m.at(i, k) = -m.at(i, k);
    if (want_witnesses)
      for (std::size_t k = 0; k < nr; ++k) u.at(i, k) = -u.at(i, k);
  };

  const std::size_t steps = std::min(nr, nc);
  std::size_t t = 0;
  for (; t < steps; ++t) {
    // Locate pivot: minimal nonzero |entry| in the trailing submatrix.
    std::size_t pi = nr, pj = nc;
    Int best;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        const Int& e = m.at(i, j);
        if (e == 0) continue;
        Int mag = big_abs(e);
        if (pi == nr || mag < best) {
          best = std::move(mag);
          pi = i;
          pj = j;
        }
      }
    if (pi == nr) break;  // trailing submatrix is zero
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (;;) {
      bool dirty = false;
      // Clear column t with division by the pivot; a nonzero remainder
      // becomes the new, strictly smaller pivot.
      for (std::size_t i = t + 1; i < nr; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / m.at(t, t);
        add_row(i, t, -q);
        if (m.at(i, t) != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      if (dirty) continue;
      for (std::size_t j = t + 1; j < nc; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / m.at(t, t);
        add_col(j, t, -q);
        if (m.at(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;

      // Row and column are clear; enforce that the pivot divides the rest.
      bool fixed = false;
      for (std::size_t i = t + 1; i < nr && !fixed; ++i)
        for (std::size_t j = t + 1; j < nc && !fixed; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            add_row(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (m.at(t, t) < 0) negate_row(t);
  }

  out.diagonal.resize(steps);
  for (std::size_t i = 0; i < steps; ++i) out.diagonal[i] = m.at(i, i);
  out.rank = t;
  if (want_witnesses) {
    out.left = std::move(u);
    out.right = std::move(v);
  }
  return out;
}

// Invariant factors > 1 (the cyclic decomposition data of the cokernel).
inline std::vector<Int> invariant_factors(const SmithResult& snf) {
  std::vector<Int> out;
  for (const Int& d : snf.diagonal)
    if (d > 1) out.push_back(d);
  return out;
}

inline Int torsion_order(const SmithResult& snf) {
  Int t = 1;
  for (const Int& d : snf.diagonal)
    if (d != 0) t *= d;
  return t;
}

inline Int torsion_order(const IntMatrix& m) {
  return torsion_order(smith_normal_form(m));
}

// Cokernel of the row lattice: Z^cols / rowspace(M).
struct HomologyResult {
  std::vector<Int> invariant_factors;
  Int torsion_order = 1;
  std::size_t betti = 0;
  std::pair<std::size_t, std::size_t> matrix_shape{0, 0};
};

inline HomologyResult cokernel_homology(const IntMatrix& m) {
  SmithResult snf = smith_normal_form(m);
  HomologyResult h;
  h.invariant_factors = invariant_factors(snf);
  h.torsion_order = torsion_order(snf);
  h.betti = m.cols - snf.rank;
  h.matrix_shape = {m.rows, m.cols};
  return h;
}

namespace detail {
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}
}  // namespace detail

// Torsion via gcd of k x k minors: with d_k = gcd of all k x k minors, the
// product of d_k / d_{k-1} over k <= rank telescopes to d_rank. Exponential;
// a small-instance cross-check for the SNF path, never the production route.
inline Int gcd_of_minors_torsion(const IntMatrix& m, std::uint32_t cap_dim = 8) {
  if (m.rows > cap_dim || m.cols > cap_dim)
    throw CapExceeded("gcd-of-minors: matrix exceeds cap dimension " +
                      std::to_string(cap_dim));
  Int d_rank = 1;
  for (std::size_t k = 1; k <= std::min(m.rows, m.cols); ++k) {
    Int g = 0;
    std::vector<std::size_t> ri(k), ci(k);
    for (std::size_t i = 0; i < k; ++i) ri[i] = i;
    do {
      for (std::size_t i = 0; i < k; ++i) ci[i] = i;
      do {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], ci[j]);
        g = big_gcd(g, determinant(std::move(sub)));
        if (g == 1) break;
      } while (detail::next_combination(ci, m.cols));
      if (g == 1) break;
    } while (detail::next_combination(ri, m.rows));
    if (g == 0) break;  // rank reached at k-1
    d_rank = g;
  }
  return d_rank;
}

// Smallest integer B with |det(M)| <= B: ceiling of the product of the
// Euclidean column norms, computed as ceil(sqrt(prod of squared norms)).
inline Int hadamard_determinant_bound(const IntMatrix& m) {
  if (m.rows != m.cols) throw InternalError("hadamard bound: not square");
  Int prod = 1;
  for (std::size_t j = 0; j < m.cols; ++j) {
    Int norm_sq = 0;
    for (std::size_t i = 0; i < m.rows; ++i) norm_sq += m.at(i, j) * m.at(i, j);
    prod *= norm_sq;
  }
  Int s = isqrt_floor(prod);
  if (s * s < prod) ++s;
  return s;
}

}  // namespace bookcover
