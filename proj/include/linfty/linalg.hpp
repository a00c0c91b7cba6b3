#ifndef LINFTY_LINALG_HPP
#define LINFTY_LINALG_HPP

#include <optional>
#include <vector>

#include "linfty/scalar.hpp"

namespace linfty {

using Index = Eigen::Index;

inline Mat zero_mat(Index r, Index c) {
  Mat m(r, c);
  m.setConstant(Scalar(0));
  return m;
}

inline Mat identity_mat(Index n) {
  Mat m = zero_mat(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

inline Mat hcat(const Mat& a, const Mat& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  Mat m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

/// Rank by fraction-free (Bareiss) elimination.  Pivots are the first nonzero
/// entry in column order, so the result is deterministic.
inline Index rank_ff(Mat a) {
  const Index rows = a.rows(), cols = a.cols();
  Index rank = 0;
  Scalar prev(1);
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index piv = -1;
    for (Index r = rank; r < rows; ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank) a.row(rank).swap(a.row(piv));
    const Scalar p = a(rank, col);
    for (Index r = rank + 1; r < rows; ++r) {
      for (Index c = col + 1; c < cols; ++c)
        a(r, c) = (a(r, c) * p - a(r, col) * a(rank, c)) / prev;
      a(r, col) = Scalar(0);
    }
    prev = p;
    ++rank;
  }
  return rank;
}

/// Reduced row echelon form with exact division.
struct Echelon {
  Mat m;
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(pivot_cols.size()); }
};

inline Echelon rref(Mat a) {
  Echelon e;
  const Index rows = a.rows(), cols = a.cols();
  Index row = 0;
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index piv = -1;
    for (Index r = row; r < rows; ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row) a.row(row).swap(a.row(piv));
    const Scalar p = a(row, col);
    for (Index c = col; c < cols; ++c) a(row, c) /= p;
    for (Index r = 0; r < rows; ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Scalar f = a(r, col);
      for (Index c = col; c < cols; ++c) a(r, c) -= f * a(row, c);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.m = std::move(a);
  return e;
}

/// Kernel basis, one column per free variable of the RREF.
inline Mat nullspace(const Mat& a) {
  Echelon e = rref(a);
  const Index cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Index p : e.pivot_cols) is_pivot[p] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat k = zero_mat(cols, static_cast<Index>(free_cols.size()));
  for (Index j = 0; j < k.cols(); ++j) {
    const Index fc = free_cols[j];
    k(fc, j) = Scalar(1);
    for (Index i = 0; i < e.rank(); ++i) k(e.pivot_cols[i], j) = -e.m(i, fc);
  }
  return k;
}

/// Exact solution of a x = b with all free variables set to zero (the
/// canonical representative used for deterministic lifts); nullopt when the
/// system is inconsistent.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  Echelon e = rref(hcat(a, b));
  Vec x = zero_mat(a.cols(), 1);
  for (Index i = 0; i < e.rank(); ++i) {
    const Index pc = e.pivot_cols[i];
    if (pc == a.cols()) return std::nullopt;
    x(pc) = e.m(i, a.cols());
  }
  return x;
}

inline bool in_span(const Mat& a, const Vec& v) { return solve(a, v).has_value(); }

/// Columns of `candidates` that extend the column span of `base` to an
/// independent family; these are representatives of span(candidates) modulo
/// span(base) when base is contained in the candidate span.
inline Mat extend_basis(const Mat& base, const Mat& candidates) {
  Mat acc = base;
  Mat reps(candidates.rows(), 0);
  Index r = rank_ff(acc);
  for (Index j = 0; j < candidates.cols(); ++j) {
    Mat trial = hcat(acc, candidates.col(j));
    const Index tr = rank_ff(trial);
    if (tr > r) {
      acc = std::move(trial);
      reps = hcat(reps, candidates.col(j));
      r = tr;
    }
  }
  return reps;
}

/// Dimension and representatives of ker(d_out) / im(d_in).  The caller is
/// responsible for d_out * d_in = 0.
struct Quotient {
  Index dim = 0;
  Mat reps;
};

inline Quotient homology_quotient(const Mat& d_out, const Mat& d_in) {
  Mat cycles = nullspace(d_out);
  Quotient q;
  q.reps = extend_basis(d_in, cycles);
  q.dim = q.reps.cols();
  return q;
}

}  // namespace linfty

#endif
