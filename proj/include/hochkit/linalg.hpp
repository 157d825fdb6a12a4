#pragma once

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

#include "hochkit/scalar.hpp"

namespace hochkit {

using Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Mat<S> zero_mat(Index r, Index c) {
  Mat<S> m(r, c);
  m.setZero();
  return m;
}

template <class S>
Mat<S> identity_mat(const Field<S>& k, Index n) {
  Mat<S> m = zero_mat<S>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = k.of(1);
  return m;
}

template <class S>
bool is_zero_mat(const Mat<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class S>
Index nnz(const Mat<S>& m) {
  Index n = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) ++n;
  return n;
}

// Matrix product that skips zero entries; the differentials in this engine
// are very sparse and Eigen's dense GEMM would grind through the zeros.
template <class S>
Mat<S> mul_sparse(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r = zero_mat<S>(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j)
    for (Index k = 0; k < b.rows(); ++k) {
      if (is_zero(b(k, j))) continue;
      const S& bv = b(k, j);
      for (Index i = 0; i < a.rows(); ++i)
        if (!is_zero(a(i, k))) r(i, j) += a(i, k) * bv;
    }
  return r;
}

template <class S>
Vec<S> mul_sparse_vec(const Mat<S>& a, const Vec<S>& x) {
  Vec<S> r = Vec<S>::Constant(a.rows(), S(0));
  for (Index k = 0; k < x.size(); ++k) {
    if (is_zero(x(k))) continue;
    for (Index i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, k))) r(i) += a(i, k) * x(k);
  }
  return r;
}

// Reduced row echelon form (in place), exact over the scalar field.
// Returns the pivot columns in order.
template <class S>
std::vector<Index> rref(Mat<S>& m) {
  std::vector<Index> pivots;
  Index row = 0;
  const Index rows = m.rows(), cols = m.cols();
  for (Index col = 0; col < cols && row < rows; ++col) {
    Index pr = -1;
    for (Index i = row; i < rows; ++i)
      if (!is_zero(m(i, col))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != row) m.row(pr).swap(m.row(row));
    const S pinv = inv(m(row, col));
    std::vector<Index> support;
    for (Index j = col; j < cols; ++j) {
      if (is_zero(m(row, j))) continue;
      m(row, j) = m(row, j) * pinv;
      support.push_back(j);
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const S f = m(i, col);
      for (Index j : support) m(i, j) -= f * m(row, j);
      m(i, col) = S(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
Index rank(Mat<S> m) {
  return static_cast<Index>(rref(m).size());
}

template <class S>
struct RankKernel {
  Index rank = 0;
  Mat<S> kernel;  // columns form a basis of ker
};

template <class S>
RankKernel<S> rank_kernel(Mat<S> m) {
  const Index cols = m.cols();
  std::vector<Index> pivots = rref(m);
  std::vector<char> is_pivot(cols, 0);
  for (Index c : pivots) is_pivot[c] = 1;
  RankKernel<S> out;
  out.rank = static_cast<Index>(pivots.size());
  out.kernel = zero_mat<S>(cols, cols - out.rank);
  Index kcol = 0;
  for (Index j = 0; j < cols; ++j) {
    if (is_pivot[j]) continue;
    out.kernel(j, kcol) = S(1);
    for (Index r = 0; r < out.rank; ++r)
      if (!is_zero(m(r, j))) out.kernel(pivots[r], kcol) = -m(r, j);
    ++kcol;
  }
  return out;
}

template <class S>
Mat<S> kernel_basis(const Mat<S>& m) {
  return rank_kernel(m).kernel;
}

// Solves a X = b columnwise; nullopt if any column is inconsistent.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> aug = zero_mat<S>(a.rows(), a.cols() + b.cols());
  aug.leftCols(a.cols()) = a;
  aug.rightCols(b.cols()) = b;
  std::vector<Index> pivots = rref(aug);
  for (Index c : pivots)
    if (c >= a.cols()) return std::nullopt;
  Mat<S> x = zero_mat<S>(a.cols(), b.cols());
  for (Index r = 0; r < static_cast<Index>(pivots.size()); ++r)
    for (Index j = 0; j < b.cols(); ++j) x(pivots[r], j) = aug(r, a.cols() + j);
  return x;
}

template <class S>
std::optional<Vec<S>> solve_vec(const Mat<S>& a, const Vec<S>& b) {
  auto x = solve<S>(a, Mat<S>(b));
  if (!x) return std::nullopt;
  return Vec<S>(x->col(0));
}

// Picks columns of `cand` that complete span(base) to span(base)+span(cand);
// returns their indices within `cand`.
template <class S>
std::vector<Index> complement_columns(const Mat<S>& base, const Mat<S>& cand) {
  Mat<S> aug = zero_mat<S>(base.rows(), base.cols() + cand.cols());
  aug.leftCols(base.cols()) = base;
  aug.rightCols(cand.cols()) = cand;
  std::vector<Index> pivots = rref(aug);
  std::vector<Index> picked;
  for (Index c : pivots)
    if (c >= base.cols()) picked.push_back(c - base.cols());
  return picked;
}

// Coordinates of v in the chosen representatives modulo span(base):
// solves [base reps] x = v and returns the reps part.
template <class S>
std::optional<Vec<S>> class_coords(const Mat<S>& base, const Mat<S>& reps, const Vec<S>& v) {
  Mat<S> aug = zero_mat<S>(base.rows(), base.cols() + reps.cols());
  aug.leftCols(base.cols()) = base;
  aug.rightCols(reps.cols()) = reps;
  auto x = solve_vec<S>(aug, v);
  if (!x) return std::nullopt;
  return Vec<S>(x->tail(reps.cols()));
}

}  // namespace hochkit
