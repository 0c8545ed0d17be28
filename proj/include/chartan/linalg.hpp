#pragma once

// Exact dense linear algebra on Eigen matrices over exact scalars
// (Rational, GaussianRational). Eigen's decompositions pick pivots by
// magnitude and compare against epsilon, which is meaningless here, so the
// elimination is written out with exact zero tests.

#include "chartan/scalar.hpp"

#include <Eigen/Core>

#include <stdexcept>
#include <vector>

namespace chartan {

template <class S>
using MatrixX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VectorX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;
using IntegerMatrix = MatrixX<Integer>;
using IntegerVector = VectorX<Integer>;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row.
template <class Derived>
std::vector<Eigen::Index> reduce_row_echelon(Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!ScalarTraits<S>::is_zero(m(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) = m(row, c) * inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarTraits<S>::is_zero(m(r, col))) continue;
      const S factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  MatrixX<typename Derived::Scalar> work = m;
  return static_cast<Eigen::Index>(reduce_row_echelon(work).size());
}

/// Basis of the right kernel {x : m x = 0}, one vector per column.
template <class Derived>
MatrixX<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using S = typename Derived::Scalar;
  MatrixX<S> work = m;
  auto pivots = reduce_row_echelon(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  MatrixX<S> basis(m.cols(), m.cols() - static_cast<Eigen::Index>(pivots.size()));
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = S(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -work(r, free);
    ++k;
  }
  return basis;
}

/// Solves a x = b for square invertible a; throws when a is singular.
template <class DA, class DB>
MatrixX<typename DA::Scalar> solve_exact(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename DA::Scalar;
  if (a.rows() != a.cols() || a.rows() != b.rows()) throw std::invalid_argument("solve_exact: shape mismatch");
  MatrixX<S> work(a.rows(), a.cols() + b.cols());
  work << a, b;
  auto pivots = reduce_row_echelon(work);
  if (static_cast<Eigen::Index>(pivots.size()) < a.rows() || pivots.back() >= a.cols())
    throw std::domain_error("solve_exact: singular system");
  return work.rightCols(b.cols());
}

}  // namespace chartan
