#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "netfuncap/errors.hpp"

namespace netfuncap {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct PackingSolution {
  Scalar value{0};
  Vector<Scalar> weights;
  int pivots = 0;
};

/// Solves  max c.u  s.t.  load * u <= 1,  u >= 0  with a dense tableau simplex
/// and Bland's rule. `load` is rows = resources (edges), cols = packed objects
/// (trees); entries must be nonnegative and every column nonzero, so the slack
/// basis is feasible and the optimum is bounded.
template <typename Scalar>
PackingSolution<Scalar> solve_packing_lp(const Matrix<Scalar>& load, const Vector<Scalar>& reward,
                                         Scalar tol = Scalar(1e-9)) {
  const Eigen::Index rows = load.rows();
  const Eigen::Index cols = load.cols();
  if (reward.size() != cols) throw Error(ErrorKind::InternalError, "reward size mismatch");
  for (Eigen::Index j = 0; j < cols; ++j) {
    if ((load.col(j).array() < Scalar(0)).any() || load.col(j).isZero()) {
      throw Error(ErrorKind::InternalError, "packing column must be nonnegative and nonzero");
    }
  }

  // Columns: structural u_0..u_{cols-1}, slacks, then the right-hand side.
  const Eigen::Index width = cols + rows + 1;
  Matrix<Scalar> tableau = Matrix<Scalar>::Zero(rows + 1, width);
  tableau.topLeftCorner(rows, cols) = load;
  tableau.block(0, cols, rows, rows).setIdentity();
  tableau.col(width - 1).head(rows).setOnes();
  tableau.row(rows).head(cols) = -reward.transpose();

  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index i = 0; i < rows; ++i) basis[i] = cols + i;

  PackingSolution<Scalar> solution;
  const int max_pivots = 100000;
  while (true) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < cols + rows; ++j) {
      if (tableau(rows, j) < -tol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    Eigen::Index leaving = -1;
    Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      const Scalar a = tableau(i, entering);
      if (a <= tol) continue;
      const Scalar ratio = tableau(i, width - 1) / a;
      if (ratio < best_ratio - tol || (ratio <= best_ratio + tol && leaving >= 0 && basis[i] < basis[leaving])) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (leaving < 0) throw Error(ErrorKind::InternalError, "packing LP unbounded");

    tableau.row(leaving) /= tableau(leaving, entering);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i != leaving && tableau(i, entering) != Scalar(0)) {
        tableau.row(i) -= tableau(i, entering) * tableau.row(leaving);
      }
    }
    basis[leaving] = entering;
    if (++solution.pivots > max_pivots) throw Error(ErrorKind::InternalError, "simplex pivot limit reached");
  }

  solution.weights = Vector<Scalar>::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (basis[i] < cols) solution.weights(basis[i]) = std::max(Scalar(0), tableau(i, width - 1));
  }
  solution.value = reward.dot(solution.weights);
  return solution;
}

}  // namespace netfuncap
