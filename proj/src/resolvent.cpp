// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/resolvent.hpp"

#include <sstream>

#include "lqo/error.hpp"

namespace lqo
{

namespace
{

std::string shift_text(Complex s)
{
  std::ostringstream os;
  os.precision(17);
  os << s.real() << (s.imag() < 0 ? "-" : "+") << std::abs(s.imag()) << "i";
  return os.str();
}

// One step of iterative refinement, then a per-column residual check.
template <typename Op, typename Solve>
Eigen::MatrixXcd refined_solve(const Op &K, const Solve &solve, const Eigen::MatrixXcd &rhs,
                               Complex s)
{
  Eigen::MatrixXcd X = solve(rhs);
  Eigen::MatrixXcd R = rhs - K * X;
  X += solve(R);
  R = rhs - K * X;
  for (Index j = 0; j < rhs.cols(); ++j)
  {
    const double res = R.col(j).norm();
    const double scale = rhs.col(j).norm();
    if (!std::isfinite(res) || !X.col(j).allFinite() || res > kShiftResidualTol * scale)
    {
      fail(ErrorKind::SingularShift, "sE - A is numerically singular at s = " + shift_text(s));
    }
  }
  return X;
}

}  // namespace

SparseShiftedSolver::SparseShiftedSolver(const SparseMatrix &E, const SparseMatrix &A, Complex s)
  : shift_(s), lu_(std::make_unique<Eigen::SparseLU<ComplexSparseMatrix>>())
{
  K_ = s * E.cast<Complex>() - A.cast<Complex>();
  K_.makeCompressed();
  lu_->compute(K_);
  if (lu_->info() != Eigen::Success)
  {
    fail(ErrorKind::SingularShift, "sparse LU of sE - A failed at s = " + shift_text(s) + " (" +
                                       lu_->lastErrorMessage() + ")");
  }
}

Eigen::MatrixXcd SparseShiftedSolver::solve(const Eigen::MatrixXcd &rhs) const
{
  return refined_solve(
      K_, [this](const Eigen::MatrixXcd &b) -> Eigen::MatrixXcd { return lu_->solve(b); }, rhs,
      shift_);
}

Eigen::MatrixXcd SparseShiftedSolver::solve_transpose(const Eigen::MatrixXcd &rhs) const
{
  const ComplexSparseMatrix Kt = K_.transpose();
  return refined_solve(
      Kt,
      [this](const Eigen::MatrixXcd &b) -> Eigen::MatrixXcd { return lu_->transpose().solve(b); },
      rhs, shift_);
}

DenseShiftedSolver::DenseShiftedSolver(const Eigen::MatrixXd &E, const Eigen::MatrixXd &A,
                                       Complex s)
  : shift_(s), K_(s * E.cast<Complex>() - A.cast<Complex>()), lu_(K_)
{
}

Eigen::MatrixXcd DenseShiftedSolver::solve(const Eigen::MatrixXcd &rhs) const
{
  return refined_solve(
      K_, [this](const Eigen::MatrixXcd &b) -> Eigen::MatrixXcd { return lu_.solve(b); }, rhs,
      shift_);
}

Eigen::MatrixXcd DenseShiftedSolver::solve_transpose(const Eigen::MatrixXcd &rhs) const
{
  const Eigen::MatrixXcd Kt = K_.transpose();
  return refined_solve(
      Kt, [this](const Eigen::MatrixXcd &b) -> Eigen::MatrixXcd { return lu_.transpose().solve(b); },
      rhs, shift_);
}

}  // namespace lqo
