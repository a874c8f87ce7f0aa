// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "lqo/system.hpp"

namespace lqo
{

/// Relative residual above which a shifted solve is declared singular (after refinement).
inline constexpr double kShiftResidualTol = 1e-8;

/// Factorization of s E - A for a sparse full-order system. Solves with the matrix and with
/// its (non-conjugated) transpose reuse the same LU factors.
class SparseShiftedSolver
{
public:
  SparseShiftedSolver(const SparseMatrix &E, const SparseMatrix &A, Complex s);

  Complex shift() const { return shift_; }

  /// (sE - A)^{-1} rhs
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd &rhs) const;
  /// (sE - A)^{-T} rhs
  Eigen::MatrixXcd solve_transpose(const Eigen::MatrixXcd &rhs) const;

private:
  Complex shift_;
  ComplexSparseMatrix K_;
  std::unique_ptr<Eigen::SparseLU<ComplexSparseMatrix>> lu_;
};

class DenseShiftedSolver
{
public:
  DenseShiftedSolver(const Eigen::MatrixXd &E, const Eigen::MatrixXd &A, Complex s);

  Complex shift() const { return shift_; }
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd &rhs) const;
  Eigen::MatrixXcd solve_transpose(const Eigen::MatrixXcd &rhs) const;

private:
  Complex shift_;
  Eigen::MatrixXcd K_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

inline SparseShiftedSolver shifted_solver(const LqoSystem &sys, Complex s)
{
  return SparseShiftedSolver(sys.E(), sys.A(), s);
}

inline DenseShiftedSolver shifted_solver(const ReducedLqoSystem &sys, Complex s)
{
  return DenseShiftedSolver(sys.E(), sys.A(), s);
}

}  // namespace lqo
