// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "lqo/error.hpp"
#include "lqo/resolvent.hpp"
#include "lqo/system.hpp"

namespace lqo
{

/// Which argument of G2(s1, s2) a partial derivative is taken with respect to.
enum class Argument
{
  S1,
  S2
};

/// G1(s) = C (sE - A)^{-1} B, via m shifted solves.
template <Realization S>
Eigen::MatrixXcd eval_G1(const S &sys, Complex s)
{
  const auto solver = shifted_solver(sys, s);
  const Eigen::MatrixXcd X = solver.solve(sys.B().template cast<Complex>());
  return sys.C().template cast<Complex>() * X;
}

/// d/ds G1(s) = -C (sE - A)^{-1} E (sE - A)^{-1} B.
template <Realization S>
Eigen::MatrixXcd eval_dG1(const S &sys, Complex s)
{
  const auto solver = shifted_solver(sys, s);
  const Eigen::MatrixXcd X = solver.solve(sys.B().template cast<Complex>());
  const Eigen::MatrixXcd EX = sys.E() * X;
  return -(sys.C().template cast<Complex>() * solver.solve(EX));
}

/// G2(s1, s2)(u ⊗ v) as a p-vector: entry k is x1^T M_k x2 with x1 = (s1 E - A)^{-1} B u and
/// x2 = (s2 E - A)^{-1} B v.
template <Realization S>
Eigen::VectorXcd eval_G2_contracted(const S &sys, Complex s1, Complex s2,
                                    const Eigen::VectorXcd &u, const Eigen::VectorXcd &v)
{
  if (u.size() != sys.inputs() || v.size() != sys.inputs())
  {
    fail(ErrorKind::DimensionMismatch, "tangential vectors must have m entries");
  }
  const Eigen::VectorXcd x1 = shifted_solver(sys, s1).solve(sys.B() * u);
  const Eigen::VectorXcd x2 = shifted_solver(sys, s2).solve(sys.B() * v);
  return quadratic_contract(sys, x1, x2);
}

/// Partial derivative of G2(s1, s2)(u ⊗ v) with respect to s1 or s2.
template <Realization S>
Eigen::VectorXcd eval_dG2_contracted(const S &sys, Argument which, Complex s1, Complex s2,
                                     const Eigen::VectorXcd &u, const Eigen::VectorXcd &v)
{
  if (u.size() != sys.inputs() || v.size() != sys.inputs())
  {
    fail(ErrorKind::DimensionMismatch, "tangential vectors must have m entries");
  }
  const auto solver1 = shifted_solver(sys, s1);
  const auto solver2 = shifted_solver(sys, s2);
  Eigen::VectorXcd x1 = solver1.solve(sys.B() * u);
  Eigen::VectorXcd x2 = solver2.solve(sys.B() * v);
  if (which == Argument::S1)
  {
    const Eigen::VectorXcd Ex1 = sys.E() * x1;
    x1 = -solver1.solve(Ex1);
  }
  else
  {
    const Eigen::VectorXcd Ex2 = sys.E() * x2;
    x2 = -solver2.solve(Ex2);
  }
  return quadratic_contract(sys, x1, x2);
}

/// Explicit p x m^2 matrix M((s1 E - A)^{-1} B ⊗ (s2 E - A)^{-1} B). Column i*m + j holds the
/// response to e_i ⊗ e_j. Only allowed for order <= kSmallDenseCap.
template <Realization S>
Eigen::MatrixXcd eval_G2_full(const S &sys, Complex s1, Complex s2, Index cap = kSmallDenseCap)
{
  if (sys.order() > cap)
  {
    fail(ErrorKind::SizeCapExceeded, "eval_G2_full is limited to order " + std::to_string(cap));
  }
  const Index m = sys.inputs();
  const Eigen::MatrixXcd X1 = shifted_solver(sys, s1).solve(sys.B().template cast<Complex>());
  const Eigen::MatrixXcd X2 = shifted_solver(sys, s2).solve(sys.B().template cast<Complex>());
  Eigen::MatrixXcd G(sys.outputs(), m * m);
  for (Index k = 0; k < sys.outputs(); ++k)
  {
    const Eigen::MatrixXcd block = X1.transpose() * (sys.M(k) * X2);
    for (Index i = 0; i < m; ++i)
    {
      for (Index j = 0; j < m; ++j)
      {
        G(k, i * m + j) = block(i, j);
      }
    }
  }
  return G;
}

}  // namespace lqo
