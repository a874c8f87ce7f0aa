// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/system.hpp"

#include <string>

#include "lqo/error.hpp"

namespace lqo
{

namespace
{

std::string dims(Index r, Index c)
{
  return std::to_string(r) + "x" + std::to_string(c);
}

template <typename MatE, typename MatA, typename MatM>
void check_dimensions(const MatE &E, const MatA &A, const Eigen::MatrixXd &B,
                      const Eigen::MatrixXd &C, const std::vector<MatM> &Ms)
{
  const Index n = A.rows();
  if (n < 1 || A.cols() != n)
  {
    fail(ErrorKind::DimensionMismatch, "A must be square and nonempty, got " + dims(A.rows(), A.cols()));
  }
  if (E.rows() != n || E.cols() != n)
  {
    fail(ErrorKind::DimensionMismatch, "E is " + dims(E.rows(), E.cols()) + ", expected " + dims(n, n));
  }
  if (B.rows() != n || B.cols() < 1)
  {
    fail(ErrorKind::DimensionMismatch, "B is " + dims(B.rows(), B.cols()) + ", expected n=" + std::to_string(n) + " rows");
  }
  if (C.cols() != n || C.rows() < 1)
  {
    fail(ErrorKind::DimensionMismatch, "C is " + dims(C.rows(), C.cols()) + ", expected n=" + std::to_string(n) + " columns");
  }
  if (static_cast<Index>(Ms.size()) != C.rows())
  {
    fail(ErrorKind::DimensionMismatch, "got " + std::to_string(Ms.size()) + " quadratic maps for p=" + std::to_string(C.rows()) + " outputs");
  }
  for (std::size_t k = 0; k < Ms.size(); ++k)
  {
    if (Ms[k].rows() != n || Ms[k].cols() != n)
    {
      fail(ErrorKind::DimensionMismatch, "M_" + std::to_string(k + 1) + " is " + dims(Ms[k].rows(), Ms[k].cols()));
    }
  }
}

bool is_identity(const SparseMatrix &E)
{
  for (Index j = 0; j < E.outerSize(); ++j)
  {
    int diag = 0;
    for (SparseMatrix::InnerIterator it(E, j); it; ++it)
    {
      if (it.row() == it.col())
      {
        if (it.value() != 1.0)
        {
          return false;
        }
        ++diag;
      }
      else if (it.value() != 0.0)
      {
        return false;
      }
    }
    if (diag != 1)
    {
      return false;
    }
  }
  return true;
}

}  // namespace

LqoSystem make_lqo_system(SparseMatrix E, SparseMatrix A, Eigen::MatrixXd B, Eigen::MatrixXd C,
                          std::vector<SparseMatrix> Ms)
{
  check_dimensions(E, A, B, C, Ms);
  LqoSystem sys;
  E.makeCompressed();
  A.makeCompressed();
  for (auto &M : Ms)
  {
    SparseMatrix Mt = M.transpose();
    M = 0.5 * (M + Mt);
    M.prune(0.0);
    M.makeCompressed();
  }
  sys.identity_E_ = is_identity(E);
  auto lu = std::make_shared<Eigen::SparseLU<SparseMatrix>>();
  lu->compute(E);
  if (lu->info() != Eigen::Success)
  {
    fail(ErrorKind::SingularE, "sparse LU of E failed: " + lu->lastErrorMessage());
  }
  sys.E_lu_ = std::move(lu);
  sys.E_ = std::move(E);
  sys.A_ = std::move(A);
  sys.B_ = std::move(B);
  sys.C_ = std::move(C);
  sys.Ms_ = std::move(Ms);
  return sys;
}

LqoSystem make_lqo_system(const Eigen::MatrixXd &E, const Eigen::MatrixXd &A,
                          const Eigen::MatrixXd &B, const Eigen::MatrixXd &C,
                          const std::vector<Eigen::MatrixXd> &Ms)
{
  std::vector<SparseMatrix> sparse_ms;
  sparse_ms.reserve(Ms.size());
  for (const auto &M : Ms)
  {
    sparse_ms.push_back(M.sparseView(0.0, 0.0));
  }
  return make_lqo_system(E.sparseView(0.0, 0.0), A.sparseView(0.0, 0.0), B, C, std::move(sparse_ms));
}

Eigen::MatrixXd LqoSystem::solve_E(const Eigen::MatrixXd &X) const
{
  if (identity_E_)
  {
    return X;
  }
  return E_lu_->solve(X);
}

ReducedLqoSystem make_reduced_system(Eigen::MatrixXd Er, Eigen::MatrixXd Ar, Eigen::MatrixXd Br,
                                     Eigen::MatrixXd Cr, std::vector<Eigen::MatrixXd> Mrs)
{
  check_dimensions(Er, Ar, Br, Cr, Mrs);
  for (auto &M : Mrs)
  {
    M = 0.5 * (M + M.transpose()).eval();
  }
  ReducedLqoSystem red;
  red.E_ = std::move(Er);
  red.A_ = std::move(Ar);
  red.B_ = std::move(Br);
  red.C_ = std::move(Cr);
  red.Ms_ = std::move(Mrs);
  return red;
}

ReducedLqoSystem to_dense(const LqoSystem &sys)
{
  std::vector<Eigen::MatrixXd> Ms;
  for (const auto &M : sys.Ms())
  {
    Ms.emplace_back(M);
  }
  return make_reduced_system(Eigen::MatrixXd(sys.E()), Eigen::MatrixXd(sys.A()), sys.B(), sys.C(),
                             std::move(Ms));
}

LqoSystem to_sparse(const ReducedLqoSystem &sys)
{
  return make_lqo_system(sys.E(), sys.A(), sys.B(), sys.C(), sys.Ms());
}

}  // namespace lqo
