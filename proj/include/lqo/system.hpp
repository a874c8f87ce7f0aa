// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <concepts>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace lqo
{

using Index = Eigen::Index;
using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<double>;
using ComplexSparseMatrix = Eigen::SparseMatrix<Complex>;

/// Explicit resolvent and Kronecker assembly is only allowed below this order.
inline constexpr Index kSmallDenseCap = 200;
/// Dense eigendecompositions of full-order pencils are allowed up to this order.
inline constexpr Index kDenseEigCap = 5000;

/// Full-order linear quadratic-output system
///
///   E x' = A x + B u,   y = C x + [x^T M_k x]_{k=1..p},
///
/// with sparse E, A, M_k and dense B, C. Instances are immutable; E is factorized once on
/// construction so that E-solves can be shared by all copies.
class LqoSystem
{
public:
  Index order() const { return A_.rows(); }
  Index inputs() const { return B_.cols(); }
  Index outputs() const { return C_.rows(); }

  const SparseMatrix &E() const { return E_; }
  const SparseMatrix &A() const { return A_; }
  const Eigen::MatrixXd &B() const { return B_; }
  const Eigen::MatrixXd &C() const { return C_; }
  const SparseMatrix &M(Index k) const { return Ms_[static_cast<std::size_t>(k)]; }
  const std::vector<SparseMatrix> &Ms() const { return Ms_; }

  bool identity_E() const { return identity_E_; }

  /// Returns E^{-1} X.
  Eigen::MatrixXd solve_E(const Eigen::MatrixXd &X) const;

private:
  friend LqoSystem make_lqo_system(SparseMatrix, SparseMatrix, Eigen::MatrixXd,
                                   Eigen::MatrixXd, std::vector<SparseMatrix>);

  SparseMatrix E_, A_;
  Eigen::MatrixXd B_, C_;
  std::vector<SparseMatrix> Ms_;
  bool identity_E_ = false;
  std::shared_ptr<const Eigen::SparseLU<SparseMatrix>> E_lu_;
};

/// Validates dimensions, symmetrizes every M_k and factorizes E.
/// Throws DimensionMismatch or SingularE.
LqoSystem make_lqo_system(SparseMatrix E, SparseMatrix A, Eigen::MatrixXd B, Eigen::MatrixXd C,
                          std::vector<SparseMatrix> Ms);

LqoSystem make_lqo_system(const Eigen::MatrixXd &E, const Eigen::MatrixXd &A,
                          const Eigen::MatrixXd &B, const Eigen::MatrixXd &C,
                          const std::vector<Eigen::MatrixXd> &Ms);

/// Dense order-r LQO realization, usually the result of a Petrov-Galerkin projection.
class ReducedLqoSystem
{
public:
  Index order() const { return A_.rows(); }
  Index inputs() const { return B_.cols(); }
  Index outputs() const { return C_.rows(); }

  const Eigen::MatrixXd &E() const { return E_; }
  const Eigen::MatrixXd &A() const { return A_; }
  const Eigen::MatrixXd &B() const { return B_; }
  const Eigen::MatrixXd &C() const { return C_; }
  const Eigen::MatrixXd &M(Index k) const { return Ms_[static_cast<std::size_t>(k)]; }
  const std::vector<Eigen::MatrixXd> &Ms() const { return Ms_; }

private:
  friend ReducedLqoSystem make_reduced_system(Eigen::MatrixXd, Eigen::MatrixXd, Eigen::MatrixXd,
                                              Eigen::MatrixXd, std::vector<Eigen::MatrixXd>);

  Eigen::MatrixXd E_, A_, B_, C_;
  std::vector<Eigen::MatrixXd> Ms_;
};

/// Same contract as make_lqo_system for dense reduced matrices. Singularity of Er is not
/// checked here; it surfaces as SingularEr or SingularShift at first use.
ReducedLqoSystem make_reduced_system(Eigen::MatrixXd Er, Eigen::MatrixXd Ar, Eigen::MatrixXd Br,
                                     Eigen::MatrixXd Cr, std::vector<Eigen::MatrixXd> Mrs);

/// Copies a (small) full-order system into dense storage.
ReducedLqoSystem to_dense(const LqoSystem &sys);

/// Wraps dense matrices as a sparse full-order system.
LqoSystem to_sparse(const ReducedLqoSystem &sys);

/// Common read-only surface of LqoSystem and ReducedLqoSystem.
template <typename S>
concept Realization = requires(const S &s, Index k) {
  { s.order() } -> std::convertible_to<Index>;
  { s.inputs() } -> std::convertible_to<Index>;
  { s.outputs() } -> std::convertible_to<Index>;
  s.E();
  s.A();
  s.B();
  s.C();
  s.M(k);
};

/// [x1^T M_k x2]_k. Transposes only; no conjugation.
template <Realization S>
Eigen::VectorXcd quadratic_contract(const S &sys, const Eigen::VectorXcd &x1,
                                    const Eigen::VectorXcd &x2)
{
  Eigen::VectorXcd out(sys.outputs());
  for (Index k = 0; k < sys.outputs(); ++k)
  {
    const Eigen::VectorXcd Mx2 = sys.M(k) * x2;
    out(k) = x1.transpose() * Mx2;
  }
  return out;
}

/// Evaluates y = C x + [x^T M_k x]_k for a real state.
template <Realization S>
Eigen::VectorXd output(const S &sys, const Eigen::VectorXd &x)
{
  Eigen::VectorXd y = sys.C() * x;
  for (Index k = 0; k < sys.outputs(); ++k)
  {
    y(k) += x.dot(sys.M(k) * x);
  }
  return y;
}

}  // namespace lqo
