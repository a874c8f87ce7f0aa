// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lqo/system.hpp"

namespace lqo
{

/// Poles and residue directions of a realization with simple poles:
///
///   G1(s)      = sum_j c_j b_j^T / (s - lambda_j)
///   G2(s1, s2) = sum_{j,k} m_{j,k} (b_j ⊗ b_k)^T / ((s1 - lambda_j)(s2 - lambda_k))
///
/// Entries are ordered by (Re lambda ascending, |Im lambda| ascending) with the member of
/// positive imaginary part first in each conjugate pair. Conjugate closure and the symmetry
/// m_{j,k} = m_{k,j} hold exactly.
struct SpectralData
{
  Eigen::VectorXcd lambdas;
  /// Row j is b_j^T = t_j^T B.
  Eigen::MatrixXcd b;
  /// Column j is c_j = C s_j.
  Eigen::MatrixXcd c;
  /// mres[k](j, l) is the k-th entry of m_{j,l} = s_j^T M_k s_l.
  std::vector<Eigen::MatrixXcd> mres;
  /// Index of the conjugate partner; equal to the own index for real poles.
  std::vector<Index> pair_index;
  /// Right eigenvectors s_j, scaled so that T^T E S = I.
  Eigen::MatrixXcd right_vectors;

  Index size() const { return lambdas.size(); }
  Eigen::VectorXcd m(Index j, Index l) const;
};

struct SpectralOptions
{
  /// Minimum pole gap relative to max |lambda|.
  double separation_tol = 1e-8;
  /// If false, closely spaced poles are tolerated (the caller checks min_pole_gap).
  bool require_separation = true;
  /// Reciprocal condition estimate of the eigenvector matrix below which the pencil is
  /// treated as defective.
  double min_rcond = 1e-12;
  bool keep_vectors = true;
};

SpectralData spectral_decompose(const ReducedLqoSystem &red, const SpectralOptions &opts = {});

/// Dense decomposition of a full-order pencil; n <= cap.
SpectralData spectral_decompose(const LqoSystem &sys, const SpectralOptions &opts = {},
                                Index cap = kDenseEigCap);

/// Permutation sorting poles by (Re ascending, |Im| ascending, +Im first).
std::vector<Index> pole_order(const Eigen::VectorXcd &poles);
Eigen::VectorXcd sorted_poles(const Eigen::VectorXcd &poles);

/// min_{i != j} |lambda_i - lambda_j|, or +inf for a single pole.
double min_pole_gap(const Eigen::VectorXcd &poles);

/// Eigenvalues of the pencil (A, E).
Eigen::VectorXcd pencil_eigenvalues(const ReducedLqoSystem &red);
Eigen::VectorXcd pencil_eigenvalues(const LqoSystem &sys, Index cap = kDenseEigCap);

inline constexpr double kStabilityMargin = 1e-12;

/// True iff max Re lambda(A, E) < -margin.
bool is_asymptotically_stable(const ReducedLqoSystem &red, double margin = kStabilityMargin);
bool is_asymptotically_stable(const LqoSystem &sys, Index cap = kDenseEigCap,
                              double margin = kStabilityMargin);

namespace detail
{

struct RealEigen
{
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // empty unless requested
};

/// LAPACK dgeev on a real square matrix.
RealEigen real_eig(Eigen::MatrixXd A, bool want_vectors);

}  // namespace detail

}  // namespace lqo
