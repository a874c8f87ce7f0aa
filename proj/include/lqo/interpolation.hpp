// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lqo/spectral.hpp"
#include "lqo/system.hpp"

namespace lqo
{

/// Interpolation points and tangential directions (sigma_k, r_k, l_k, q_{j,k}).
///
/// Conjugate points occupy adjacent slots k, k+1. With partner map pi the data satisfy
/// conj(r_k) = r_{pi(k)}, conj(l_k) = l_{pi(k)} and conj(q_{j,k}) = q_{pi(j),pi(k)}.
struct InterpolationData
{
  Eigen::VectorXcd sigmas;
  /// m x r, column k is r_k.
  Eigen::MatrixXcd right_dirs;
  /// p x r, column k is l_k.
  Eigen::MatrixXcd left_dirs;
  /// q[o](j, k) is the o-th entry of q_{j,k}. Symmetric in (j, k).
  std::vector<Eigen::MatrixXcd> q;
  /// Conjugate partner of each slot; the slot itself for real points, -1 if unpaired.
  std::vector<Index> pair_index;

  Index size() const { return sigmas.size(); }
  Eigen::VectorXcd qvec(Index j, Index k) const;
};

/// Partner map inferred from adjacency of conjugate points.
std::vector<Index> infer_pairs(const Eigen::VectorXcd &sigmas);

/// Checks dimensions, symmetrizes q and infers the pairing map.
InterpolationData make_interpolation_data(Eigen::VectorXcd sigmas, Eigen::MatrixXcd right_dirs,
                                          Eigen::MatrixXcd left_dirs,
                                          std::vector<Eigen::MatrixXcd> q);

/// Mirror images of a pole-residue expansion: sigma = -lambda, r = b, l = c, q = m.
InterpolationData mirror_data(const SpectralData &spec);

/// Throws ConjugacyViolation unless the data are conjugate-closed to relative tolerance rtol.
void validate_conjugate_closure(const InterpolationData &data, double rtol = 1e-10);
bool is_conjugate_closed(const InterpolationData &data, double rtol = 1e-10);

/// Relative numerical-rank tolerance for interpolation bases.
inline constexpr double kRankTol = 1e-10;
/// Rank tolerance inside LQO-IRKA. Primitive rational Krylov bases with many widely spread
/// shifts are exponentially ill-conditioned (ratios near 1e-15 at r = 30) while still spanning
/// the interpolation subspace to working precision, so only exact degeneracy is rejected.
inline constexpr double kIrkaRankTol = 1e-16;

/// Throws RankDeficient if the column-normalized X has numerical rank below its column count.
void check_full_rank(const Eigen::MatrixXcd &X, const char *what, double rtol = kRankTol);

/// Columns v_k = (sigma_k E - A)^{-1} B r_k.
Eigen::MatrixXcd build_v_basis(const LqoSystem &sys, const InterpolationData &data);
Eigen::MatrixXcd build_v_basis(const ReducedLqoSystem &sys, const InterpolationData &data);

/// Columns w_k = (sigma_k E^T - A^T)^{-1} (2 sum_l sum_o q_{k,l,o} M_o v_l + C^T l_k).
Eigen::MatrixXcd build_w_basis(const LqoSystem &sys, const InterpolationData &data,
                               const Eigen::MatrixXcd &v_columns);
Eigen::MatrixXcd build_w_basis(const ReducedLqoSystem &sys, const InterpolationData &data,
                               const Eigen::MatrixXcd &v_columns);

struct PrimitiveBases
{
  Eigen::MatrixXcd V;
  Eigen::MatrixXcd W;
};

/// Both bases with one factorization of sigma_k E - A per conjugate pair.
PrimitiveBases build_bases(const LqoSystem &sys, const InterpolationData &data,
                           double rank_tol = kRankTol);
PrimitiveBases build_bases(const ReducedLqoSystem &sys, const InterpolationData &data,
                           double rank_tol = kRankTol);

struct RealBases
{
  Eigen::MatrixXd V;
  Eigen::MatrixXd W;
};

/// Replaces each conjugate pair of columns by [Re v_k, Im v_k]; real points pass through.
RealBases realify_bases(const Eigen::MatrixXcd &v_prim, const Eigen::MatrixXcd &w_prim,
                        const InterpolationData &data);

/// Thin orthonormal basis of range(X); the first nonzero entry of every column is positive.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd &X, double rank_tol = kRankTol);

/// Orthonormalizes V and W, then forms W^T E V, W^T A V, W^T B, C V and V^T M_k V.
ReducedLqoSystem petrov_galerkin_project(const LqoSystem &sys, const Eigen::MatrixXd &V,
                                         const Eigen::MatrixXd &W, double rank_tol = kRankTol);
ReducedLqoSystem petrov_galerkin_project(const ReducedLqoSystem &sys, const Eigen::MatrixXd &V,
                                         const Eigen::MatrixXd &W, double rank_tol = kRankTol);

/// Residuals of the tangential interpolation conditions, absolute and relative to the sum of
/// the magnitudes of the full-order terms entering each condition.
struct InterpResiduals
{
  Eigen::VectorXd right_linear, right_linear_rel;
  Eigen::MatrixXd right_quadratic, right_quadratic_rel;
  Eigen::VectorXd left_mixed, left_mixed_rel;
  Eigen::VectorXd hermite_mixed, hermite_mixed_rel;

  double max_absolute() const;
  double max_relative() const;
};

InterpResiduals verify_interpolation(const LqoSystem &full, const ReducedLqoSystem &red,
                                     const InterpolationData &data);
InterpResiduals verify_interpolation(const ReducedLqoSystem &full, const ReducedLqoSystem &red,
                                     const InterpolationData &data);

/// Interpolation residuals at the mirrored poles and residue directions of red.
InterpResiduals verify_h2_optimality(const LqoSystem &full, const ReducedLqoSystem &red);
InterpResiduals verify_h2_optimality(const ReducedLqoSystem &full, const ReducedLqoSystem &red);

}  // namespace lqo
