// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lqo/h2.hpp"
#include "lqo/interpolation.hpp"
#include "lqo/system.hpp"

namespace lqo
{

enum class InitStrategy
{
  Eigs,
  Imag,
  Custom
};

/// Above this order init_eigs switches from dense eigenvalues to subspace iteration.
inline constexpr Index kInitDenseCap = 1000;

struct IrkaConfig
{
  Index r = 0;
  /// Convergence threshold on the relative pole change max_k |dl_k| / max_k |l_k|.
  double tol = 1e-10;
  int max_iter = 200;
  InitStrategy init = InitStrategy::Eigs;
  std::optional<InterpolationData> custom_data;
  bool reflect_unstable = true;
  bool track_h2 = false;
  /// Decade exponents of the imaginary initial points.
  double imag_lo = 0.0;
  double imag_hi = 3.0;
  /// Stop after the first projection (non-iterated interpolant).
  bool one_step = false;
  bool compute_residuals = true;
  Index init_dense_cap = kInitDenseCap;
  double rank_tol = kIrkaRankTol;
  /// Optional precomputed full-order reference for track_h2; computed on demand otherwise.
  const H2Reference *reference = nullptr;
  /// Called after every iteration with (iteration, relative pole change).
  std::function<void(int, double)> progress;
};

struct IrkaReport
{
  bool converged = false;
  int iterations = 0;
  /// Iteration whose reduced model is returned (1-based).
  int returned_iteration = 0;
  std::string stop_reason;
  std::vector<Eigen::VectorXcd> pole_history;
  /// Relative pole change per iteration (the convergence metric).
  std::vector<double> pole_change_history;
  std::vector<double> abs_pole_change_history;
  std::vector<double> h2_history;
  std::vector<int> unstable_reflections;
  std::vector<int> pole_perturbations;
  std::optional<InterpResiduals> final_optimality_residuals;
};

struct IrkaResult
{
  ReducedLqoSystem reduced;
  IrkaReport report;
};

IrkaResult lqo_irka(const LqoSystem &sys, const IrkaConfig &config);

/// Mirrored pole-residue data of the Galerkin model on the invariant subspace belonging to
/// the r eigenvalues of smallest magnitude.
InterpolationData init_eigs(const LqoSystem &sys, Index r, Index dense_cap = kInitDenseCap);

/// The r smallest-magnitude eigenvalues of (A, E) with a real orthonormal basis of the
/// corresponding invariant subspace.
struct SmallestEigs
{
  Eigen::VectorXcd values;
  Eigen::MatrixXd basis;
};
SmallestEigs smallest_eigs(const LqoSystem &sys, Index r, Index dense_cap = kInitDenseCap);

/// Points +-i*z with z log-spaced over [10^lo, 10^hi] (one pair per two points); an odd r
/// adds the real point 10^((lo+hi)/2). Directions cycle through canonical basis vectors.
InterpolationData init_imag(Index m, Index p, Index r, double lo = 0.0, double hi = 3.0);

struct Reflection
{
  Eigen::VectorXcd sigmas;
  int count = 0;
};

/// Negates the real part of every point with Re sigma <= 0.
Reflection reflect_unstable_points(const Eigen::VectorXcd &sigmas);

/// max_k |prev_k - next_k| after sorting both sets by the deterministic pole order.
double pole_change(const Eigen::VectorXcd &prev, const Eigen::VectorXcd &next);
/// pole_change divided by max_k |prev_k|.
double relative_pole_change(const Eigen::VectorXcd &prev, const Eigen::VectorXcd &next);

}  // namespace lqo
