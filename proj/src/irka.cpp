// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/irka.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "lqo/error.hpp"
#include "lqo/spectral.hpp"

namespace lqo
{

namespace
{

constexpr double kEigTol = 1e-10;
constexpr int kSubspaceMaxIter = 1000;

// Orders by modulus; ties (conjugate partners) follow the deterministic pole order.
std::vector<Index> magnitude_order(const Eigen::VectorXcd &values)
{
  const std::vector<Index> base = pole_order(values);
  std::vector<Index> idx = base;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return std::abs(values(a)) < std::abs(values(b)); });
  return idx;
}

// Selects the r smallest-magnitude eigenpairs and returns a real orthonormal basis of their span.
SmallestEigs select_smallest(const Eigen::VectorXcd &values, const Eigen::MatrixXcd &vectors, Index r)
{
  const std::vector<Index> idx = magnitude_order(values);
  if (static_cast<Index>(idx.size()) < r)
  {
    fail(ErrorKind::EigSolverFailure, "fewer than r eigenvalues are available");
  }
  std::vector<Index> chosen(idx.begin(), idx.begin() + r);
  std::vector<Index> ordered = chosen;
  {
    Eigen::VectorXcd sub(r);
    for (Index k = 0; k < r; ++k)
    {
      sub(k) = values(chosen[static_cast<std::size_t>(k)]);
    }
    const std::vector<Index> perm = pole_order(sub);
    for (Index k = 0; k < r; ++k)
    {
      ordered[static_cast<std::size_t>(k)] = chosen[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    }
  }
  SmallestEigs out;
  out.values.resize(r);
  Eigen::MatrixXd basis(vectors.rows(), r);
  for (Index k = 0; k < r; ++k)
  {
    const Index j = ordered[static_cast<std::size_t>(k)];
    out.values(k) = values(j);
    if (values(j).imag() == 0.0)
    {
      basis.col(k) = vectors.col(j).real();
      continue;
    }
    if (k + 1 >= r || values(ordered[static_cast<std::size_t>(k + 1)]) != std::conj(values(j)))
    {
      fail(ErrorKind::EigSolverFailure,
           "the r-th smallest eigenvalue splits a complex conjugate pair; choose r = " +
               std::to_string(r - 1) + " or " + std::to_string(r + 1));
    }
    out.values(k + 1) = std::conj(values(j));
    basis.col(k) = vectors.col(j).real();
    basis.col(k + 1) = vectors.col(j).imag();
    ++k;
  }
  out.basis = orthonormalize(basis);
  return out;
}

SmallestEigs smallest_dense(const LqoSystem &sys, Index r)
{
  const Eigen::MatrixXd A = Eigen::MatrixXd(sys.A());
  detail::RealEigen eig = detail::real_eig(sys.identity_E() ? A : sys.solve_E(A), true);
  return select_smallest(eig.values, eig.vectors, r);
}

// Block subspace iteration with A^{-1} E; its dominant eigenvalues are 1/lambda for the
// smallest-magnitude eigenvalues lambda of (A, E).
SmallestEigs smallest_subspace(const LqoSystem &sys, Index r)
{
  const Index n = sys.order();
  const Index b = std::min(n, std::max(2 * r, r + 10));
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(sys.A());
  if (lu.info() != Eigen::Success)
  {
    fail(ErrorKind::EigSolverFailure, "sparse LU of A failed: " + lu.lastErrorMessage());
  }
  auto apply = [&](const Eigen::MatrixXd &X) -> Eigen::MatrixXd
  {
    const Eigen::MatrixXd EX = sys.E() * X;
    return lu.solve(EX);
  };
  std::mt19937_64 rng(20240611);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd Q(n, b);
  for (Index j = 0; j < b; ++j)
  {
    for (Index i = 0; i < n; ++i)
    {
      Q(i, j) = dist(rng);
    }
  }
  Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Q).householderQ() * Eigen::MatrixXd::Identity(n, b);
  for (int it = 0; it < kSubspaceMaxIter; ++it)
  {
    const Eigen::MatrixXd Z = apply(Q);
    // Rayleigh-Ritz on the current subspace.
    const Eigen::MatrixXd T = Q.transpose() * Z;
    detail::RealEigen ritz = detail::real_eig(T, true);
    // Largest |mu| first corresponds to smallest |lambda|.
    Eigen::VectorXcd lambdas(b);
    for (Index j = 0; j < b; ++j)
    {
      lambdas(j) = 1.0 / ritz.values(j);
    }
    const Eigen::MatrixXcd Y = Q.cast<Complex>() * ritz.vectors;
    const Eigen::MatrixXcd R = Z.cast<Complex>() * ritz.vectors - Y * ritz.values.asDiagonal();
    const std::vector<Index> idx = magnitude_order(lambdas);
    bool converged = true;
    for (Index k = 0; k < r && converged; ++k)
    {
      const Index j = idx[static_cast<std::size_t>(k)];
      converged = R.col(j).norm() <= kEigTol * std::abs(ritz.values(j)) * Y.col(j).norm();
    }
    if (converged)
    {
      return select_smallest(lambdas, Y, r);
    }
    Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Z).householderQ() * Eigen::MatrixXd::Identity(n, b);
  }
  fail(ErrorKind::EigSolverFailure, "subspace iteration did not converge in " +
                                        std::to_string(kSubspaceMaxIter) + " steps");
}

struct IterateState
{
  std::optional<ReducedLqoSystem> red;
  double change = std::numeric_limits<double>::infinity();
  int iteration = 0;
};

// Shifts points that collide (relative gap <= sep) along the real axis, whole pairs at a time.
int separate_points(InterpolationData &data, double sep, double delta)
{
  int events = 0;
  const Index r = data.size();
  const double scale = data.sigmas.cwiseAbs().maxCoeff();
  for (Index j = 0; j < r; ++j)
  {
    for (Index i = 0; i < j; ++i)
    {
      const Index pj = data.pair_index[static_cast<std::size_t>(j)];
      if (i == pj)
      {
        continue;
      }
      if (std::abs(data.sigmas(i) - data.sigmas(j)) <= sep * scale)
      {
        const double shift = delta * std::max(1.0, std::abs(data.sigmas(j)));
        data.sigmas(j) += shift;
        if (pj != j && pj >= 0)
        {
          data.sigmas(pj) += shift;
        }
        ++events;
      }
    }
  }
  return events;
}

}  // namespace

SmallestEigs smallest_eigs(const LqoSystem &sys, Index r, Index dense_cap)
{
  if (r < 1 || r > sys.order())
  {
    fail(ErrorKind::EigSolverFailure, "requested " + std::to_string(r) +
                                          " eigenvalues of a pencil of order " +
                                          std::to_string(sys.order()));
  }
  if (sys.order() <= dense_cap)
  {
    return smallest_dense(sys, r);
  }
  return smallest_subspace(sys, r);
}

InterpolationData init_eigs(const LqoSystem &sys, Index r, Index dense_cap)
{
  const SmallestEigs eig = smallest_eigs(sys, r, dense_cap);
  const ReducedLqoSystem red = petrov_galerkin_project(sys, eig.basis, eig.basis);
  return mirror_data(spectral_decompose(red));
}

InterpolationData init_imag(Index m, Index p, Index r, double lo, double hi)
{
  if (r < 1 || m < 1 || p < 1)
  {
    fail(ErrorKind::InvalidConfig, "init_imag needs r, m, p >= 1");
  }
  if (!(hi >= lo))
  {
    fail(ErrorKind::InvalidConfig, "init_imag needs hi >= lo");
  }
  const Index pairs = r / 2;
  InterpolationData d;
  d.sigmas.resize(r);
  d.right_dirs = Eigen::MatrixXcd::Zero(m, r);
  d.left_dirs = Eigen::MatrixXcd::Zero(p, r);
  d.pair_index.resize(static_cast<std::size_t>(r));
  for (Index k = 0; k < pairs; ++k)
  {
    const double e = pairs == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) /
                                                static_cast<double>(pairs - 1);
    const double z = std::pow(10.0, e);
    d.sigmas(2 * k) = Complex(0.0, z);
    d.sigmas(2 * k + 1) = Complex(0.0, -z);
    for (Index s = 0; s < 2; ++s)
    {
      d.right_dirs(k % m, 2 * k + s) = 1.0;
      d.left_dirs(k % p, 2 * k + s) = 1.0;
    }
    d.pair_index[static_cast<std::size_t>(2 * k)] = 2 * k + 1;
    d.pair_index[static_cast<std::size_t>(2 * k + 1)] = 2 * k;
  }
  if (r % 2 == 1)
  {
    d.sigmas(r - 1) = std::pow(10.0, 0.5 * (lo + hi));
    d.right_dirs(pairs % m, r - 1) = 1.0;
    d.left_dirs(pairs % p, r - 1) = 1.0;
    d.pair_index[static_cast<std::size_t>(r - 1)] = r - 1;
  }
  d.q.assign(static_cast<std::size_t>(p), Eigen::MatrixXcd::Zero(r, r));
  d.q[0].setOnes();
  return d;
}

Reflection reflect_unstable_points(const Eigen::VectorXcd &sigmas)
{
  Reflection out{sigmas, 0};
  for (Index k = 0; k < sigmas.size(); ++k)
  {
    const Complex s = sigmas(k);
    if (s.real() <= kStabilityMargin)
    {
      // Negate the real part; points on or numerically near the axis go to a safe offset.
      const double re = std::max(-s.real(), 1e-8 * std::max(1.0, std::abs(s)));
      out.sigmas(k) = Complex(re, s.imag());
      ++out.count;
    }
  }
  return out;
}

double pole_change(const Eigen::VectorXcd &prev, const Eigen::VectorXcd &next)
{
  if (prev.size() != next.size())
  {
    fail(ErrorKind::LengthMismatch, "pole sets have different lengths");
  }
  if (prev.size() == 0)
  {
    return 0.0;
  }
  return (sorted_poles(prev) - sorted_poles(next)).cwiseAbs().maxCoeff();
}

double relative_pole_change(const Eigen::VectorXcd &prev, const Eigen::VectorXcd &next)
{
  const double change = pole_change(prev, next);
  const double scale = prev.size() > 0 ? prev.cwiseAbs().maxCoeff() : 0.0;
  return scale > 0.0 ? change / scale : change;
}

IrkaResult lqo_irka(const LqoSystem &sys, const IrkaConfig &config)
{
  const Index r = config.r;
  if (r < 1 || r > sys.order())
  {
    fail(ErrorKind::InvalidConfig, "reduced order must satisfy 1 <= r <= n");
  }
  if (!(config.tol > 0.0) || config.max_iter < 1)
  {
    fail(ErrorKind::InvalidConfig, "tol must be positive and max_iter at least 1");
  }

  InterpolationData data;
  switch (config.init)
  {
  case InitStrategy::Eigs:
    data = init_eigs(sys, r, config.init_dense_cap);
    break;
  case InitStrategy::Imag:
    data = init_imag(sys.inputs(), sys.outputs(), r, config.imag_lo, config.imag_hi);
    break;
  case InitStrategy::Custom:
    if (!config.custom_data)
    {
      fail(ErrorKind::InvalidConfig, "custom initialization requires interpolation data");
    }
    data = *config.custom_data;
    break;
  }
  if (data.size() != r)
  {
    fail(ErrorKind::InvalidConfig, "initial interpolation data must have r points");
  }
  if (config.reflect_unstable)
  {
    data.sigmas = reflect_unstable_points(data.sigmas).sigmas;
  }

  std::optional<H2Reference> own_reference;
  const H2Reference *reference = config.reference;
  if (config.track_h2 && !reference)
  {
    own_reference = h2_reference(sys);
    reference = &*own_reference;
  }

  SpectralOptions spec_opts;
  spec_opts.require_separation = false;
  const int max_iter = config.one_step ? 1 : config.max_iter;

  IrkaReport report;
  IterateState best;
  std::optional<ReducedLqoSystem> last;
  Eigen::VectorXcd prev_poles = -data.sigmas;
  for (int it = 1; it <= max_iter; ++it)
  {
    const PrimitiveBases prim = build_bases(sys, data, config.rank_tol);
    const RealBases bases = realify_bases(prim.V, prim.W, data);
    ReducedLqoSystem red = petrov_galerkin_project(sys, bases.V, bases.W, config.rank_tol);
    SpectralData spec;
    try
    {
      spec = spectral_decompose(red, spec_opts);
    }
    catch (const Error &e)
    {
      if (e.kind() == ErrorKind::NondiagonalizablePencil)
      {
        fail(ErrorKind::RepeatedPoles,
             "iteration " + std::to_string(it) + ": reduced pencil is defective (" + e.what() + ")");
      }
      throw;
    }

    report.iterations = it;
    report.pole_history.push_back(spec.lambdas);
    const double abs_change = pole_change(prev_poles, spec.lambdas);
    const double change = relative_pole_change(prev_poles, spec.lambdas);
    report.abs_pole_change_history.push_back(abs_change);
    report.pole_change_history.push_back(change);
    prev_poles = spec.lambdas;

    if (config.track_h2)
    {
      const bool stable = spec.lambdas.real().maxCoeff() < 0.0;
      report.h2_history.push_back(stable ? h2_error(*reference, red, spec).relative
                                         : std::numeric_limits<double>::quiet_NaN());
    }

    data = mirror_data(spec);
    int reflections = 0;
    if (config.reflect_unstable)
    {
      const Reflection refl = reflect_unstable_points(data.sigmas);
      data.sigmas = refl.sigmas;
      reflections = refl.count;
    }
    report.unstable_reflections.push_back(reflections);

    const double sep = SpectralOptions{}.separation_tol;
    int perturbations = 0;
    if (min_pole_gap(data.sigmas) <= sep * data.sigmas.cwiseAbs().maxCoeff())
    {
      perturbations = separate_points(data, sep, 10.0 * config.tol);
      warn("lqo_irka: iteration " + std::to_string(it) + ": perturbed " +
           std::to_string(perturbations) + " colliding interpolation point(s)");
    }
    report.pole_perturbations.push_back(perturbations);

    if (config.progress)
    {
      config.progress(it, change);
    }
    if (change < best.change)
    {
      best.red = red;
      best.change = change;
      best.iteration = it;
    }
    last = std::move(red);
    if (!config.one_step && change <= config.tol)
    {
      report.converged = true;
      break;
    }
  }

  ReducedLqoSystem result = *last;
  report.returned_iteration = report.iterations;
  if (config.one_step)
  {
    report.stop_reason = "one-step";
  }
  else if (report.converged)
  {
    report.stop_reason = "converged";
  }
  else
  {
    report.stop_reason = "NoProgress";
    result = *best.red;
    report.returned_iteration = best.iteration;
    warn("lqo_irka: NoProgress: no convergence in " + std::to_string(max_iter) +
         " iterations; returning iteration " + std::to_string(best.iteration) +
         " with relative pole change " + std::to_string(best.change));
  }
  if (config.compute_residuals)
  {
    report.final_optimality_residuals = verify_h2_optimality(sys, result);
  }
  return IrkaResult{std::move(result), std::move(report)};
}

}  // namespace lqo
