// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lqo/error.hpp"

namespace lqo
{

LqoSystem advection_diffusion(const AdvecDiffConfig &cfg)
{
  if (cfg.n < 2 || !(cfg.alpha > 0.0) || !(cfg.beta >= 0.0))
  {
    fail(ErrorKind::InvalidConfig, "advection-diffusion needs n >= 2, alpha > 0 and beta >= 0");
  }
  const Index n = cfg.n;
  const double h = 1.0 / static_cast<double>(n);
  const double diff = cfg.alpha / (h * h);
  const double adv = cfg.beta / h;

  std::vector<Eigen::Triplet<double>> a;
  a.reserve(static_cast<std::size_t>(3 * n));
  for (Index i = 0; i < n - 1; ++i)
  {
    a.emplace_back(i, i, -2.0 * diff - adv);
    if (i > 0)
    {
      a.emplace_back(i, i - 1, diff + adv);
    }
    a.emplace_back(i, i + 1, diff);
  }
  // Half cell at x = 1: the boundary flux alpha v_x(1) = u_1 replaces the missing neighbour.
  a.emplace_back(n - 1, n - 2, diff + adv);
  a.emplace_back(n - 1, n - 1, -diff - adv);

  SparseMatrix A(n, n);
  A.setFromTriplets(a.begin(), a.end());
  SparseMatrix E(n, n);
  E.setIdentity();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, 2);
  B(0, 0) = diff + adv;
  B(n - 1, 1) = 1.0 / h;
  const Eigen::MatrixXd C = Eigen::MatrixXd::Constant(1, n, -h);
  SparseMatrix M(n, n);
  M.setIdentity();
  M *= 0.5 * h;
  return make_lqo_system(std::move(E), std::move(A), std::move(B), C, {M});
}

double input_sinc(double t)
{
  const double x = std::numbers::pi * t;
  if (std::abs(x) < 1e-6)
  {
    return 5.0 * (1.0 - x * x / 6.0);
  }
  return 5.0 * std::sin(x) / x;
}

double input_exp(double t)
{
  return std::exp(-t / 5.0) * std::sin(4.0 * std::numbers::pi * t);
}

LqoSystem random_stable_lqo(Index n, Index m, Index p, std::uint64_t seed)
{
  if (n < 1 || m < 1 || p < 1)
  {
    fail(ErrorKind::InvalidConfig, "random_stable_lqo needs n, m, p >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  auto fill = [&](Index rows, Index cols)
  {
    Eigen::MatrixXd X(rows, cols);
    for (Index j = 0; j < cols; ++j)
    {
      for (Index i = 0; i < rows; ++i)
      {
        X(i, j) = dist(rng);
      }
    }
    return X;
  };
  Eigen::MatrixXd A = fill(n, n);
  // Shift so every Gershgorin disc lies in Re <= -1.
  double radius = 0.0;
  for (Index i = 0; i < n; ++i)
  {
    radius = std::max(radius, A.row(i).cwiseAbs().sum());
  }
  A -= (radius + 1.0) * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd B = fill(n, m);
  const Eigen::MatrixXd C = fill(p, n);
  std::vector<Eigen::MatrixXd> Ms;
  for (Index k = 0; k < p; ++k)
  {
    const Eigen::MatrixXd G = fill(n, n);
    Ms.emplace_back(0.5 * (G + G.transpose()));
  }
  return make_lqo_system(Eigen::MatrixXd::Identity(n, n), A, B, C, Ms);
}

}  // namespace lqo
