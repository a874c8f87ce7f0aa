// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "lqo/system.hpp"

namespace lqo
{

using InputSignal = std::function<double(double)>;

struct SimConfig
{
  double t_min = 0.0;
  double t_max = 10.0;
  Index steps = 1000;
  bool keep_states = false;
};

struct Trajectory
{
  Eigen::VectorXd times;
  /// (steps + 1) x p
  Eigen::MatrixXd outputs;
  /// n x (steps + 1), only if requested.
  Eigen::MatrixXd states;
};

/// Implicit trapezoidal rule from x(t_min) = 0 with one factorization of E - (dt/2) A.
Trajectory simulate(const LqoSystem &sys, const std::vector<InputSignal> &inputs,
                    const SimConfig &cfg = {});
Trajectory simulate(const ReducedLqoSystem &sys, const std::vector<InputSignal> &inputs,
                    const SimConfig &cfg = {});

struct PointwiseError
{
  /// |y - y~| / |y| per sample; NaN where |y| = 0.
  Eigen::VectorXd values;
  Index excluded = 0;
};

/// Multi-output trajectories use the Euclidean norm over outputs at each sample.
PointwiseError relerr_pointwise(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred);
/// max over samples with |y| != 0 of the pointwise error.
double relerr_linf(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred);
/// (sum |y - y~|^2 / sum |y|^2)^(1/2).
double relerr_l2(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred);
/// max over samples of |y - y~|.
double abs_err_linf(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred);

/// Trapezoidal approximation of (int sum_j u_j(t)^2 dt)^(1/2) on the simulation grid.
double u_l2_norm(const std::vector<InputSignal> &inputs, const SimConfig &cfg = {});
double u_l2_norm(const InputSignal &input, const SimConfig &cfg = {});

}  // namespace lqo
