// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/simulate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lqo/error.hpp"

namespace lqo
{

namespace
{

void check_config(const SimConfig &cfg)
{
  if (!(cfg.t_max > cfg.t_min) || cfg.steps < 2)
  {
    fail(ErrorKind::InvalidConfig, "simulation needs t_max > t_min and at least 2 steps");
  }
}

Eigen::VectorXd input_at(const std::vector<InputSignal> &inputs, double t)
{
  Eigen::VectorXd u(static_cast<Index>(inputs.size()));
  for (std::size_t j = 0; j < inputs.size(); ++j)
  {
    u(static_cast<Index>(j)) = inputs[j](t);
  }
  return u;
}

struct SparseStepper
{
  Eigen::SparseLU<SparseMatrix> lu;
  explicit SparseStepper(const SparseMatrix &K)
  {
    lu.compute(K);
    if (lu.info() != Eigen::Success)
    {
      fail(ErrorKind::FactorizationFailure, "sparse LU of E - (dt/2) A failed: " + lu.lastErrorMessage());
    }
  }
  Eigen::VectorXd solve(const Eigen::VectorXd &b) const { return lu.solve(b); }
};

struct DenseStepper
{
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  explicit DenseStepper(const Eigen::MatrixXd &K) : lu(K)
  {
    if (!(lu.rcond() > 1e-14))
    {
      fail(ErrorKind::FactorizationFailure, "E - (dt/2) A is singular");
    }
  }
  Eigen::VectorXd solve(const Eigen::VectorXd &b) const { return lu.solve(b); }
};

template <typename S, typename Stepper>
Trajectory run(const S &sys, const std::vector<InputSignal> &inputs, const SimConfig &cfg)
{
  check_config(cfg);
  if (static_cast<Index>(inputs.size()) != sys.inputs())
  {
    fail(ErrorKind::DimensionMismatch, "expected " + std::to_string(sys.inputs()) +
                                           " input signals, got " + std::to_string(inputs.size()));
  }
  const Index N = cfg.steps;
  const double dt = (cfg.t_max - cfg.t_min) / static_cast<double>(N);
  const Stepper stepper(sys.E() - (0.5 * dt) * sys.A());
  Trajectory tr;
  tr.times.resize(N + 1);
  tr.outputs.resize(N + 1, sys.outputs());
  if (cfg.keep_states)
  {
    tr.states.resize(sys.order(), N + 1);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sys.order());
  Eigen::VectorXd u = input_at(inputs, cfg.t_min);
  tr.times(0) = cfg.t_min;
  tr.outputs.row(0) = output(sys, x).transpose();
  if (cfg.keep_states)
  {
    tr.states.col(0) = x;
  }
  for (Index k = 1; k <= N; ++k)
  {
    const double t = cfg.t_min + dt * static_cast<double>(k);
    const Eigen::VectorXd u_next = input_at(inputs, t);
    const Eigen::VectorXd rhs = sys.E() * x + (0.5 * dt) * (sys.A() * x) + (0.5 * dt) * (sys.B() * (u + u_next));
    x = stepper.solve(rhs);
    if (!x.allFinite())
    {
      fail(ErrorKind::NonFiniteState, "state became non-finite at t = " + std::to_string(t));
    }
    u = u_next;
    tr.times(k) = t;
    tr.outputs.row(k) = output(sys, x).transpose();
    if (cfg.keep_states)
    {
      tr.states.col(k) = x;
    }
  }
  return tr;
}

void check_pair(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
  {
    fail(ErrorKind::LengthMismatch, "trajectories have different shapes");
  }
}

}  // namespace

Trajectory simulate(const LqoSystem &sys, const std::vector<InputSignal> &inputs, const SimConfig &cfg)
{
  return run<LqoSystem, SparseStepper>(sys, inputs, cfg);
}

Trajectory simulate(const ReducedLqoSystem &sys, const std::vector<InputSignal> &inputs,
                    const SimConfig &cfg)
{
  return run<ReducedLqoSystem, DenseStepper>(sys, inputs, cfg);
}

PointwiseError relerr_pointwise(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred)
{
  check_pair(yfull, yred);
  PointwiseError out;
  out.values.resize(yfull.rows());
  for (Index i = 0; i < yfull.rows(); ++i)
  {
    const double ref = yfull.row(i).norm();
    if (ref == 0.0)
    {
      out.values(i) = std::numeric_limits<double>::quiet_NaN();
      ++out.excluded;
    }
    else
    {
      out.values(i) = (yfull.row(i) - yred.row(i)).norm() / ref;
    }
  }
  return out;
}

double relerr_linf(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred)
{
  const PointwiseError pw = relerr_pointwise(yfull, yred);
  double m = 0.0;
  bool any = false;
  for (Index i = 0; i < pw.values.size(); ++i)
  {
    if (!std::isnan(pw.values(i)))
    {
      m = std::max(m, pw.values(i));
      any = true;
    }
  }
  if (!any)
  {
    fail(ErrorKind::AllZeroReference, "reference output is identically zero");
  }
  return m;
}

double relerr_l2(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred)
{
  check_pair(yfull, yred);
  const double den = yfull.squaredNorm();
  if (den == 0.0)
  {
    fail(ErrorKind::AllZeroReference, "reference output is identically zero");
  }
  return std::sqrt((yfull - yred).squaredNorm() / den);
}

double abs_err_linf(const Eigen::MatrixXd &yfull, const Eigen::MatrixXd &yred)
{
  check_pair(yfull, yred);
  double m = 0.0;
  for (Index i = 0; i < yfull.rows(); ++i)
  {
    m = std::max(m, (yfull.row(i) - yred.row(i)).norm());
  }
  return m;
}

double u_l2_norm(const std::vector<InputSignal> &inputs, const SimConfig &cfg)
{
  check_config(cfg);
  const Index N = cfg.steps;
  const double dt = (cfg.t_max - cfg.t_min) / static_cast<double>(N);
  double acc = 0.0;
  for (Index k = 0; k <= N; ++k)
  {
    const double t = cfg.t_min + dt * static_cast<double>(k);
    const double w = (k == 0 || k == N) ? 0.5 : 1.0;
    acc += w * input_at(inputs, t).squaredNorm();
  }
  return std::sqrt(acc * dt);
}

double u_l2_norm(const InputSignal &input, const SimConfig &cfg)
{
  return u_l2_norm(std::vector<InputSignal>{input}, cfg);
}

}  // namespace lqo
