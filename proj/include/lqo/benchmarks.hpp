// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "lqo/system.hpp"

namespace lqo
{

struct AdvecDiffConfig
{
  /// Unknowns on the grid x_i = i/n, i = 1..n (x_0 carries the Dirichlet datum).
  Index n = 3000;
  double alpha = 1.0;
  double beta = 1.0;
};

/// Upwind finite-difference discretization of v_t = alpha v_xx - beta v_x on (0, 1) with
/// v(t, 0) = u_0(t) and alpha v_x(t, 1) = u_1(t), observed through the quadratic cost
/// (h/2) ||x - 1||^2 - 1/2 = C x + x^T M_1 x.
LqoSystem advection_diffusion(const AdvecDiffConfig &cfg);

/// 5 sin(pi t) / (pi t), with value 5 at t = 0.
double input_sinc(double t);
/// exp(-t/5) sin(4 pi t).
double input_exp(double t);

/// Reproducible random system with E = I and a stable A (eigenvalues in Re <= -1 by
/// Gershgorin), dense B, C and symmetric M_k.
LqoSystem random_stable_lqo(Index n, Index m, Index p, std::uint64_t seed);

}  // namespace lqo
