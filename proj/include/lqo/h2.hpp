// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lqo/spectral.hpp"
#include "lqo/system.hpp"

namespace lqo
{

/// Split of an H2 inner product (or squared norm) into the contributions of G1 and G2.
struct H2Breakdown
{
  double linear_part = 0.0;
  double quadratic_part = 0.0;
  double total = 0.0;
  /// Imaginary part of the complex pole-residue sum; roundoff for real realizations.
  double imag_part = 0.0;

  /// sqrt(total) for squared norms.
  double norm() const;
};

/// <G, G~> by pole-residue expansion over the poles of G~. The first argument is evaluated
/// with one shifted solve per pole (conjugate partners reuse the conjugated solution).
H2Breakdown h2_inner_product(const LqoSystem &first, const SpectralData &red_spec,
                             const ReducedLqoSystem &red_sys);
H2Breakdown h2_inner_product(const ReducedLqoSystem &first, const SpectralData &red_spec,
                             const ReducedLqoSystem &red_sys);

/// <G, G~> with both transfer functions given by their pole-residue data.
H2Breakdown h2_inner_product(const SpectralData &first, const SpectralData &second);

/// ||G~||^2 from pole-residue data.
H2Breakdown h2_norm(const SpectralData &spec);
H2Breakdown h2_norm(const ReducedLqoSystem &red_sys, const SpectralData &red_spec);

/// Pole-residue data and squared norm of a full-order system, computed once and reused by
/// every error evaluation against it.
struct H2Reference
{
  SpectralData spec;
  H2Breakdown norm2;
};

H2Reference h2_reference(const LqoSystem &sys, Index cap = kDenseEigCap);

/// ||G||^2 of a full-order system by dense eigendecomposition (n <= cap).
H2Breakdown h2_norm_full(const LqoSystem &sys, Index cap = kDenseEigCap);

struct H2Error
{
  double absolute = 0.0;
  double relative = 0.0;
  /// ||G||^2 - 2 Re<G, G~> + ||G~||^2 before clipping.
  double raw_square = 0.0;
  H2Breakdown full_norm2;
  H2Breakdown cross;
  H2Breakdown reduced_norm2;
};

/// ||G - G~||. All three terms are evaluated from pole-residue data so that they refer to one
/// floating-point realization of G; see README for why this matters near optimality.
H2Error h2_error(const H2Reference &ref, const ReducedLqoSystem &red_sys,
                 const SpectralData &red_spec);
H2Error h2_error(const LqoSystem &full, const ReducedLqoSystem &red_sys,
                 const SpectralData &red_spec);

struct QuadratureConfig
{
  /// Frequency grid extent in decades: |omega| in [10^log_min, 10^log_max], plus omega = 0.
  double log_min = -3.0;
  double log_max = 5.0;
  int points_per_decade = 10;
  int max_refinements = 4;
  /// Refinement stops once successive estimates agree to this relative tolerance.
  double rtol = 1e-5;
};

struct QuadratureResult
{
  H2Breakdown value;
  /// |I(h) - I(2h)| for the final grid.
  double estimated_error = 0.0;
  int points_per_decade = 0;
};

/// Log-trapezoidal evaluation of the 1D and 2D frequency integrals defining ||G||^2. Test oracle
/// only; order <= kSmallDenseCap.
QuadratureResult h2_norm_quadrature(const LqoSystem &sys, const QuadratureConfig &cfg = {});
QuadratureResult h2_norm_quadrature(const ReducedLqoSystem &sys, const QuadratureConfig &cfg = {});

/// ||y - y~||_inf <= ||G - G~|| * sqrt(||u||^2 + ||u||^4).
double output_error_bound(double h2_error_value, double u_l2_norm);

}  // namespace lqo
