// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "lqo/benchmarks.hpp"
#include "lqo/h2.hpp"
#include "lqo/irka.hpp"
#include "lqo/spectral.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using lqo::Complex;
using lqo::ErrorKind;
using lqo::Index;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

namespace
{

const lqo::LqoSystem &bench300()
{
  static const lqo::LqoSystem sys = lqo::advection_diffusion({300, 1.0, 1.0});
  return sys;
}

}  // namespace

TEST(Irka, ExactReductionIsAFixedPoint)
{
  const MatrixXd A = Eigen::Vector3d(-1, -2, -5).asDiagonal();
  MatrixXd B(3, 1), C(1, 3);
  B << 1, 2, 1;
  C << 1, -1, 3;
  const auto sys = lqo::make_lqo_system(MatrixXd::Identity(3, 3), A, B, C, {MatrixXd::Identity(3, 3)});
  lqo::IrkaConfig cfg;
  cfg.r = 3;
  const auto res = lqo::lqo_irka(sys, cfg);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(res.report.iterations, 2);
  const auto err = lqo::h2_error(sys, res.reduced, lqo::spectral_decompose(res.reduced));
  EXPECT_LE(err.absolute, 1e-10);
}

TEST(Irka, BenchmarkCertificate)
{
  lqo::IrkaConfig cfg;
  cfg.r = 6;
  cfg.tol = 1e-10;
  const auto res = lqo::lqo_irka(bench300(), cfg);
  const auto &rep = res.report;
  EXPECT_TRUE(rep.converged);
  EXPECT_LE(rep.iterations, 200);
  EXPECT_EQ(rep.stop_reason, "converged");
  EXPECT_EQ(rep.pole_history.size(), static_cast<std::size_t>(rep.iterations));
  EXPECT_LE(rep.pole_change_history.back(), cfg.tol);
  for (double c : rep.pole_change_history)
  {
    EXPECT_TRUE(std::isfinite(c));
  }
  ASSERT_TRUE(rep.final_optimality_residuals.has_value());
  // Fixed-point certificate: residuals are of the order of the pole-change tolerance.
  EXPECT_LE(rep.final_optimality_residuals->max_relative(), 100 * cfg.tol);
  EXPECT_TRUE(lqo::is_asymptotically_stable(res.reduced));

  // The report's residuals match an independent call.
  const auto again = lqo::verify_h2_optimality(bench300(), res.reduced);
  EXPECT_NEAR(again.max_relative(), rep.final_optimality_residuals->max_relative(), 1e-12);
}

TEST(Irka, ImagInitAndTracking)
{
  lqo::IrkaConfig cfg;
  cfg.r = 6;
  cfg.init = lqo::InitStrategy::Imag;
  cfg.track_h2 = true;
  const auto res = lqo::lqo_irka(bench300(), cfg);
  EXPECT_TRUE(res.report.converged);
  ASSERT_EQ(res.report.h2_history.size(), static_cast<std::size_t>(res.report.iterations));
  EXPECT_LT(res.report.h2_history.back(), res.report.h2_history.front());

  lqo::IrkaConfig eig;
  eig.r = 6;
  const auto ref = lqo::lqo_irka(bench300(), eig);
  const auto e1 = lqo::h2_error(bench300(), res.reduced, lqo::spectral_decompose(res.reduced));
  const auto e2 = lqo::h2_error(bench300(), ref.reduced, lqo::spectral_decompose(ref.reduced));
  EXPECT_LE(std::abs(e1.relative - e2.relative), 0.05 * e2.relative);
  EXPECT_NEAR(res.report.h2_history.back(), e1.relative, 1e-8);
}

TEST(Irka, OneStepIsAnInterpolantButNotOptimal)
{
  lqo::IrkaConfig cfg;
  cfg.r = 6;
  cfg.init = lqo::InitStrategy::Imag;
  cfg.one_step = true;
  const auto res = lqo::lqo_irka(bench300(), cfg);
  EXPECT_EQ(res.report.iterations, 1);
  EXPECT_EQ(res.report.stop_reason, "one-step");
  EXPECT_FALSE(res.report.converged);
  ASSERT_TRUE(res.report.final_optimality_residuals.has_value());
  EXPECT_GT(res.report.final_optimality_residuals->hermite_mixed_rel.maxCoeff(), 1e-3);
  // It does interpolate at its own (imaginary-axis) data. Some quadratic cross terms
  // G2(s_j, s_k)(r_j ⊗ r_k) between far-apart frequencies nearly vanish (|G2| ~ 1e-5 against
  // O(1) on the diagonal), so that family is measured against its largest full-order value.
  const auto data = lqo::init_imag(2, 1, 6);
  const auto iv = lqo::verify_interpolation(bench300(), res.reduced, data);
  EXPECT_LE(iv.right_linear_rel.maxCoeff(), 1e-8);
  EXPECT_LE(iv.left_mixed_rel.maxCoeff(), 1e-8);
  EXPECT_LE(iv.hermite_mixed_rel.maxCoeff(), 1e-8);
  double g2_scale = 0.0;
  for (Index k = 0; k < data.size(); ++k)
  {
    g2_scale = std::max(g2_scale, iv.right_quadratic(k, k) / iv.right_quadratic_rel(k, k));
  }
  EXPECT_LE(iv.right_quadratic.maxCoeff(), 1e-8 * g2_scale);
}

TEST(Irka, IterationCapReportsNoProgress)
{
  lqo::set_warnings_enabled(false);
  lqo::IrkaConfig cfg;
  cfg.r = 6;
  cfg.max_iter = 3;
  const auto res = lqo::lqo_irka(bench300(), cfg);
  lqo::set_warnings_enabled(true);
  EXPECT_FALSE(res.report.converged);
  EXPECT_EQ(res.report.stop_reason, "NoProgress");
  EXPECT_EQ(res.report.iterations, 3);
  const auto &h = res.report.pole_change_history;
  const auto best = std::min_element(h.begin(), h.end()) - h.begin() + 1;
  EXPECT_EQ(res.report.returned_iteration, best);
}

TEST(Irka, CustomInitialization)
{
  lqo::IrkaConfig cfg;
  cfg.r = 4;
  cfg.init = lqo::InitStrategy::Custom;
  cfg.custom_data = lqo::init_imag(2, 1, 4, 0.0, 2.0);
  const auto res = lqo::lqo_irka(bench300(), cfg);
  EXPECT_TRUE(res.report.converged);

  cfg.custom_data.reset();
  EXPECT_LQO_ERROR(lqo::lqo_irka(bench300(), cfg), ErrorKind::InvalidConfig);
  cfg.custom_data = lqo::init_imag(2, 1, 3);
  EXPECT_LQO_ERROR(lqo::lqo_irka(bench300(), cfg), ErrorKind::InvalidConfig);
}

TEST(Irka, InvalidConfigurations)
{
  lqo::IrkaConfig cfg;
  cfg.r = 0;
  EXPECT_LQO_ERROR(lqo::lqo_irka(bench300(), cfg), ErrorKind::InvalidConfig);
  cfg.r = 301;
  EXPECT_LQO_ERROR(lqo::lqo_irka(bench300(), cfg), ErrorKind::InvalidConfig);
  cfg.r = 4;
  cfg.tol = 0.0;
  EXPECT_LQO_ERROR(lqo::lqo_irka(bench300(), cfg), ErrorKind::InvalidConfig);
  cfg.tol = 1e-10;
  cfg.max_iter = 0;
  EXPECT_LQO_ERROR(lqo::lqo_irka(bench300(), cfg), ErrorKind::InvalidConfig);
}

TEST(Irka, LinearDegeneration)
{
  // All M_k = 0: fixed points satisfy the classical linear H2 conditions.
  const auto& b = bench300();
  const auto lin = lqo::make_lqo_system(b.E(), b.A(), b.B(), b.C(),
                                        {lqo::SparseMatrix(b.order(), b.order())});
  lqo::IrkaConfig cfg;
  cfg.r = 6;
  const auto res = lqo::lqo_irka(lin, cfg);
  EXPECT_TRUE(res.report.converged);
  EXPECT_EQ(res.reduced.M(0).norm(), 0.0);
  EXPECT_LE(res.report.final_optimality_residuals->max_relative(), 1e-6);
  EXPECT_EQ(res.report.final_optimality_residuals->right_quadratic.norm(), 0.0);
}

TEST(InitEigs, DiagonalSubspace)
{
  const MatrixXd A = Eigen::Vector3d(-1, -2, -3).asDiagonal();
  const auto sys = lqo::make_lqo_system(MatrixXd::Identity(3, 3), A, MatrixXd::Ones(3, 1),
                                        MatrixXd::Ones(1, 3), {MatrixXd::Identity(3, 3)});
  const auto eigs = lqo::smallest_eigs(sys, 2);
  // Projector onto span{e1, e2}.
  const MatrixXd Q = eigs.basis;
  MatrixXd P = MatrixXd::Zero(3, 3);
  P(0, 0) = P(1, 1) = 1.0;
  EXPECT_LE((Q * Q.transpose() - P).norm(), 1e-12);
  const auto data = lqo::init_eigs(sys, 2);
  EXPECT_NEAR(lqo::sorted_poles(data.sigmas)(0).real(), 1.0, 1e-12);
  EXPECT_NEAR(lqo::sorted_poles(data.sigmas)(1).real(), 2.0, 1e-12);
  EXPECT_LQO_ERROR(lqo::init_eigs(sys, 4), ErrorKind::EigSolverFailure);
}

TEST(InitEigs, ComplexSpectrumGivesClosedData)
{
  const auto d = oracle::random_dense(10, 2, 2, 141);
  const auto sys = testutil::sparse_of(d);
  const auto spec = lqo::spectral_decompose(sys);
  // Pick an r that does not split a conjugate pair among the smallest-magnitude eigenvalues.
  std::vector<Index> idx(10);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](Index a, Index b)
            { return std::abs(spec.lambdas(a)) < std::abs(spec.lambdas(b)); });
  Index r = 4;
  if (std::abs(std::abs(spec.lambdas(idx[3])) - std::abs(spec.lambdas(idx[4]))) < 1e-9 &&
      spec.lambdas(idx[3]).imag() != 0.0)
  {
    r = 5;
  }
  const auto data = lqo::init_eigs(sys, r);
  EXPECT_TRUE(lqo::is_conjugate_closed(data));
  EXPECT_GT(data.sigmas.real().minCoeff(), 0.0);
}

TEST(InitEigs, IterativePathMatchesDense)
{
  const auto sys = lqo::advection_diffusion({400, 1.0, 1.0});
  const auto dense = lqo::smallest_eigs(sys, 8, 1000);
  const auto iter = lqo::smallest_eigs(sys, 8, 100);
  EXPECT_LE((lqo::sorted_poles(dense.values) - lqo::sorted_poles(iter.values)).norm(),
            1e-8 * dense.values.norm());
}

TEST(InitImag, SpecExamples)
{
  const auto d4 = lqo::init_imag(2, 1, 4, 0.0, 3.0);
  EXPECT_EQ(d4.sigmas(0), Complex(0, 1));
  EXPECT_EQ(d4.sigmas(1), Complex(0, -1));
  EXPECT_NEAR(d4.sigmas(2).imag(), 1000.0, 1e-9);
  EXPECT_EQ(d4.sigmas(3), std::conj(d4.sigmas(2)));
  EXPECT_TRUE(lqo::is_conjugate_closed(d4));

  const auto d2 = lqo::init_imag(2, 1, 2, 0.0, 3.0);
  EXPECT_EQ(d2.sigmas(0), Complex(0, 1));
  EXPECT_EQ(d2.sigmas(1), Complex(0, -1));

  const auto d3 = lqo::init_imag(2, 1, 3, 0.0, 3.0);
  EXPECT_EQ(d3.sigmas(0), Complex(0, 1));
  EXPECT_NEAR(d3.sigmas(2).real(), std::pow(10.0, 1.5), 1e-12);
  EXPECT_EQ(d3.sigmas(2).imag(), 0.0);
  EXPECT_TRUE(lqo::is_conjugate_closed(d3));
  for (const auto &q : d3.q)
  {
    EXPECT_EQ(q, q.transpose());
  }
}

TEST(Reflection, Examples)
{
  VectorXcd s(1);
  s << Complex(-2, 3);
  auto out = lqo::reflect_unstable_points(s);
  EXPECT_EQ(out.sigmas(0), Complex(2, 3));
  EXPECT_EQ(out.count, 1);

  VectorXcd ok(2);
  ok << Complex(1, 1), Complex(1, -1);
  out = lqo::reflect_unstable_points(ok);
  EXPECT_EQ(out.sigmas, ok);
  EXPECT_EQ(out.count, 0);

  VectorXcd mixed(5);
  mixed << Complex(1, 2), Complex(1, -2), Complex(-3, 1), Complex(-3, -1), Complex(0, 0);
  out = lqo::reflect_unstable_points(mixed);
  EXPECT_EQ(out.count, 3);
  EXPECT_EQ(out.sigmas.head(2), mixed.head(2));
  EXPECT_EQ(out.sigmas(2), Complex(3, 1));
  EXPECT_EQ(out.sigmas(3), Complex(3, -1));
  EXPECT_GT(out.sigmas(4).real(), 0.0);
  EXPECT_EQ(lqo::infer_pairs(out.sigmas), lqo::infer_pairs(mixed));
}

TEST(PoleChange, Examples)
{
  VectorXcd a(1), b(1);
  a << -1.0;
  b << -1.5;
  EXPECT_DOUBLE_EQ(lqo::pole_change(a, b), 0.5);
  EXPECT_DOUBLE_EQ(lqo::relative_pole_change(a, b), 0.5);
  EXPECT_EQ(lqo::pole_change(a, a), 0.0);

  VectorXcd p(4), q(4);
  p << Complex(-1, 2), Complex(-1, -2), -3.0, -0.5;
  q << -0.5, Complex(-1, -2), -3.0, Complex(-1, 2);
  EXPECT_EQ(lqo::pole_change(p, q), 0.0);
  EXPECT_LQO_ERROR(lqo::pole_change(a, p), ErrorKind::LengthMismatch);
}
