// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "lqo/benchmarks.hpp"
#include "lqo/h2.hpp"
#include "lqo/spectral.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using lqo::ErrorKind;
using Eigen::MatrixXd;

namespace
{

double scalar_norm2(double a, double c, double m)
{
  return c * c / (2 * a) + m * m / (4 * a * a);
}

lqo::H2Breakdown inner(const oracle::Dense &full, const oracle::Dense &red)
{
  const auto rs = testutil::dense_of(red);
  return lqo::h2_inner_product(testutil::sparse_of(full), lqo::spectral_decompose(rs), rs);
}

}  // namespace

TEST(H2, ScalarInnerProductClosedForm)
{
  for (auto [a, c, m] : {std::tuple{1.0, 1.0, 0.0}, std::tuple{2.0, 1.5, 0.7},
                         std::tuple{0.3, -1.0, 2.0}})
  {
    const auto d = testutil::scalar(a, c, m);
    const double expected = scalar_norm2(a, c, m);
    EXPECT_NEAR(inner(d, d).total, expected, 1e-14 * expected);
    const auto red = testutil::dense_of(d);
    const auto spec = lqo::spectral_decompose(red);
    EXPECT_NEAR(lqo::h2_inner_product(red, spec, red).total, expected, 1e-14 * expected);
    EXPECT_NEAR(lqo::h2_inner_product(spec, spec).total, expected, 1e-14 * expected);
  }
  EXPECT_DOUBLE_EQ(inner(testutil::scalar(1, 1, 0), testutil::scalar(1, 1, 0)).total, 0.5);
}

TEST(H2, ZeroInputMapGivesZero)
{
  const auto full = oracle::random_dense(5, 2, 1, 61);
  auto red = oracle::random_dense(2, 2, 1, 62);
  red.B.setZero();
  EXPECT_EQ(inner(full, red).total, 0.0);
}

TEST(H2, InnerProductMatchesGramianAndQuadrature)
{
  const auto full = oracle::random_dense(6, 2, 2, 63);
  const auto red = oracle::random_dense(2, 2, 2, 64);
  const auto ip = inner(full, red);
  const auto gram = oracle::inner_product(full, red);
  EXPECT_LE(oracle::relerr(ip.linear_part, gram.linear), 1e-10);
  EXPECT_LE(oracle::relerr(ip.quadratic_part, gram.quadratic), 1e-10);

  // Polarization: <G, Gt> = (||G + Gt||^2 - ||G - Gt||^2) / 4, each by frequency quadrature.
  const auto plus = lqo::h2_norm_quadrature(testutil::sparse_of(oracle::combine(full, red, 1.0)));
  const auto minus = lqo::h2_norm_quadrature(testutil::sparse_of(oracle::combine(full, red, -1.0)));
  const double polar = (plus.value.total - minus.value.total) / 4.0;
  EXPECT_LE(std::abs(ip.total - polar), 1e-4 * (plus.value.total + minus.value.total) / 4.0);
  EXPECT_LE(oracle::relerr(ip.total, polar), 1e-4);
}

TEST(H2, SolveAndResidueFormsAgree)
{
  const auto full = oracle::random_dense(7, 2, 2, 65);
  const auto red = oracle::random_dense(3, 2, 2, 66);
  const auto rs = testutil::dense_of(red);
  const auto rspec = lqo::spectral_decompose(rs);
  const auto fspec = lqo::spectral_decompose(testutil::dense_of(full));
  const auto by_solve = lqo::h2_inner_product(testutil::sparse_of(full), rspec, rs);
  const auto by_dense = lqo::h2_inner_product(testutil::dense_of(full), rspec, rs);
  const auto by_residue = lqo::h2_inner_product(fspec, rspec);
  EXPECT_LE(oracle::relerr(by_solve.total, by_residue.total), 1e-11);
  EXPECT_LE(oracle::relerr(by_dense.total, by_residue.total), 1e-11);
}

TEST(H2, NormScalarAndZero)
{
  const auto red = testutil::dense_of(testutil::scalar(1, 1, 1));
  const auto n2 = lqo::h2_norm(red, lqo::spectral_decompose(red));
  EXPECT_NEAR(n2.total, 0.75, 1e-15);
  EXPECT_NEAR(n2.linear_part, 0.5, 1e-15);
  EXPECT_NEAR(n2.quadratic_part, 0.25, 1e-15);
  EXPECT_NEAR(n2.norm(), std::sqrt(0.75), 1e-15);

  auto d = oracle::random_dense(3, 1, 1, 67);
  d.C.setZero();
  d.M[0].setZero();
  const auto z = testutil::dense_of(d);
  EXPECT_EQ(lqo::h2_norm(z, lqo::spectral_decompose(z)).total, 0.0);
}

TEST(H2, NormMatchesOraclesOnRandomSystems)
{
  for (unsigned seed = 70; seed < 74; ++seed)
  {
    const auto d = oracle::random_dense(4, 2, 2, seed);
    const auto red = testutil::dense_of(d);
    const auto n2 = lqo::h2_norm(red, lqo::spectral_decompose(red));
    const auto gram = oracle::inner_product(d, d);
    EXPECT_LE(oracle::relerr(n2.total, gram.total()), 1e-10);
    EXPECT_LE(oracle::relerr(n2.quadratic_part, gram.quadratic), 1e-10);
    EXPECT_GE(n2.linear_part, -1e-12);
    EXPECT_GE(n2.quadratic_part, -1e-12);
    EXPECT_NEAR(n2.total, n2.linear_part + n2.quadratic_part, 1e-14 * n2.total);
    EXPECT_LE(std::abs(n2.imag_part), 1e-8 * n2.total);
    const auto q = lqo::h2_norm_quadrature(red);
    EXPECT_LE(oracle::relerr(n2.total, q.value.total), 1e-4);
  }
}

TEST(H2, NormFullClosedForms)
{
  EXPECT_NEAR(lqo::h2_norm_full(testutil::sparse_of(testutil::scalar(1, 1, 1))).total, 0.75,
              1e-15);
  const MatrixXd A = Eigen::Vector3d(-1, -2, -3).asDiagonal();
  const auto sys = lqo::make_lqo_system(MatrixXd::Identity(3, 3), A,
                                        MatrixXd(Eigen::Vector3d::UnitX()),
                                        MatrixXd(Eigen::RowVector3d::UnitX()),
                                        {MatrixXd::Zero(3, 3)});
  const auto n2 = lqo::h2_norm_full(sys);
  EXPECT_NEAR(n2.total, 0.5, 1e-15);
  EXPECT_EQ(n2.quadratic_part, 0.0);
}

TEST(H2, NormFullOnBenchmark)
{
  const auto sys = lqo::advection_diffusion({300, 1.0, 1.0});
  const auto n2 = lqo::h2_norm_full(sys);
  EXPECT_TRUE(std::isfinite(n2.total));
  EXPECT_GT(n2.total, 0.0);
  EXPECT_GT(n2.linear_part, 0.0);
  EXPECT_GT(n2.quadratic_part, 0.0);
}

TEST(H2, NormFullCap)
{
  const auto sys = lqo::advection_diffusion({300, 1.0, 1.0});
  EXPECT_LQO_ERROR(lqo::h2_norm_full(sys, 100), ErrorKind::SizeCapExceeded);
}

TEST(H2, ErrorOfIdenticalAndZeroModels)
{
  const auto d = oracle::random_dense(5, 2, 2, 75);
  const auto full = testutil::sparse_of(d);
  const auto same = testutil::dense_of(d);
  const auto e0 = lqo::h2_error(full, same, lqo::spectral_decompose(same));
  EXPECT_LE(e0.relative, 1e-7);

  auto z = oracle::random_dense(2, 2, 2, 76);
  z.B.setZero();
  z.C.setZero();
  for (auto &M : z.M)
  {
    M.setZero();
  }
  const auto zr = testutil::dense_of(z);
  const auto e1 = lqo::h2_error(full, zr, lqo::spectral_decompose(zr));
  const double norm = std::sqrt(oracle::inner_product(d, d).total());
  EXPECT_NEAR(e1.absolute, norm, 1e-12 * norm);
  EXPECT_NEAR(e1.relative, 1.0, 1e-12);
}

TEST(H2, ErrorMatchesAssembledErrorSystem)
{
  for (unsigned seed = 80; seed < 83; ++seed)
  {
    const auto d = oracle::random_dense(6, 2, 2, seed);
    const auto r = oracle::random_dense(3, 2, 2, seed + 100);
    const auto rs = testutil::dense_of(r);
    const auto err = lqo::h2_error(testutil::sparse_of(d), rs, lqo::spectral_decompose(rs));
    const auto diff = oracle::combine(d, r, -1.0);
    const double by_gramian = oracle::inner_product(diff, diff).total();
    const double by_full = lqo::h2_norm_full(testutil::sparse_of(diff)).total;
    EXPECT_LE(oracle::relerr(err.absolute * err.absolute, by_gramian), 1e-8);
    EXPECT_LE(oracle::relerr(err.absolute * err.absolute, by_full), 1e-8);

    const auto ref = lqo::h2_reference(testutil::sparse_of(d));
    const auto err2 = lqo::h2_error(ref, rs, lqo::spectral_decompose(rs));
    EXPECT_NEAR(err2.absolute, err.absolute, 1e-12 * err.absolute);
  }
}

TEST(H2, LinearDegeneration)
{
  auto d = oracle::random_dense(5, 2, 2, 85);
  auto r = oracle::random_dense(2, 2, 2, 86);
  for (auto &M : d.M)
  {
    M.setZero();
  }
  for (auto &M : r.M)
  {
    M.setZero();
  }
  const auto ip = inner(d, r);
  EXPECT_EQ(ip.quadratic_part, 0.0);
  EXPECT_LE(oracle::relerr(ip.linear_part, oracle::inner_product(d, r).linear), 1e-10);
  EXPECT_EQ(lqo::h2_norm_full(testutil::sparse_of(d)).quadratic_part, 0.0);
}

TEST(H2, UnstableReducedModelIsRejected)
{
  const auto full = testutil::sparse_of(oracle::random_dense(4, 1, 1, 87));
  const auto red = testutil::dense_of(testutil::scalar(-1, 1, 1));
  EXPECT_LQO_ERROR(lqo::h2_inner_product(full, lqo::spectral_decompose(red), red),
                   ErrorKind::InstabilityDetected);
}

TEST(Quadrature, ScalarClosedForms)
{
  lqo::QuadratureConfig cfg;
  cfg.log_max = 4.0;
  const auto lin = lqo::h2_norm_quadrature(testutil::sparse_of(testutil::scalar(1, 1, 0)), cfg);
  EXPECT_NEAR(lin.value.total, 0.5, 1e-4);
  const auto quad = lqo::h2_norm_quadrature(testutil::sparse_of(testutil::scalar(1, 0, 1)), cfg);
  EXPECT_NEAR(quad.value.total, 0.25, 1e-4);
}

TEST(Quadrature, MatchesNormFull)
{
  const auto sys = testutil::sparse_of(oracle::random_dense(6, 2, 1, 88));
  const auto q = lqo::h2_norm_quadrature(sys);
  EXPECT_LE(oracle::relerr(q.value.total, lqo::h2_norm_full(sys).total), 1e-4);
  EXPECT_GT(q.points_per_decade, 0);
}

TEST(Quadrature, SizeCap)
{
  const auto sys = lqo::advection_diffusion({300, 1.0, 1.0});
  EXPECT_LQO_ERROR(lqo::h2_norm_quadrature(sys), ErrorKind::SizeCapExceeded);
}

TEST(Bound, Arithmetic)
{
  EXPECT_EQ(lqo::output_error_bound(0.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(lqo::output_error_bound(1.0, 1.0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(lqo::output_error_bound(2.0, 2.0), 2.0 * std::sqrt(4.0 + 16.0));
}
