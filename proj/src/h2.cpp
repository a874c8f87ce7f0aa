// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/h2.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lqo/error.hpp"
#include "lqo/parallel.hpp"
#include "lqo/resolvent.hpp"

namespace lqo
{

namespace
{

constexpr double kImagTol = 1e-8;
constexpr double kClipTol = 1e-14;

void require_stable(const SpectralData &spec, const char *who)
{
  for (Index j = 0; j < spec.size(); ++j)
  {
    if (spec.lambdas(j).real() >= 0.0)
    {
      fail(ErrorKind::InstabilityDetected,
           std::string(who) + ": pole with nonnegative real part " +
               std::to_string(spec.lambdas(j).real()));
    }
  }
}

bool all_real(const SpectralData &s)
{
  return s.lambdas.imag().isZero(0.0) && s.b.imag().isZero(0.0) && s.c.imag().isZero(0.0);
}

H2Breakdown finish(Complex lin, Complex quad, const char *who)
{
  H2Breakdown out;
  out.linear_part = lin.real();
  out.quadratic_part = quad.real();
  out.total = out.linear_part + out.quadratic_part;
  out.imag_part = lin.imag() + quad.imag();
  const double scale = std::abs(lin) + std::abs(quad);
  if (std::abs(out.imag_part) > kImagTol * scale)
  {
    warn(std::string(who) + ": imaginary residual " + std::to_string(out.imag_part) +
         " exceeds tolerance relative to " + std::to_string(scale));
  }
  return out;
}

// Pole-residue inner product with Z(l, i) = b_l^T b~_i / (-lambda~_i - lambda_l).
template <typename Scalar>
H2Breakdown residue_inner(const SpectralData &P, const SpectralData &Q)
{
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  auto pick = [](const Eigen::MatrixXcd &X) -> Mat
  {
    if constexpr (std::is_same_v<Scalar, double>)
    {
      return X.real();
    }
    else
    {
      return X;
    }
  };
  const Index np = P.size();
  const Index nq = Q.size();
  Mat Z = pick(P.b) * pick(Q.b).transpose();
  for (Index i = 0; i < nq; ++i)
  {
    for (Index l = 0; l < np; ++l)
    {
      const Complex d = -Q.lambdas(i) - P.lambdas(l);
      if constexpr (std::is_same_v<Scalar, double>)
      {
        Z(l, i) /= d.real();
      }
      else
      {
        Z(l, i) /= d;
      }
    }
  }
  const Mat CC = pick(P.c).transpose() * pick(Q.c);
  const Scalar lin = CC.cwiseProduct(Z).sum();
  Scalar quad = 0.0;
  for (std::size_t o = 0; o < P.mres.size(); ++o)
  {
    const Mat PZ = pick(P.mres[o]) * Z;
    const Mat ZPZ = Z.transpose() * PZ;
    quad += pick(Q.mres[o]).cwiseProduct(ZPZ).sum();
  }
  return finish(Complex(lin), Complex(quad), "h2_inner_product");
}

template <typename First>
H2Breakdown solve_inner(const First &first, const SpectralData &spec, const ReducedLqoSystem &red)
{
  if (first.inputs() != red.inputs() || first.outputs() != red.outputs())
  {
    fail(ErrorKind::DimensionMismatch, "h2_inner_product: input/output counts differ");
  }
  if (spec.size() != red.order())
  {
    fail(ErrorKind::DimensionMismatch, "h2_inner_product: spectral data does not match reduced order");
  }
  require_stable(spec, "h2_inner_product");
  const Index n = first.order();
  const Index r = spec.size();
  const Eigen::MatrixXcd Bc = first.B().template cast<Complex>();
  Eigen::MatrixXcd X(n, r);
  parallel_for(r,
               [&](Index i)
               {
                 const Index partner = spec.pair_index[static_cast<std::size_t>(i)];
                 if (partner < i)
                 {
                   return;
                 }
                 const Eigen::VectorXcd rhs = Bc * spec.b.row(i).transpose();
                 X.col(i) = shifted_solver(first, -spec.lambdas(i)).solve(rhs);
               });
  for (Index i = 0; i < r; ++i)
  {
    const Index partner = spec.pair_index[static_cast<std::size_t>(i)];
    if (partner < i)
    {
      X.col(i) = X.col(partner).conjugate();
    }
  }
  const Eigen::MatrixXcd CX = first.C().template cast<Complex>() * X;
  const Complex lin = spec.c.cwiseProduct(CX).sum();
  Complex quad = 0.0;
  for (Index o = 0; o < first.outputs(); ++o)
  {
    const Eigen::MatrixXcd MX = first.M(o) * X;
    const Eigen::MatrixXcd XMX = X.transpose() * MX;
    quad += spec.mres[static_cast<std::size_t>(o)].cwiseProduct(XMX).sum();
  }
  return finish(lin, quad, "h2_inner_product");
}

H2Breakdown clip_norm(H2Breakdown b)
{
  const double scale = std::abs(b.linear_part) + std::abs(b.quadratic_part);
  auto clip = [&](double &v)
  {
    if (v < 0.0 && -v <= kClipTol * scale)
    {
      v = 0.0;
    }
  };
  clip(b.linear_part);
  clip(b.quadratic_part);
  b.total = b.linear_part + b.quadratic_part;
  if (b.linear_part < 0.0 || b.quadratic_part < 0.0)
  {
    warn("h2_norm: negative squared-norm contribution beyond roundoff (linear " +
         std::to_string(b.linear_part) + ", quadratic " + std::to_string(b.quadratic_part) + ")");
  }
  return b;
}

// Symmetric grid {-w_K..-w_1, 0, w_1..w_K} with w geometric, and weights of the trapezoidal
// rule in t = log w (spectrally accurate for smooth decaying integrands). The segment [0, w_1]
// uses the linear trapezoid and the tail beyond w_K assumes the 1/w^2 decay of a strictly
// proper rational function.
struct FrequencyGrid
{
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

FrequencyGrid frequency_grid(const QuadratureConfig &cfg, int ppd)
{
  const auto per_side = static_cast<Index>(std::lround((cfg.log_max - cfg.log_min) * ppd)) + 1;
  const double dt = std::log(10.0) * (cfg.log_max - cfg.log_min) / static_cast<double>(per_side - 1);
  FrequencyGrid g;
  g.nodes.resize(2 * per_side + 1);
  g.weights.resize(2 * per_side + 1);
  for (Index i = 0; i < per_side; ++i)
  {
    const double e = cfg.log_min + (cfg.log_max - cfg.log_min) * static_cast<double>(i) /
                                       static_cast<double>(per_side - 1);
    const double v = std::pow(10.0, e);
    double q = v * dt * ((i == 0 || i == per_side - 1) ? 0.5 : 1.0);
    if (i == 0)
    {
      q += 0.5 * v;
    }
    if (i == per_side - 1)
    {
      q += v;
    }
    g.nodes(per_side + 1 + i) = v;
    g.nodes(per_side - 1 - i) = -v;
    g.weights(per_side + 1 + i) = q;
    g.weights(per_side - 1 - i) = q;
  }
  g.nodes(per_side) = 0.0;
  g.weights(per_side) = std::pow(10.0, cfg.log_min);  // 0.5 w_1 from each side
  return g;
}

template <typename S>
H2Breakdown quadrature_once(const S &sys, const QuadratureConfig &cfg, int ppd)
{
  const FrequencyGrid grid = frequency_grid(cfg, ppd);
  const Eigen::VectorXd &w = grid.nodes;
  const Eigen::VectorXd &q = grid.weights;
  const Index N = w.size();
  const Index m = sys.inputs();
  const Index p = sys.outputs();
  const Eigen::MatrixXcd Bc = sys.B().template cast<Complex>();
  const Eigen::MatrixXcd Cc = sys.C().template cast<Complex>();
  std::vector<Eigen::MatrixXcd> X(static_cast<std::size_t>(N));
  // MXall[o] = [M_o X(w_0), ..., M_o X(w_{N-1})], so each 2D row is a single product.
  std::vector<Eigen::MatrixXcd> MXall(static_cast<std::size_t>(p),
                                      Eigen::MatrixXcd(sys.order(), N * m));
  Eigen::VectorXd g1(N);
  parallel_for(N,
               [&](Index i)
               {
                 const auto ui = static_cast<std::size_t>(i);
                 X[ui] = shifted_solver(sys, Complex(0.0, w(i))).solve(Bc);
                 g1(i) = (Cc * X[ui]).squaredNorm();
                 for (Index o = 0; o < p; ++o)
                 {
                   MXall[static_cast<std::size_t>(o)].middleCols(i * m, m) = sys.M(o) * X[ui];
                 }
               });
  const double lin = q.dot(g1) / (2.0 * std::numbers::pi);

  Eigen::VectorXd row(N);
  parallel_for(N,
               [&](Index i)
               {
                 const Eigen::MatrixXcd Xt = X[static_cast<std::size_t>(i)].transpose();
                 double acc = 0.0;
                 for (Index o = 0; o < p; ++o)
                 {
                   const Eigen::MatrixXcd R = Xt * MXall[static_cast<std::size_t>(o)];
                   for (Index j = 0; j < N; ++j)
                   {
                     acc += q(j) * R.middleCols(j * m, m).squaredNorm();
                   }
                 }
                 row(i) = acc;
               });
  const double quad = q.dot(row) / (4.0 * std::numbers::pi * std::numbers::pi);
  H2Breakdown out;
  out.linear_part = lin;
  out.quadratic_part = quad;
  out.total = lin + quad;
  return out;
}

template <typename S>
QuadratureResult quadrature(const S &sys, const QuadratureConfig &cfg)
{
  if (sys.order() > kSmallDenseCap)
  {
    fail(ErrorKind::SizeCapExceeded,
         "h2_norm_quadrature is limited to order " + std::to_string(kSmallDenseCap));
  }
  if (!(cfg.log_max > cfg.log_min) || cfg.points_per_decade < 1)
  {
    fail(ErrorKind::InvalidConfig, "quadrature grid needs log_max > log_min and >= 1 point per decade");
  }
  int ppd = cfg.points_per_decade;
  H2Breakdown prev = quadrature_once(sys, cfg, ppd);
  QuadratureResult res;
  for (int k = 0; k < cfg.max_refinements; ++k)
  {
    ppd *= 2;
    const H2Breakdown next = quadrature_once(sys, cfg, ppd);
    res.value = next;
    res.points_per_decade = ppd;
    res.estimated_error = std::abs(next.total - prev.total);
    prev = next;
    if (res.estimated_error <= cfg.rtol * std::abs(next.total))
    {
      return res;
    }
  }
  if (cfg.max_refinements == 0)
  {
    res.value = prev;
    res.points_per_decade = ppd;
    res.estimated_error = std::abs(prev.total);
  }
  return res;
}

}  // namespace

double H2Breakdown::norm() const
{
  return std::sqrt(std::max(0.0, total));
}

H2Breakdown h2_inner_product(const LqoSystem &first, const SpectralData &red_spec,
                             const ReducedLqoSystem &red_sys)
{
  return solve_inner(first, red_spec, red_sys);
}

H2Breakdown h2_inner_product(const ReducedLqoSystem &first, const SpectralData &red_spec,
                             const ReducedLqoSystem &red_sys)
{
  return solve_inner(first, red_spec, red_sys);
}

H2Breakdown h2_inner_product(const SpectralData &first, const SpectralData &second)
{
  if (first.b.cols() != second.b.cols() || first.c.rows() != second.c.rows() ||
      first.mres.size() != second.mres.size())
  {
    fail(ErrorKind::DimensionMismatch, "h2_inner_product: input/output counts differ");
  }
  require_stable(first, "h2_inner_product");
  require_stable(second, "h2_inner_product");
  if (all_real(first) && all_real(second))
  {
    return residue_inner<double>(first, second);
  }
  return residue_inner<Complex>(first, second);
}

H2Breakdown h2_norm(const SpectralData &spec)
{
  return clip_norm(h2_inner_product(spec, spec));
}

H2Breakdown h2_norm(const ReducedLqoSystem &red_sys, const SpectralData &red_spec)
{
  if (red_spec.size() != red_sys.order())
  {
    fail(ErrorKind::DimensionMismatch, "h2_norm: spectral data does not match reduced order");
  }
  return h2_norm(red_spec);
}

H2Reference h2_reference(const LqoSystem &sys, Index cap)
{
  SpectralOptions opts;
  opts.keep_vectors = false;
  H2Reference ref;
  ref.spec = spectral_decompose(sys, opts, cap);
  ref.norm2 = h2_norm(ref.spec);
  return ref;
}

H2Breakdown h2_norm_full(const LqoSystem &sys, Index cap)
{
  return h2_reference(sys, cap).norm2;
}

H2Error h2_error(const H2Reference &ref, const ReducedLqoSystem &red_sys,
                 const SpectralData &red_spec)
{
  H2Error e;
  e.full_norm2 = ref.norm2;
  e.cross = h2_inner_product(ref.spec, red_spec);
  e.reduced_norm2 = h2_norm(red_sys, red_spec);
  e.raw_square = e.full_norm2.total - 2.0 * e.cross.total + e.reduced_norm2.total;
  if (e.raw_square < 0.0)
  {
    if (-e.raw_square > kClipTol * e.full_norm2.total)
    {
      warn("h2_error: negative squared error " + std::to_string(e.raw_square) +
           " exceeds roundoff level; clipped to zero");
    }
    else
    {
      warn("h2_error: squared error below roundoff level; clipped to zero");
    }
  }
  e.absolute = std::sqrt(std::max(0.0, e.raw_square));
  e.relative = e.full_norm2.total > 0.0 ? e.absolute / std::sqrt(e.full_norm2.total) : 0.0;
  return e;
}

H2Error h2_error(const LqoSystem &full, const ReducedLqoSystem &red_sys,
                 const SpectralData &red_spec)
{
  return h2_error(h2_reference(full), red_sys, red_spec);
}

QuadratureResult h2_norm_quadrature(const LqoSystem &sys, const QuadratureConfig &cfg)
{
  return quadrature(sys, cfg);
}

QuadratureResult h2_norm_quadrature(const ReducedLqoSystem &sys, const QuadratureConfig &cfg)
{
  return quadrature(sys, cfg);
}

double output_error_bound(double h2_error_value, double u_l2_norm)
{
  const double u2 = u_l2_norm * u_l2_norm;
  return h2_error_value * std::sqrt(u2 + u2 * u2);
}

}  // namespace lqo
