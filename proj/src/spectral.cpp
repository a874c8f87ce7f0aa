// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/spectral.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <lapacke.h>

#include "lqo/error.hpp"

namespace lqo
{

namespace detail
{

RealEigen real_eig(Eigen::MatrixXd A, bool want_vectors)
{
  const Index n = A.rows();
  const auto ln = static_cast<lapack_int>(n);
  Eigen::VectorXd wr(n), wi(n);
  Eigen::MatrixXd VR(want_vectors ? n : 1, want_vectors ? n : 1);
  double vl_dummy = 0.0;
  const lapack_int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', ln, A.data(), ln,
                    wr.data(), wi.data(), &vl_dummy, 1, VR.data(),
                    want_vectors ? ln : 1);
  if (info != 0)
  {
    fail(ErrorKind::EigSolverFailure, "dgeev failed with info = " + std::to_string(info));
  }
  RealEigen out;
  out.values.resize(n);
  for (Index j = 0; j < n; ++j)
  {
    out.values(j) = Complex(wr(j), wi(j));
  }
  if (!want_vectors)
  {
    return out;
  }
  out.vectors.resize(n, n);
  for (Index j = 0; j < n; ++j)
  {
    if (wi(j) == 0.0)
    {
      out.vectors.col(j) = VR.col(j).cast<Complex>();
    }
    else
    {
      // dgeev stores a pair as (Re, Im) in consecutive columns, positive Im first.
      out.vectors.col(j).real() = VR.col(j);
      out.vectors.col(j).imag() = VR.col(j + 1);
      out.vectors.col(j + 1) = out.vectors.col(j).conjugate();
      out.values(j + 1) = std::conj(out.values(j));
      ++j;
    }
  }
  return out;
}

}  // namespace detail

namespace
{

bool pole_less(Complex a, Complex b)
{
  if (a.real() != b.real())
  {
    return a.real() < b.real();
  }
  if (std::abs(a.imag()) != std::abs(b.imag()))
  {
    return std::abs(a.imag()) < std::abs(b.imag());
  }
  return a.imag() > b.imag();
}

// Scales v to unit norm with its largest-magnitude entry real and positive.
void normalize_phase(Eigen::Ref<Eigen::VectorXcd> v)
{
  Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex pivot = v(imax);
  const double nrm = v.norm();
  v *= std::conj(pivot) / (std::abs(pivot) * nrm);
}

struct DenseInput
{
  Eigen::MatrixXd EinvA;
  Eigen::MatrixXd EinvB;
};

SpectralData decompose(const DenseInput &in, const Eigen::MatrixXd &C,
                       const std::function<Eigen::MatrixXcd(Index, const Eigen::MatrixXcd &)> &Mtimes,
                       Index p, const SpectralOptions &opts)
{
  const Index n = in.EinvA.rows();
  detail::RealEigen eig = detail::real_eig(in.EinvA, true);

  // Sort whole conjugate pairs, keeping the +Im member first.
  std::vector<Index> order = pole_order(eig.values);
  SpectralData out;
  out.lambdas.resize(n);
  Eigen::MatrixXcd S(n, n);
  for (Index j = 0; j < n; ++j)
  {
    out.lambdas(j) = eig.values(order[static_cast<std::size_t>(j)]);
    S.col(j) = eig.vectors.col(order[static_cast<std::size_t>(j)]);
  }
  eig.vectors.resize(0, 0);

  out.pair_index.resize(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j)
  {
    const auto uj = static_cast<std::size_t>(j);
    if (out.lambdas(j).imag() == 0.0)
    {
      out.pair_index[uj] = j;
      S.col(j) = S.col(j).real().cast<Complex>();
      normalize_phase(S.col(j));
      continue;
    }
    if (j + 1 >= n || out.lambdas(j + 1) != std::conj(out.lambdas(j)) || out.lambdas(j).imag() < 0)
    {
      fail(ErrorKind::NondiagonalizablePencil, "eigenvalues do not form adjacent conjugate pairs");
    }
    normalize_phase(S.col(j));
    S.col(j + 1) = S.col(j).conjugate();
    out.pair_index[uj] = j + 1;
    out.pair_index[uj + 1] = j;
    ++j;
  }

  const double scale = out.lambdas.cwiseAbs().maxCoeff();
  const double gap = min_pole_gap(out.lambdas);
  if (opts.require_separation && gap <= opts.separation_tol * scale)
  {
    fail(ErrorKind::RepeatedPoles, "minimum pole gap " + std::to_string(gap) +
                                       " is below tolerance relative to max |lambda| = " +
                                       std::to_string(scale));
  }

  const Eigen::PartialPivLU<Eigen::MatrixXcd> Slu(S);
  const double rcond = Slu.rcond();
  if (!(rcond >= opts.min_rcond))
  {
    fail(ErrorKind::NondiagonalizablePencil,
         "eigenvector matrix is ill-conditioned (rcond = " + std::to_string(rcond) + ")");
  }

  // T^T = S^{-1} E^{-1}, so T^T E S = I and b_j^T = t_j^T B is row j of S^{-1} E^{-1} B.
  Eigen::MatrixXcd b = Slu.solve(in.EinvB.cast<Complex>());
  Eigen::MatrixXcd c = C.cast<Complex>() * S;
  std::vector<Eigen::MatrixXcd> mres(static_cast<std::size_t>(p));
  for (Index k = 0; k < p; ++k)
  {
    const Eigen::MatrixXcd MS = Mtimes(k, S);
    Eigen::MatrixXcd R = S.transpose() * MS;
    mres[static_cast<std::size_t>(k)] = 0.5 * (R + R.transpose().eval());
  }

  // Enforce exact conjugate closure: X <- (X + conj(X∘π)) / 2.
  const auto &pi = out.pair_index;
  out.b.resize(b.rows(), b.cols());
  for (Index j = 0; j < n; ++j)
  {
    out.b.row(j) = 0.5 * (b.row(j) + b.row(pi[static_cast<std::size_t>(j)]).conjugate());
  }
  out.c.resize(c.rows(), c.cols());
  for (Index j = 0; j < n; ++j)
  {
    out.c.col(j) = 0.5 * (c.col(j) + c.col(pi[static_cast<std::size_t>(j)]).conjugate());
  }
  out.mres.resize(static_cast<std::size_t>(p));
  for (Index k = 0; k < p; ++k)
  {
    const Eigen::MatrixXcd &R = mres[static_cast<std::size_t>(k)];
    Eigen::MatrixXcd &F = out.mres[static_cast<std::size_t>(k)];
    F.resize(n, n);
    for (Index l = 0; l < n; ++l)
    {
      const Index pl = pi[static_cast<std::size_t>(l)];
      for (Index j = 0; j < n; ++j)
      {
        F(j, l) = 0.5 * (R(j, l) + std::conj(R(pi[static_cast<std::size_t>(j)], pl)));
      }
    }
  }
  if (opts.keep_vectors)
  {
    out.right_vectors = std::move(S);
  }
  return out;
}

}  // namespace

Eigen::VectorXcd SpectralData::m(Index j, Index l) const
{
  Eigen::VectorXcd v(static_cast<Index>(mres.size()));
  for (std::size_t k = 0; k < mres.size(); ++k)
  {
    v(static_cast<Index>(k)) = mres[k](j, l);
  }
  return v;
}

std::vector<Index> pole_order(const Eigen::VectorXcd &poles)
{
  std::vector<Index> idx(static_cast<std::size_t>(poles.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](Index a, Index b) { return pole_less(poles(a), poles(b)); });
  return idx;
}

Eigen::VectorXcd sorted_poles(const Eigen::VectorXcd &poles)
{
  const auto idx = pole_order(poles);
  Eigen::VectorXcd out(poles.size());
  for (Index j = 0; j < poles.size(); ++j)
  {
    out(j) = poles(idx[static_cast<std::size_t>(j)]);
  }
  return out;
}

double min_pole_gap(const Eigen::VectorXcd &poles)
{
  double gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < poles.size(); ++i)
  {
    for (Index j = i + 1; j < poles.size(); ++j)
    {
      gap = std::min(gap, std::abs(poles(i) - poles(j)));
    }
  }
  return gap;
}

SpectralData spectral_decompose(const ReducedLqoSystem &red, const SpectralOptions &opts)
{
  const Index r = red.order();
  DenseInput in;
  const Eigen::PartialPivLU<Eigen::MatrixXd> Elu(red.E());
  if (!(Elu.rcond() > 1e-14))
  {
    fail(ErrorKind::SingularEr, "reduced E is singular (rcond = " + std::to_string(Elu.rcond()) + ")");
  }
  in.EinvA = Elu.solve(red.A());
  in.EinvB = Elu.solve(red.B());
  if (!in.EinvA.allFinite() || !in.EinvB.allFinite())
  {
    fail(ErrorKind::SingularEr, "reduced E solve produced non-finite values");
  }
  (void)r;
  return decompose(
      in, red.C(),
      [&](Index k, const Eigen::MatrixXcd &S) -> Eigen::MatrixXcd { return red.M(k) * S; },
      red.outputs(), opts);
}

SpectralData spectral_decompose(const LqoSystem &sys, const SpectralOptions &opts, Index cap)
{
  if (sys.order() > cap)
  {
    fail(ErrorKind::SizeCapExceeded,
         "dense eigendecomposition is limited to order " + std::to_string(cap));
  }
  DenseInput in;
  const Eigen::MatrixXd A = Eigen::MatrixXd(sys.A());
  in.EinvA = sys.identity_E() ? A : sys.solve_E(A);
  in.EinvB = sys.identity_E() ? sys.B() : sys.solve_E(sys.B());
  return decompose(
      in, sys.C(),
      [&](Index k, const Eigen::MatrixXcd &S) -> Eigen::MatrixXcd { return sys.M(k) * S; },
      sys.outputs(), opts);
}

Eigen::VectorXcd pencil_eigenvalues(const ReducedLqoSystem &red)
{
  const Eigen::PartialPivLU<Eigen::MatrixXd> Elu(red.E());
  if (!(Elu.rcond() > 1e-14))
  {
    fail(ErrorKind::SingularEr, "reduced E is singular");
  }
  return detail::real_eig(Elu.solve(red.A()), false).values;
}

Eigen::VectorXcd pencil_eigenvalues(const LqoSystem &sys, Index cap)
{
  if (sys.order() > cap)
  {
    fail(ErrorKind::SizeCapExceeded, "dense eigenvalues are limited to order " + std::to_string(cap));
  }
  const Eigen::MatrixXd A = Eigen::MatrixXd(sys.A());
  return detail::real_eig(sys.identity_E() ? A : sys.solve_E(A), false).values;
}

bool is_asymptotically_stable(const ReducedLqoSystem &red, double margin)
{
  return pencil_eigenvalues(red).real().maxCoeff() < -margin;
}

bool is_asymptotically_stable(const LqoSystem &sys, Index cap, double margin)
{
  return pencil_eigenvalues(sys, cap).real().maxCoeff() < -margin;
}

}  // namespace lqo
