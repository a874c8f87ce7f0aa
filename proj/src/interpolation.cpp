// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/interpolation.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>

#include "lqo/error.hpp"
#include "lqo/parallel.hpp"
#include "lqo/resolvent.hpp"

namespace lqo
{

namespace
{

constexpr double kRealPointTol = 1e-14;
constexpr double kPairTol = 1e-10;
constexpr double kImagTruncTol = 1e-10;

std::string fmt_g(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool close(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double rtol)
{
  const double scale = std::max(a.norm(), b.norm());
  return (a - b).norm() <= rtol * scale;
}

template <typename S>
void check_data_dims(const S &sys, const InterpolationData &data)
{
  const Index r = data.size();
  if (data.right_dirs.rows() != sys.inputs() || data.right_dirs.cols() != r)
  {
    fail(ErrorKind::DimensionMismatch, "right directions must be m x r");
  }
  if (data.left_dirs.rows() != sys.outputs() || data.left_dirs.cols() != r)
  {
    fail(ErrorKind::DimensionMismatch, "left directions must be p x r");
  }
  if (static_cast<Index>(data.q.size()) != sys.outputs())
  {
    fail(ErrorKind::DimensionMismatch, "q must have one r x r matrix per output");
  }
  for (const auto &qo : data.q)
  {
    if (qo.rows() != r || qo.cols() != r)
    {
      fail(ErrorKind::DimensionMismatch, "q must have one r x r matrix per output");
    }
  }
  if (static_cast<Index>(data.pair_index.size()) != r)
  {
    fail(ErrorKind::DimensionMismatch, "pair_index must have r entries");
  }
}

// Index of the slot whose solve is reused for slot k, or k itself.
std::vector<Index> solve_owner(const InterpolationData &data)
{
  std::vector<Index> owner(static_cast<std::size_t>(data.size()));
  const bool reuse = is_conjugate_closed(data);
  for (Index k = 0; k < data.size(); ++k)
  {
    const Index pk = data.pair_index[static_cast<std::size_t>(k)];
    owner[static_cast<std::size_t>(k)] = (reuse && pk >= 0 && pk < k) ? pk : k;
  }
  return owner;
}

template <typename S>
using SolverOf = decltype(shifted_solver(std::declval<const S &>(), Complex{}));

template <typename S>
Eigen::MatrixXcd w_rhs(const S &sys, const InterpolationData &data, const Eigen::MatrixXcd &V)
{
  Eigen::MatrixXcd rhs = sys.C().transpose().template cast<Complex>() * data.left_dirs;
  for (Index o = 0; o < sys.outputs(); ++o)
  {
    const Eigen::MatrixXcd MV = sys.M(o) * V;
    rhs += 2.0 * MV * data.q[static_cast<std::size_t>(o)].transpose();
  }
  return rhs;
}

template <typename S>
PrimitiveBases bases_impl(const S &sys, const InterpolationData &data, bool want_v, bool want_w,
                          const Eigen::MatrixXcd *given_v, double rank_tol = kRankTol)
{
  check_data_dims(sys, data);
  const Index r = data.size();
  const auto owner = solve_owner(data);
  std::vector<std::optional<SolverOf<S>>> solvers(static_cast<std::size_t>(r));
  const Eigen::MatrixXcd Bc = sys.B().template cast<Complex>();

  PrimitiveBases out;
  if (given_v)
  {
    if (given_v->rows() != sys.order() || given_v->cols() != r)
    {
      fail(ErrorKind::DimensionMismatch, "v_columns must be n x r");
    }
    out.V = *given_v;
  }
  else
  {
    out.V.resize(sys.order(), r);
  }
  parallel_for(r,
               [&](Index k)
               {
                 const auto uk = static_cast<std::size_t>(k);
                 if (owner[uk] != k)
                 {
                   return;
                 }
                 solvers[uk].emplace(shifted_solver(sys, data.sigmas(k)));
                 if (!given_v)
                 {
                   out.V.col(k) = solvers[uk]->solve(Bc * data.right_dirs.col(k));
                 }
               });
  if (!given_v)
  {
    for (Index k = 0; k < r; ++k)
    {
      const Index o = owner[static_cast<std::size_t>(k)];
      if (o != k)
      {
        out.V.col(k) = out.V.col(o).conjugate();
      }
    }
    check_full_rank(out.V, "V", rank_tol);
  }
  if (!want_w)
  {
    return out;
  }
  const Eigen::MatrixXcd rhs = w_rhs(sys, data, out.V);
  out.W.resize(sys.order(), r);
  parallel_for(r,
               [&](Index k)
               {
                 const auto uk = static_cast<std::size_t>(k);
                 if (owner[uk] == k)
                 {
                   out.W.col(k) = solvers[uk]->solve_transpose(rhs.col(k));
                 }
               });
  for (Index k = 0; k < r; ++k)
  {
    const Index o = owner[static_cast<std::size_t>(k)];
    if (o != k)
    {
      out.W.col(k) = out.W.col(o).conjugate();
    }
  }
  check_full_rank(out.W, "W", rank_tol);
  if (!want_v)
  {
    out.V.resize(0, 0);
  }
  return out;
}

template <typename S>
ReducedLqoSystem project_impl(const S &sys, const Eigen::MatrixXd &V0, const Eigen::MatrixXd &W0,
                              double rank_tol)
{
  if (V0.rows() != sys.order() || W0.rows() != sys.order() || V0.cols() != W0.cols())
  {
    fail(ErrorKind::DimensionMismatch, "V and W must both be n x r");
  }
  const Eigen::MatrixXd V = orthonormalize(V0, rank_tol);
  const Eigen::MatrixXd W = orthonormalize(W0, rank_tol);
  const Eigen::MatrixXd EV = sys.E() * V;
  const Eigen::MatrixXd AV = sys.A() * V;
  std::vector<Eigen::MatrixXd> Mr;
  Mr.reserve(static_cast<std::size_t>(sys.outputs()));
  for (Index o = 0; o < sys.outputs(); ++o)
  {
    const Eigen::MatrixXd MV = sys.M(o) * V;
    Mr.emplace_back(V.transpose() * MV);
  }
  return make_reduced_system(W.transpose() * EV, W.transpose() * AV, W.transpose() * sys.B(),
                             sys.C() * V, std::move(Mr));
}

// Per-point quantities of one realization entering the interpolation conditions.
struct ConditionValues
{
  std::vector<Eigen::VectorXcd> lin;        // C v_k
  std::vector<Eigen::VectorXcd> quad;       // [v_j^T M_o v_k]_o, index j*r + k
  std::vector<Eigen::VectorXcd> left;       // m-vector per k
  std::vector<Complex> hermite;             // scalar per k
  Eigen::VectorXd left_scale, hermite_scale;
};

template <typename S>
ConditionValues condition_values(const S &sys, const InterpolationData &data)
{
  const Index r = data.size();
  const Index p = sys.outputs();
  const Index m = sys.inputs();
  const Index n = sys.order();
  const Eigen::MatrixXcd Bc = sys.B().template cast<Complex>();
  const Eigen::MatrixXcd Cc = sys.C().template cast<Complex>();

  std::vector<Eigen::MatrixXcd> X(static_cast<std::size_t>(r)), dX(static_cast<std::size_t>(r));
  parallel_for(r,
               [&](Index k)
               {
                 const auto uk = static_cast<std::size_t>(k);
                 const auto solver = shifted_solver(sys, data.sigmas(k));
                 X[uk] = solver.solve(Bc);
                 const Eigen::MatrixXcd EX = sys.E() * X[uk];
                 dX[uk] = -solver.solve(EX);
               });
  Eigen::MatrixXcd V(n, r), dV(n, r);
  for (Index k = 0; k < r; ++k)
  {
    V.col(k) = X[static_cast<std::size_t>(k)] * data.right_dirs.col(k);
    dV.col(k) = dX[static_cast<std::size_t>(k)] * data.right_dirs.col(k);
  }
  std::vector<Eigen::MatrixXcd> MV(static_cast<std::size_t>(p));
  std::vector<Eigen::MatrixXcd> VMV(static_cast<std::size_t>(p)), dVMV(static_cast<std::size_t>(p)),
      VMdV(static_cast<std::size_t>(p));
  for (Index o = 0; o < p; ++o)
  {
    const auto uo = static_cast<std::size_t>(o);
    MV[uo] = sys.M(o) * V;
    const Eigen::MatrixXcd MdV = sys.M(o) * dV;
    VMV[uo] = V.transpose() * MV[uo];
    dVMV[uo] = dV.transpose() * MV[uo];
    VMdV[uo] = V.transpose() * MdV;
  }

  ConditionValues cv;
  cv.lin.resize(static_cast<std::size_t>(r));
  cv.quad.resize(static_cast<std::size_t>(r * r));
  cv.left.resize(static_cast<std::size_t>(r));
  cv.hermite.resize(static_cast<std::size_t>(r));
  cv.left_scale = Eigen::VectorXd::Zero(r);
  cv.hermite_scale = Eigen::VectorXd::Zero(r);
  for (Index k = 0; k < r; ++k)
  {
    const auto uk = static_cast<std::size_t>(k);
    cv.lin[uk] = Cc * V.col(k);
    for (Index j = 0; j < r; ++j)
    {
      Eigen::VectorXcd v(p);
      for (Index o = 0; o < p; ++o)
      {
        v(o) = VMV[static_cast<std::size_t>(o)](j, k);
      }
      cv.quad[static_cast<std::size_t>(j * r + k)] = v;
    }

    // Left mixed condition, one canonical input direction e_i at a time.
    const Eigen::VectorXcd lin_left = (data.left_dirs.col(k).transpose() * Cc * X[uk]).transpose();
    Eigen::VectorXcd left = lin_left;
    double left_scale = lin_left.norm();
    std::vector<Eigen::MatrixXcd> XtMV(static_cast<std::size_t>(p)), VtMX(static_cast<std::size_t>(p));
    for (Index o = 0; o < p; ++o)
    {
      const auto uo = static_cast<std::size_t>(o);
      XtMV[uo] = X[uk].transpose() * MV[uo];  // (i, l) = G2(s_k, s_l)(e_i ⊗ r_l)
      const Eigen::MatrixXcd MX = sys.M(o) * X[uk];
      VtMX[uo] = V.transpose() * MX;          // (l, i) = G2(s_l, s_k)(r_l ⊗ e_i)
    }
    Complex herm = (data.left_dirs.col(k).transpose() * (Cc * dV.col(k)))(0);
    double herm_scale = std::abs(herm);
    for (Index l = 0; l < r; ++l)
    {
      Eigen::VectorXcd t1 = Eigen::VectorXcd::Zero(m), t2 = Eigen::VectorXcd::Zero(m);
      Complex h1 = 0.0, h2 = 0.0;
      for (Index o = 0; o < p; ++o)
      {
        const auto uo = static_cast<std::size_t>(o);
        const Complex qkl = data.q[uo](k, l);
        const Complex qlk = data.q[uo](l, k);
        t1 += qkl * XtMV[uo].col(l);
        t2 += qlk * VtMX[uo].row(l).transpose();
        h1 += qkl * dVMV[uo](k, l);
        h2 += qlk * VMdV[uo](l, k);
      }
      left += t1 + t2;
      left_scale += t1.norm() + t2.norm();
      herm += h1 + h2;
      herm_scale += std::abs(h1) + std::abs(h2);
    }
    cv.left[uk] = left;
    cv.left_scale(k) = left_scale;
    cv.hermite[uk] = herm;
    cv.hermite_scale(k) = herm_scale;
  }
  return cv;
}

double rel(double abs, double scale)
{
  if (abs == 0.0)
  {
    return 0.0;
  }
  return scale > 0.0 ? abs / scale : abs;
}

template <typename F>
InterpResiduals verify_impl(const F &full, const ReducedLqoSystem &red, const InterpolationData &data)
{
  check_data_dims(full, data);
  check_data_dims(red, data);
  const Index r = data.size();
  const ConditionValues a = condition_values(full, data);
  const ConditionValues b = condition_values(red, data);
  InterpResiduals res;
  res.right_linear.resize(r);
  res.right_linear_rel.resize(r);
  res.right_quadratic.resize(r, r);
  res.right_quadratic_rel.resize(r, r);
  res.left_mixed.resize(r);
  res.left_mixed_rel.resize(r);
  res.hermite_mixed.resize(r);
  res.hermite_mixed_rel.resize(r);
  for (Index k = 0; k < r; ++k)
  {
    const auto uk = static_cast<std::size_t>(k);
    res.right_linear(k) = (a.lin[uk] - b.lin[uk]).norm();
    res.right_linear_rel(k) = rel(res.right_linear(k), a.lin[uk].norm());
    for (Index j = 0; j < r; ++j)
    {
      const auto ujk = static_cast<std::size_t>(j * r + k);
      res.right_quadratic(j, k) = (a.quad[ujk] - b.quad[ujk]).norm();
      res.right_quadratic_rel(j, k) = rel(res.right_quadratic(j, k), a.quad[ujk].norm());
    }
    res.left_mixed(k) = (a.left[uk] - b.left[uk]).norm();
    res.left_mixed_rel(k) = rel(res.left_mixed(k), a.left_scale(k));
    res.hermite_mixed(k) = std::abs(a.hermite[uk] - b.hermite[uk]);
    res.hermite_mixed_rel(k) = rel(res.hermite_mixed(k), a.hermite_scale(k));
  }
  return res;
}

}  // namespace

Eigen::VectorXcd InterpolationData::qvec(Index j, Index k) const
{
  Eigen::VectorXcd v(static_cast<Index>(q.size()));
  for (std::size_t o = 0; o < q.size(); ++o)
  {
    v(static_cast<Index>(o)) = q[o](j, k);
  }
  return v;
}

std::vector<Index> infer_pairs(const Eigen::VectorXcd &sigmas)
{
  const Index r = sigmas.size();
  std::vector<Index> pairs(static_cast<std::size_t>(r), -1);
  for (Index k = 0; k < r; ++k)
  {
    const Complex s = sigmas(k);
    if (std::abs(s.imag()) <= kRealPointTol * std::abs(s))
    {
      pairs[static_cast<std::size_t>(k)] = k;
    }
    else if (k + 1 < r && std::abs(sigmas(k + 1) - std::conj(s)) <= kPairTol * std::abs(s))
    {
      pairs[static_cast<std::size_t>(k)] = k + 1;
      pairs[static_cast<std::size_t>(k + 1)] = k;
      ++k;
    }
  }
  return pairs;
}

InterpolationData make_interpolation_data(Eigen::VectorXcd sigmas, Eigen::MatrixXcd right_dirs,
                                          Eigen::MatrixXcd left_dirs,
                                          std::vector<Eigen::MatrixXcd> q)
{
  const Index r = sigmas.size();
  if (r < 1 || right_dirs.cols() != r || left_dirs.cols() != r ||
      static_cast<Index>(q.size()) != left_dirs.rows())
  {
    fail(ErrorKind::DimensionMismatch, "interpolation data: inconsistent sizes");
  }
  for (auto &qo : q)
  {
    if (qo.rows() != r || qo.cols() != r)
    {
      fail(ErrorKind::DimensionMismatch, "interpolation data: q blocks must be r x r");
    }
    qo = (0.5 * (qo + qo.transpose())).eval();
  }
  InterpolationData d;
  d.pair_index = infer_pairs(sigmas);
  d.sigmas = std::move(sigmas);
  d.right_dirs = std::move(right_dirs);
  d.left_dirs = std::move(left_dirs);
  d.q = std::move(q);
  return d;
}

InterpolationData mirror_data(const SpectralData &spec)
{
  InterpolationData d;
  d.sigmas = -spec.lambdas;
  d.right_dirs = spec.b.transpose();
  d.left_dirs = spec.c;
  d.q = spec.mres;
  d.pair_index = spec.pair_index;
  return d;
}

bool is_conjugate_closed(const InterpolationData &data, double rtol)
{
  const Index r = data.size();
  if (static_cast<Index>(data.pair_index.size()) != r)
  {
    return false;
  }
  for (Index k = 0; k < r; ++k)
  {
    const Index pk = data.pair_index[static_cast<std::size_t>(k)];
    if (pk < 0 || pk >= r || data.pair_index[static_cast<std::size_t>(pk)] != k)
    {
      return false;
    }
    if (pk != k && std::abs(pk - k) != 1)
    {
      return false;
    }
    const double sk = std::abs(data.sigmas(k));
    if (std::abs(data.sigmas(pk) - std::conj(data.sigmas(k))) > rtol * sk)
    {
      return false;
    }
    if (!close(data.right_dirs.col(pk), data.right_dirs.col(k).conjugate(), rtol) ||
        !close(data.left_dirs.col(pk), data.left_dirs.col(k).conjugate(), rtol))
    {
      return false;
    }
  }
  for (const auto &qo : data.q)
  {
    const double scale = qo.norm();
    for (Index j = 0; j < r; ++j)
    {
      const Index pj = data.pair_index[static_cast<std::size_t>(j)];
      for (Index k = 0; k < r; ++k)
      {
        const Index pk = data.pair_index[static_cast<std::size_t>(k)];
        if (std::abs(qo(pj, pk) - std::conj(qo(j, k))) > rtol * scale)
        {
          return false;
        }
      }
    }
  }
  return true;
}

void validate_conjugate_closure(const InterpolationData &data, double rtol)
{
  if (!is_conjugate_closed(data, rtol))
  {
    fail(ErrorKind::ConjugacyViolation,
         "interpolation data are not closed under conjugation with adjacent pairs");
  }
}

void check_full_rank(const Eigen::MatrixXcd &X, const char *what, double rtol)
{
  const Index r = X.cols();
  if (r > X.rows())
  {
    fail(ErrorKind::RankDeficient, std::string(what) + " has more columns than rows");
  }
  Eigen::MatrixXcd Y = X;
  for (Index k = 0; k < r; ++k)
  {
    const double nrm = Y.col(k).norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm))
    {
      fail(ErrorKind::RankDeficient, std::string(what) + " has a zero or non-finite column");
    }
    Y.col(k) /= nrm;
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Y);
  const Eigen::MatrixXcd R = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(R).singularValues();
  if (sv(r - 1) < rtol * sv(0))
  {
    fail(ErrorKind::RankDeficient, std::string(what) + " is numerically rank deficient (sigma_min/sigma_max = " +
                                       fmt_g(sv(r - 1) / sv(0)) + ")");
  }
}

Eigen::MatrixXcd build_v_basis(const LqoSystem &sys, const InterpolationData &data)
{
  return bases_impl(sys, data, true, false, nullptr).V;
}

Eigen::MatrixXcd build_v_basis(const ReducedLqoSystem &sys, const InterpolationData &data)
{
  return bases_impl(sys, data, true, false, nullptr).V;
}

Eigen::MatrixXcd build_w_basis(const LqoSystem &sys, const InterpolationData &data,
                               const Eigen::MatrixXcd &v_columns)
{
  return bases_impl(sys, data, false, true, &v_columns).W;
}

Eigen::MatrixXcd build_w_basis(const ReducedLqoSystem &sys, const InterpolationData &data,
                               const Eigen::MatrixXcd &v_columns)
{
  return bases_impl(sys, data, false, true, &v_columns).W;
}

PrimitiveBases build_bases(const LqoSystem &sys, const InterpolationData &data, double rank_tol)
{
  return bases_impl(sys, data, true, true, nullptr, rank_tol);
}

PrimitiveBases build_bases(const ReducedLqoSystem &sys, const InterpolationData &data, double rank_tol)
{
  return bases_impl(sys, data, true, true, nullptr, rank_tol);
}

RealBases realify_bases(const Eigen::MatrixXcd &v_prim, const Eigen::MatrixXcd &w_prim,
                        const InterpolationData &data)
{
  const Index r = data.size();
  if (v_prim.cols() != r || w_prim.cols() != r || v_prim.rows() != w_prim.rows() ||
      static_cast<Index>(data.pair_index.size()) != r)
  {
    fail(ErrorKind::DimensionMismatch, "realify_bases: bases must have r columns");
  }
  RealBases out;
  out.V.resize(v_prim.rows(), r);
  out.W.resize(w_prim.rows(), r);
  auto real_column = [](const Eigen::MatrixXcd &X, Index k) -> Eigen::VectorXd
  {
    const double im = X.col(k).imag().norm();
    if (im > kImagTruncTol * X.col(k).norm())
    {
      fail(ErrorKind::ConjugacyViolation,
           "column " + std::to_string(k) + " belongs to a real point but is not real");
    }
    return X.col(k).real();
  };
  for (Index k = 0; k < r; ++k)
  {
    const Index pk = data.pair_index[static_cast<std::size_t>(k)];
    if (pk == k)
    {
      out.V.col(k) = real_column(v_prim, k);
      out.W.col(k) = real_column(w_prim, k);
    }
    else if (pk == k + 1)
    {
      for (const Eigen::MatrixXcd *X : {&v_prim, &w_prim})
      {
        if (!close(X->col(k + 1), X->col(k).conjugate(), 1e-8))
        {
          fail(ErrorKind::ConjugacyViolation,
               "columns " + std::to_string(k) + " and " + std::to_string(k + 1) +
                   " are not complex conjugates");
        }
      }
      out.V.col(k) = v_prim.col(k).real();
      out.V.col(k + 1) = v_prim.col(k).imag();
      out.W.col(k) = w_prim.col(k).real();
      out.W.col(k + 1) = w_prim.col(k).imag();
      ++k;
    }
    else
    {
      fail(ErrorKind::ConjugacyViolation,
           "interpolation point " + std::to_string(k) + " has no adjacent conjugate partner");
    }
  }
  return out;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd &X, double rank_tol)
{
  check_full_rank(X.cast<Complex>(), "basis", rank_tol);
  const Index n = X.rows();
  const Index r = X.cols();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
  for (Index k = 0; k < r; ++k)
  {
    const double thresh = 1e-12 * Q.col(k).cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i)
    {
      if (std::abs(Q(i, k)) > thresh)
      {
        if (Q(i, k) < 0.0)
        {
          Q.col(k) *= -1.0;
        }
        break;
      }
    }
  }
  return Q;
}

ReducedLqoSystem petrov_galerkin_project(const LqoSystem &sys, const Eigen::MatrixXd &V,
                                         const Eigen::MatrixXd &W, double rank_tol)
{
  return project_impl(sys, V, W, rank_tol);
}

ReducedLqoSystem petrov_galerkin_project(const ReducedLqoSystem &sys, const Eigen::MatrixXd &V,
                                         const Eigen::MatrixXd &W, double rank_tol)
{
  return project_impl(sys, V, W, rank_tol);
}

double InterpResiduals::max_absolute() const
{
  double m = 0.0;
  for (const Eigen::MatrixXd *X : {&right_quadratic})
  {
    if (X->size() > 0)
    {
      m = std::max(m, X->maxCoeff());
    }
  }
  for (const Eigen::VectorXd *v : {&right_linear, &left_mixed, &hermite_mixed})
  {
    if (v->size() > 0)
    {
      m = std::max(m, v->maxCoeff());
    }
  }
  return m;
}

double InterpResiduals::max_relative() const
{
  double m = 0.0;
  if (right_quadratic_rel.size() > 0)
  {
    m = std::max(m, right_quadratic_rel.maxCoeff());
  }
  for (const Eigen::VectorXd *v : {&right_linear_rel, &left_mixed_rel, &hermite_mixed_rel})
  {
    if (v->size() > 0)
    {
      m = std::max(m, v->maxCoeff());
    }
  }
  return m;
}

InterpResiduals verify_interpolation(const LqoSystem &full, const ReducedLqoSystem &red,
                                     const InterpolationData &data)
{
  return verify_impl(full, red, data);
}

InterpResiduals verify_interpolation(const ReducedLqoSystem &full, const ReducedLqoSystem &red,
                                     const InterpolationData &data)
{
  return verify_impl(full, red, data);
}

InterpResiduals verify_h2_optimality(const LqoSystem &full, const ReducedLqoSystem &red)
{
  return verify_impl(full, red, mirror_data(spectral_decompose(red)));
}

InterpResiduals verify_h2_optimality(const ReducedLqoSystem &full, const ReducedLqoSystem &red)
{
  return verify_impl(full, red, mirror_data(spectral_decompose(red)));
}

}  // namespace lqo
