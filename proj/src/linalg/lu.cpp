// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ratnlevp/error.hpp"
#include "ratnlevp/linalg.hpp"

namespace ratnlevp
{

namespace
{

// Doolittle elimination with row pivoting, in place. Returns false when some
// pivot magnitude is at or below pivot_floor; exact zero pivots are skipped.
bool factor_in_place(CMatrix &lu, std::vector<std::size_t> &perm, int &parity, double pivot_floor)
{
  const std::size_t n = lu.rows();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    perm[i] = i;
  }
  parity = 1;
  bool ok = true;
  for (std::size_t k = 0; k < n; ++k)
  {
    auto ck = lu.col(k);
    std::size_t p = k;
    double pmax = std::abs(ck[k]);
    for (std::size_t i = k + 1; i < n; ++i)
    {
      const double a = std::abs(ck[i]);
      if (a > pmax)
      {
        pmax = a;
        p = i;
      }
    }
    if (p != k)
    {
      for (std::size_t j = 0; j < n; ++j)
      {
        std::swap(lu(k, j), lu(p, j));
      }
      std::swap(perm[k], perm[p]);
      parity = -parity;
    }
    if (pmax <= pivot_floor)
    {
      ok = false;
      if (pmax == 0.0)
      {
        continue;
      }
    }
    const cplx inv = 1.0 / ck[k];
    for (std::size_t i = k + 1; i < n; ++i)
    {
      ck[i] *= inv;
    }
    for (std::size_t j = k + 1; j < n; ++j)
    {
      auto cj = lu.col(j);
      const cplx ukj = cj[k];
      if (ukj == cplx(0.0))
      {
        continue;
      }
      for (std::size_t i = k + 1; i < n; ++i)
      {
        cj[i] -= ck[i] * ukj;
      }
    }
  }
  return ok;
}

}  // namespace

double LUFactorization::min_pivot() const
{
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lu.rows(); ++i)
  {
    m = std::min(m, std::abs(lu(i, i)));
  }
  return lu.rows() ? m : 0.0;
}

double LUFactorization::max_pivot() const
{
  double m = 0.0;
  for (std::size_t i = 0; i < lu.rows(); ++i)
  {
    m = std::max(m, std::abs(lu(i, i)));
  }
  return m;
}

LUFactorization lu_factor(const CMatrix &a, double pivot_tol)
{
  if (!a.square())
  {
    throw Error(ErrorKind::DimensionMismatch, "lu_factor needs a square matrix");
  }
  LUFactorization fac;
  fac.lu = a;
  fac.scale = norm_max(a);
  if (!factor_in_place(fac.lu, fac.perm, fac.parity, pivot_tol * fac.scale) || fac.scale == 0.0)
  {
    throw Error(ErrorKind::SingularMatrix,
                "pivot below " + std::to_string(pivot_tol) + " x max|a_ij| (n=" +
                    std::to_string(a.rows()) + ")");
  }
  return fac;
}

CVector lu_solve(const LUFactorization &fac, std::span<const cplx> b)
{
  const std::size_t n = fac.size();
  if (b.size() != n)
  {
    throw Error(ErrorKind::DimensionMismatch, "lu_solve rhs length");
  }
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    x[i] = b[fac.perm[i]];
  }
  // Column-oriented forward and back substitution.
  for (std::size_t k = 0; k < n; ++k)
  {
    const cplx xk = x[k];
    if (xk == cplx(0.0))
    {
      continue;
    }
    const auto ck = fac.lu.col(k);
    for (std::size_t i = k + 1; i < n; ++i)
    {
      x[i] -= ck[i] * xk;
    }
  }
  for (std::size_t k = n; k-- > 0;)
  {
    const auto ck = fac.lu.col(k);
    x[k] /= ck[k];
    const cplx xk = x[k];
    for (std::size_t i = 0; i < k; ++i)
    {
      x[i] -= ck[i] * xk;
    }
  }
  return x;
}

CMatrix lu_solve(const LUFactorization &fac, const CMatrix &b)
{
  CMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
  {
    x.set_column(j, lu_solve(fac, b.col(j)));
  }
  return x;
}

CVector lu_solve_adjoint(const LUFactorization &fac, std::span<const cplx> b)
{
  // A = P^T L U, so A^H x = b  <=>  U^H L^H (P x) = b.
  const std::size_t n = fac.size();
  if (b.size() != n)
  {
    throw Error(ErrorKind::DimensionMismatch, "lu_solve_adjoint rhs length");
  }
  CVector y(b.begin(), b.end());
  for (std::size_t k = 0; k < n; ++k)
  {
    const auto ck = fac.lu.col(k);
    cplx s = y[k];
    for (std::size_t i = 0; i < k; ++i)
    {
      s -= std::conj(ck[i]) * y[i];
    }
    y[k] = s / std::conj(ck[k]);
  }
  for (std::size_t k = n; k-- > 0;)
  {
    const auto ck = fac.lu.col(k);
    cplx s = y[k];
    for (std::size_t i = k + 1; i < n; ++i)
    {
      s -= std::conj(ck[i]) * y[i];
    }
    y[k] = s;
  }
  CVector x(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    x[fac.perm[i]] = y[i];
  }
  return x;
}

cplx LogDet::value() const
{
  if (zero)
  {
    return 0.0;
  }
  return std::exp(log_abs) * phase;
}

LogDet LogDet::operator*(const LogDet &o) const
{
  LogDet r;
  r.zero = zero || o.zero;
  if (r.zero)
  {
    r.phase = 0.0;
    r.log_abs = -std::numeric_limits<double>::infinity();
    return r;
  }
  r.log_abs = log_abs + o.log_abs;
  r.phase = phase * o.phase;
  r.phase /= std::abs(r.phase);
  return r;
}

LogDet log_det(const CMatrix &a)
{
  if (!a.square())
  {
    throw Error(ErrorKind::DimensionMismatch, "log_det needs a square matrix");
  }
  CMatrix lu = a;
  std::vector<std::size_t> perm;
  int parity = 1;
  factor_in_place(lu, perm, parity, 0.0);
  LogDet d;
  d.phase = static_cast<double>(parity);
  for (std::size_t i = 0; i < lu.rows(); ++i)
  {
    const cplx p = lu(i, i);
    const double ap = std::abs(p);
    if (ap == 0.0)
    {
      d.zero = true;
      d.phase = 0.0;
      d.log_abs = -std::numeric_limits<double>::infinity();
      return d;
    }
    d.log_abs += std::log(ap);
    d.phase *= p / ap;
  }
  d.phase /= std::abs(d.phase);
  return d;
}

}  // namespace ratnlevp
