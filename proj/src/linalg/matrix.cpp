// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "ratnlevp/error.hpp"
#include "ratnlevp/linalg.hpp"

namespace ratnlevp
{

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows)
{
  const std::size_t nr = rows.size();
  const std::size_t nc = nr ? rows.begin()->size() : 0;
  CMatrix a(nr, nc);
  std::size_t i = 0;
  for (const auto &row : rows)
  {
    if (row.size() != nc)
    {
      throw Error(ErrorKind::InvalidArgument, "ragged row in matrix literal");
    }
    std::size_t j = 0;
    for (const auto &x : row)
    {
      a(i, j++) = x;
    }
    ++i;
  }
  a.check_finite();
  return a;
}

CMatrix CMatrix::identity(std::size_t n)
{
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
  {
    a(i, i) = 1.0;
  }
  return a;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d)
{
  CMatrix a(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
  {
    a(i, i) = d[i];
  }
  return a;
}

CMatrix CMatrix::random(std::size_t rows, std::size_t cols, std::mt19937_64 &rng)
{
  std::normal_distribution<double> nd(0.0, 1.0);
  CMatrix a(rows, cols);
  for (auto &x : a.data_)
  {
    const double re = nd(rng);
    const double im = nd(rng);
    x = {re, im};
  }
  return a;
}

void CMatrix::set_column(std::size_t j, std::span<const cplx> v)
{
  if (v.size() != rows_)
  {
    throw Error(ErrorKind::DimensionMismatch, "set_column length");
  }
  std::copy(v.begin(), v.end(), col(j).begin());
}

void CMatrix::check_finite() const
{
  for (const auto &x : data_)
  {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    {
      throw Error(ErrorKind::InvalidArgument, "matrix has a non-finite entry");
    }
  }
}

CMatrix CMatrix::adjoint() const
{
  CMatrix b(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
  {
    for (std::size_t i = 0; i < rows_; ++i)
    {
      b(j, i) = std::conj((*this)(i, j));
    }
  }
  return b;
}

CMatrix CMatrix::transpose() const
{
  CMatrix b(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
  {
    for (std::size_t i = 0; i < rows_; ++i)
    {
      b(j, i) = (*this)(i, j);
    }
  }
  return b;
}

CMatrix CMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
  if (r0 + nr > rows_ || c0 + nc > cols_)
  {
    throw Error(ErrorKind::DimensionMismatch, "block out of range");
  }
  CMatrix b(nr, nc);
  for (std::size_t j = 0; j < nc; ++j)
  {
    std::copy_n(col(c0 + j).begin() + r0, nr, b.col(j).begin());
  }
  return b;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix &b)
{
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
  {
    throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
  }
  for (std::size_t j = 0; j < b.cols(); ++j)
  {
    std::copy(b.col(j).begin(), b.col(j).end(), col(c0 + j).begin() + r0);
  }
}

CMatrix &CMatrix::operator+=(const CMatrix &b)
{
  if (b.rows_ != rows_ || b.cols_ != cols_)
  {
    throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  }
  for (std::size_t k = 0; k < data_.size(); ++k)
  {
    data_[k] += b.data_[k];
  }
  return *this;
}

CMatrix &CMatrix::operator-=(const CMatrix &b)
{
  if (b.rows_ != rows_ || b.cols_ != cols_)
  {
    throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  }
  for (std::size_t k = 0; k < data_.size(); ++k)
  {
    data_[k] -= b.data_[k];
  }
  return *this;
}

CMatrix &CMatrix::operator*=(cplx s)
{
  for (auto &x : data_)
  {
    x *= s;
  }
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix &b)
{
  a += b;
  return a;
}

CMatrix operator-(CMatrix a, const CMatrix &b)
{
  a -= b;
  return a;
}

CMatrix operator*(cplx s, CMatrix a)
{
  a *= s;
  return a;
}

CMatrix operator*(const CMatrix &a, const CMatrix &b)
{
  if (a.cols() != b.rows())
  {
    throw Error(ErrorKind::DimensionMismatch, "matrix product");
  }
  CMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
  {
    auto cj = c.col(j);
    for (std::size_t k = 0; k < a.cols(); ++k)
    {
      const cplx bkj = b(k, j);
      if (bkj == cplx(0.0))
      {
        continue;
      }
      const auto ak = a.col(k);
      for (std::size_t i = 0; i < a.rows(); ++i)
      {
        cj[i] += ak[i] * bkj;
      }
    }
  }
  return c;
}

CVector operator*(const CMatrix &a, std::span<const cplx> x)
{
  if (a.cols() != x.size())
  {
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  }
  CVector y(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k)
  {
    if (x[k] == cplx(0.0))
    {
      continue;
    }
    const auto ak = a.col(k);
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
      y[i] += ak[i] * x[k];
    }
  }
  return y;
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y)
{
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    y[i] += alpha * x[i];
  }
}

cplx dot(std::span<const cplx> x, std::span<const cplx> y)
{
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    s += std::conj(x[i]) * y[i];
  }
  return s;
}

double norm2(std::span<const cplx> x)
{
  // Scaled sum of squares; plain accumulation overflows for |x| ~ 1e160.
  double scale = 0.0, ssq = 1.0;
  for (const auto &z : x)
  {
    for (double t : {z.real(), z.imag()})
    {
      if (t != 0.0)
      {
        const double a = std::abs(t);
        if (scale < a)
        {
          ssq = 1.0 + ssq * (scale / a) * (scale / a);
          scale = a;
        }
        else
        {
          ssq += (a / scale) * (a / scale);
        }
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double norm_inf(std::span<const cplx> x)
{
  double m = 0.0;
  for (const auto &z : x)
  {
    m = std::max(m, std::abs(z));
  }
  return m;
}

void scale(cplx s, std::span<cplx> x)
{
  for (auto &z : x)
  {
    z *= s;
  }
}

CVector random_vector(std::size_t n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> nd(0.0, 1.0);
  CVector v(n);
  for (auto &x : v)
  {
    const double re = nd(rng);
    const double im = nd(rng);
    x = {re, im};
  }
  return v;
}

double norm_max(const CMatrix &a)
{
  double m = 0.0;
  for (std::size_t k = 0; k < a.rows() * a.cols(); ++k)
  {
    m = std::max(m, std::abs(a.data()[k]));
  }
  return m;
}

double norm_fro(const CMatrix &a)
{
  return norm2({a.data(), a.rows() * a.cols()});
}

double norm_one(const CMatrix &a)
{
  double m = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
  {
    double s = 0.0;
    for (const auto &x : a.col(j))
    {
      s += std::abs(x);
    }
    m = std::max(m, s);
  }
  return m;
}

double norm_inf(const CMatrix &a)
{
  std::vector<double> rs(a.rows(), 0.0);
  for (std::size_t j = 0; j < a.cols(); ++j)
  {
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
      rs[i] += std::abs(a(i, j));
    }
  }
  return rs.empty() ? 0.0 : *std::max_element(rs.begin(), rs.end());
}

double norm_spectral(const CMatrix &a, double tol, int max_iter)
{
  if (a.empty())
  {
    return 0.0;
  }
  const double fro = norm_fro(a);
  if (fro == 0.0)
  {
    return 0.0;
  }
  // Fixed start so the norm (and every tolerance scaled by it) is reproducible.
  std::mt19937_64 rng(0x5eed5eedULL);
  CVector x = random_vector(a.cols(), rng);
  scale(1.0 / norm2(x), x);
  const CMatrix ah = a.adjoint();
  double est = 0.0;
  for (int it = 0; it < max_iter; ++it)
  {
    CVector y = a * std::span<const cplx>(x);
    CVector z = ah * std::span<const cplx>(y);
    const double nz = norm2(z);
    if (nz == 0.0)
    {
      break;
    }
    const double next = std::sqrt(nz);
    scale(1.0 / nz, z);
    x = std::move(z);
    if (std::abs(next - est) <= tol * next)
    {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

void canonicalize_phase(std::span<cplx> v)
{
  std::size_t imax = 0;
  double amax = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    // Ties go to the first index; the 1e-12 slack keeps the choice stable
    // under rounding between otherwise identical runs.
    const double a = std::abs(v[i]);
    if (a > amax * (1.0 + 1e-12))
    {
      amax = a;
      imax = i;
    }
  }
  if (amax <= 0.0)
  {
    return;
  }
  const cplx ph = std::conj(v[imax]) / amax;
  scale(ph, v);
  v[imax] = amax;
}

}  // namespace ratnlevp
