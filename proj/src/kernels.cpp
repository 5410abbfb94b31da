// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>

#include "ratnlevp/error.hpp"

#ifdef RATNLEVP_HAVE_OPENMP
#include <omp.h>
#endif

namespace ratnlevp::kernels
{

namespace
{

#ifdef RATNLEVP_HAVE_OPENMP
std::atomic<Backend> g_backend{Backend::OpenMP};
#else
std::atomic<Backend> g_backend{Backend::Serial};
#endif
std::atomic<int> g_max_threads{0};

constexpr std::size_t kRowBlock = 64;

void check_matvec_args(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                       std::span<cplx> y)
{
  if (a.size() != x.size())
  {
    throw Error(ErrorKind::DimensionMismatch, "matvec_sum: operand counts differ");
  }
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (a[i]->rows() != y.size() || a[i]->cols() != x[i].size())
    {
      throw Error(ErrorKind::DimensionMismatch, "matvec_sum: operand shape");
    }
  }
}

// Rows [r0, r1) of y += sum_i a[i] x[i]. Each row sees the same (i, j)
// accumulation order no matter how rows are blocked.
void matvec_rows(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                 std::span<cplx> y, std::size_t r0, std::size_t r1)
{
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    const CMatrix &ai = *a[i];
    for (std::size_t j = 0; j < ai.cols(); ++j)
    {
      const cplx xj = x[i][j];
      if (xj == cplx(0.0))
      {
        continue;
      }
      const cplx *col = ai.col(j).data();
      for (std::size_t r = r0; r < r1; ++r)
      {
        y[r] += col[r] * xj;
      }
    }
  }
}

CMatrix combine_one(std::span<const CMatrix> a, const CMatrix &alpha, std::size_t i)
{
  CMatrix out(a[0].rows(), a[0].cols());
  const std::size_t len = out.rows() * out.cols();
  for (std::size_t j = 0; j < a.size(); ++j)
  {
    const cplx c = alpha(i, j);
    if (c == cplx(0.0))
    {
      continue;
    }
    const cplx *src = a[j].data();
    cplx *dst = out.data();
    for (std::size_t k = 0; k < len; ++k)
    {
      dst[k] += c * src[k];
    }
  }
  return out;
}

void check_combine_args(std::span<const CMatrix> a, const CMatrix &alpha)
{
  if (alpha.cols() != a.size())
  {
    throw Error(ErrorKind::DimensionMismatch, "combine: coefficient table width");
  }
  for (const auto &m : a)
  {
    if (m.rows() != a[0].rows() || m.cols() != a[0].cols())
    {
      throw Error(ErrorKind::DimensionMismatch, "combine: matrices differ in shape");
    }
  }
}

double reduce_max(const std::vector<double> &v)
{
  double m = 0.0;
  for (double x : v)
  {
    if (std::isnan(x))
    {
      return x;
    }
    m = std::max(m, x);
  }
  return m;
}

}  // namespace

Backend active_backend()
{
  return g_backend.load();
}

void set_backend(Backend b)
{
  if (b == Backend::OpenMP && !openmp_available())
  {
    throw Error(ErrorKind::ConfigError, "OpenMP backend not compiled in");
  }
  g_backend.store(b);
}

bool openmp_available()
{
#ifdef RATNLEVP_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

void set_max_threads(int n)
{
  g_max_threads.store(n);
}

int max_threads()
{
#ifdef RATNLEVP_HAVE_OPENMP
  const int cap = g_max_threads.load();
  return cap > 0 ? std::min(cap, omp_get_max_threads()) : omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial
{

void matvec_sum(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                std::span<cplx> y)
{
  check_matvec_args(a, x, y);
  for (std::size_t r0 = 0; r0 < y.size(); r0 += kRowBlock)
  {
    matvec_rows(a, x, y, r0, std::min(r0 + kRowBlock, y.size()));
  }
}

std::vector<CMatrix> combine(std::span<const CMatrix> a, const CMatrix &alpha)
{
  check_combine_args(a, alpha);
  std::vector<CMatrix> out(alpha.rows());
  if (a.empty())
  {
    return out;
  }
  for (std::size_t i = 0; i < alpha.rows(); ++i)
  {
    out[i] = combine_one(a, alpha, i);
  }
  return out;
}

double max_abs(std::span<const cplx> points, const std::function<cplx(cplx)> &g)
{
  std::vector<double> v(points.size());
  for (std::size_t k = 0; k < points.size(); ++k)
  {
    v[k] = std::abs(g(points[k]));
  }
  return reduce_max(v);
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)> &fn)
{
  for (std::size_t i = 0; i < count; ++i)
  {
    fn(i);
  }
}

}  // namespace serial

namespace omp
{

void matvec_sum(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                std::span<cplx> y)
{
#ifdef RATNLEVP_HAVE_OPENMP
  check_matvec_args(a, x, y);
  const std::size_t nblocks = (y.size() + kRowBlock - 1) / kRowBlock;
  const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt) if (nblocks > 1)
  for (std::size_t b = 0; b < nblocks; ++b)
  {
    const std::size_t r0 = b * kRowBlock;
    matvec_rows(a, x, y, r0, std::min(r0 + kRowBlock, y.size()));
  }
#else
  serial::matvec_sum(a, x, y);
#endif
}

std::vector<CMatrix> combine(std::span<const CMatrix> a, const CMatrix &alpha)
{
#ifdef RATNLEVP_HAVE_OPENMP
  check_combine_args(a, alpha);
  std::vector<CMatrix> out(alpha.rows());
  if (a.empty())
  {
    return out;
  }
  const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::size_t i = 0; i < alpha.rows(); ++i)
  {
    out[i] = combine_one(a, alpha, i);
  }
  return out;
#else
  return serial::combine(a, alpha);
#endif
}

double max_abs(std::span<const cplx> points, const std::function<cplx(cplx)> &g)
{
#ifdef RATNLEVP_HAVE_OPENMP
  std::vector<double> v(points.size());
  std::vector<std::exception_ptr> errs(points.size());
  const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (std::size_t k = 0; k < points.size(); ++k)
  {
    try
    {
      v[k] = std::abs(g(points[k]));
    }
    catch (...)
    {
      errs[k] = std::current_exception();
    }
  }
  for (const auto &e : errs)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
  return reduce_max(v);
#else
  return serial::max_abs(points, g);
#endif
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)> &fn)
{
#ifdef RATNLEVP_HAVE_OPENMP
  std::vector<std::exception_ptr> errs(count);
  const int nt = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::size_t i = 0; i < count; ++i)
  {
    try
    {
      fn(i);
    }
    catch (...)
    {
      errs[i] = std::current_exception();
    }
  }
  for (const auto &e : errs)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
#else
  serial::for_each_index(count, fn);
#endif
}

}  // namespace omp

void matvec_sum(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                std::span<cplx> y)
{
  active_backend() == Backend::OpenMP ? omp::matvec_sum(a, x, y) : serial::matvec_sum(a, x, y);
}

std::vector<CMatrix> combine(std::span<const CMatrix> a, const CMatrix &alpha)
{
  return active_backend() == Backend::OpenMP ? omp::combine(a, alpha) : serial::combine(a, alpha);
}

double max_abs(std::span<const cplx> points, const std::function<cplx(cplx)> &g)
{
  return active_backend() == Backend::OpenMP ? omp::max_abs(points, g) : serial::max_abs(points, g);
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)> &fn)
{
  active_backend() == Backend::OpenMP ? omp::for_each_index(count, fn)
                                      : serial::for_each_index(count, fn);
}

}  // namespace ratnlevp::kernels
