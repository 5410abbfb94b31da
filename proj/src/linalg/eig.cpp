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

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

double abs1(cplx z)
{
  return std::abs(z.real()) + std::abs(z.imag());
}

// Diagonal similarity D^{-1} A D with power-of-two entries so rows and
// columns have comparable norms. Returns D.
std::vector<double> balance(CMatrix &a)
{
  const std::size_t n = a.rows();
  std::vector<double> d(n, 1.0);
  constexpr double radix = 2.0, sqrdx = 4.0;
  bool noconv = true;
  for (int sweep = 0; noconv && sweep < 200; ++sweep)
  {
    noconv = false;
    for (std::size_t i = 0; i < n; ++i)
    {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j)
      {
        if (j != i)
        {
          c += abs1(a(j, i));
          r += abs1(a(i, j));
        }
      }
      if (c == 0.0 || r == 0.0)
      {
        continue;
      }
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g)
      {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c >= g)
      {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s)
      {
        noconv = true;
        d[i] *= f;
        for (std::size_t j = 0; j < n; ++j)
        {
          a(i, j) /= f;
          a(j, i) *= f;
        }
      }
    }
  }
  return d;
}

// Householder reduction to upper Hessenberg form, A <- Q^H A Q, with Q
// accumulated into z when requested.
void hessenberg(CMatrix &a, CMatrix *z)
{
  const std::size_t n = a.rows();
  CVector u, w(n);
  for (std::size_t k = 0; k + 2 < n; ++k)
  {
    const std::size_t len = n - k - 1;
    u.assign(a.col(k).begin() + k + 1, a.col(k).end());
    const double xnorm = norm2(u);
    if (xnorm == 0.0)
    {
      continue;
    }
    const cplx x0 = u[0];
    const cplx ph = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0);
    const cplx beta = -ph * xnorm;
    u[0] -= beta;
    const double un = norm2(u);
    if (un == 0.0)
    {
      continue;
    }
    scale(1.0 / un, u);

    // Left: rows k+1.., columns k..
    for (std::size_t j = k; j < n; ++j)
    {
      auto cj = a.col(j);
      cplx s = 0.0;
      for (std::size_t i = 0; i < len; ++i)
      {
        s += std::conj(u[i]) * cj[k + 1 + i];
      }
      s *= 2.0;
      for (std::size_t i = 0; i < len; ++i)
      {
        cj[k + 1 + i] -= s * u[i];
      }
    }
    for (std::size_t i = k + 2; i < n; ++i)
    {
      a(i, k) = 0.0;
    }
    a(k + 1, k) = beta;

    // Right: all rows, columns k+1..
    auto right = [&](CMatrix &m) {
      std::fill(w.begin(), w.end(), cplx(0.0));
      for (std::size_t j = 0; j < len; ++j)
      {
        axpy(u[j], m.col(k + 1 + j), w);
      }
      for (std::size_t j = 0; j < len; ++j)
      {
        axpy(-2.0 * std::conj(u[j]), w, m.col(k + 1 + j));
      }
    };
    right(a);
    if (z)
    {
      right(*z);
    }
  }
}

struct Givens
{
  double c = 1.0;
  cplx s = 0.0;
};

// G = [c s; -conj(s) c] maps (x, y) to (r, 0) with r >= 0.
Givens make_givens(cplx x, cplx y)
{
  Givens g;
  if (y == cplx(0.0))
  {
    return g;
  }
  const double ax = std::abs(x), ay = std::abs(y);
  if (ax == 0.0)
  {
    g.c = 0.0;
    g.s = std::conj(y) / ay;
    return g;
  }
  const double r = std::hypot(ax, ay);
  g.c = ax / r;
  g.s = (x / ax) * std::conj(y) / r;
  return g;
}

void rotate_rows(CMatrix &h, std::size_t k, const Givens &g, std::size_t j0, std::size_t j1)
{
  for (std::size_t j = j0; j < j1; ++j)
  {
    const cplx x = h(k, j), y = h(k + 1, j);
    h(k, j) = g.c * x + g.s * y;
    h(k + 1, j) = -std::conj(g.s) * x + g.c * y;
  }
}

void rotate_cols(CMatrix &h, std::size_t k, const Givens &g, std::size_t i0, std::size_t i1)
{
  auto ck = h.col(k), ck1 = h.col(k + 1);
  const cplx sb = std::conj(g.s);
  for (std::size_t i = i0; i < i1; ++i)
  {
    const cplx x = ck[i], y = ck1[i];
    ck[i] = g.c * x + sb * y;
    ck1[i] = -g.s * x + g.c * y;
  }
}

// Single-shift QR on upper Hessenberg h, driving it to upper triangular
// (complex Schur) form. Rotations are accumulated into z if given.
void schur_qr(CMatrix &h, CMatrix *z, int max_sweeps)
{
  const std::size_t n = h.rows();
  if (n == 0)
  {
    return;
  }
  const double hnorm = std::max(norm_max(h), kTiny);
  std::size_t hi = n - 1;
  int its = 0;
  while (true)
  {
    // Locate the start of the active unreduced block.
    std::size_t lo = hi;
    while (lo > 0)
    {
      const double sub = abs1(h(lo, lo - 1));
      double ref = abs1(h(lo - 1, lo - 1)) + abs1(h(lo, lo));
      if (ref == 0.0)
      {
        ref = hnorm;
      }
      if (sub <= kEps * ref || sub <= kTiny)
      {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi)
    {
      if (hi == 0)
      {
        break;
      }
      --hi;
      its = 0;
      continue;
    }
    if (++its > max_sweeps)
    {
      throw Error(ErrorKind::ConvergenceFailure,
                  "QR iteration exceeded " + std::to_string(max_sweeps) +
                      " sweeps for one eigenvalue (n=" + std::to_string(n) + ")");
    }

    cplx mu;
    if (its % 10 == 0)
    {
      mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real());
    }
    else
    {
      const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const cplx half = 0.5 * (a - d);
      const cplx disc = std::sqrt(half * half + b * c);
      const cplx m1 = 0.5 * (a + d) + disc, m2 = 0.5 * (a + d) - disc;
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }

    cplx x = h(lo, lo) - mu, y = h(lo + 1, lo);
    for (std::size_t k = lo; k < hi; ++k)
    {
      if (k > lo)
      {
        x = h(k, k - 1);
        y = h(k + 1, k - 1);
      }
      const Givens g = make_givens(x, y);
      rotate_rows(h, k, g, k > lo ? k - 1 : lo, n);
      if (k > lo)
      {
        h(k + 1, k - 1) = 0.0;
      }
      rotate_cols(h, k, g, 0, std::min(k + 3, hi + 1));
      if (z)
      {
        rotate_cols(*z, k, g, 0, z->rows());
      }
    }
  }
}

// Eigenvectors of upper triangular t by back substitution, mapped through z.
CMatrix triangular_eigvecs(const CMatrix &t, const CMatrix &z)
{
  const std::size_t n = t.rows();
  const double tnorm = std::max(norm_max(t), kTiny);
  constexpr double big = 1e150;
  CMatrix v(n, n);
  CVector x(n);
  for (std::size_t k = n; k-- > 0;)
  {
    const cplx lam = t(k, k);
    const double smin = std::max(kEps * std::max(abs1(lam), tnorm * 1e-3), kTiny);
    std::fill(x.begin(), x.end(), cplx(0.0));
    x[k] = 1.0;
    for (std::size_t i = k; i-- > 0;)
    {
      cplx s = 0.0;
      for (std::size_t j = i + 1; j <= k; ++j)
      {
        s += t(i, j) * x[j];
      }
      cplx d = t(i, i) - lam;
      if (abs1(d) < smin)
      {
        d = smin;
      }
      x[i] = -s / d;
      if (abs1(x[i]) > big)
      {
        const double f = 1.0 / abs1(x[i]);
        for (std::size_t j = i; j <= k; ++j)
        {
          x[j] *= f;
        }
      }
    }
    auto vk = v.col(k);
    for (std::size_t j = 0; j <= k; ++j)
    {
      axpy(x[j], z.col(j), vk);
    }
  }
  return v;
}

}  // namespace

cplx infinite_eigenvalue()
{
  return {std::numeric_limits<double>::infinity(), 0.0};
}

bool is_infinite(cplx lambda)
{
  return std::isinf(lambda.real()) || std::isinf(lambda.imag());
}

EigResult dense_eig(const CMatrix &a, const EigOptions &opts)
{
  if (!a.square())
  {
    throw Error(ErrorKind::DimensionMismatch, "dense_eig needs a square matrix");
  }
  const std::size_t n = a.rows();
  if (n > opts.max_dim)
  {
    throw Error(ErrorKind::DimensionCap, "dense_eig dimension " + std::to_string(n) +
                                             " exceeds cap " + std::to_string(opts.max_dim));
  }
  a.check_finite();
  EigResult res;
  if (n == 0)
  {
    return res;
  }
  CMatrix h = a;
  std::vector<double> d(n, 1.0);
  if (opts.balance)
  {
    d = balance(h);
  }
  CMatrix z;
  if (opts.vectors)
  {
    z = CMatrix::identity(n);
  }
  hessenberg(h, opts.vectors ? &z : nullptr);
  schur_qr(h, opts.vectors ? &z : nullptr, opts.max_sweeps_per_eigenvalue);

  res.values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    res.values[i] = h(i, i);
  }
  if (opts.vectors)
  {
    res.vectors = triangular_eigvecs(h, z);
    for (std::size_t k = 0; k < n; ++k)
    {
      auto vk = res.vectors.col(k);
      for (std::size_t i = 0; i < n; ++i)
      {
        vk[i] *= d[i];
      }
      const double nv = norm2(vk);
      if (nv > 0.0)
      {
        scale(1.0 / nv, vk);
      }
    }
  }
  return res;
}

EigResult dense_geig(const CMatrix &a, const CMatrix &m, const EigOptions &opts)
{
  if (!a.square() || !m.square() || a.rows() != m.rows())
  {
    throw Error(ErrorKind::DimensionMismatch, "dense_geig needs square A, M of equal size");
  }
  const std::size_t n = a.rows();
  const double mmax = norm_max(m);
  if (mmax == 0.0)
  {
    EigResult res;
    res.values.assign(n, infinite_eigenvalue());
    if (opts.vectors)
    {
      res.vectors = CMatrix::identity(n);
    }
    return res;
  }

  // Well-conditioned M: reduce to a standard problem.
  try
  {
    const LUFactorization fm = lu_factor(m);
    if (fm.min_pivot() >= 1e-8 * fm.max_pivot())
    {
      return dense_eig(lu_solve(fm, a), opts);
    }
  }
  catch (const Error &e)
  {
    if (e.kind() != ErrorKind::SingularMatrix)
    {
      throw;
    }
  }

  // Singular or ill-conditioned M: eigenvalues theta of (A - tau M)^{-1} M map
  // to lambda = tau + 1/theta, and theta ~ 0 marks an infinite eigenvalue.
  const double s = std::max(norm_max(a), kTiny) / mmax;
  const cplx base = opts.shift ? *opts.shift : s * cplx(0.6180339887, 0.4142135624);
  std::optional<LUFactorization> fs;
  cplx tau = base;
  for (int attempt = 0; attempt < 8 && !fs; ++attempt)
  {
    tau = base * std::pow(cplx(1.1, 0.37), attempt);
    try
    {
      fs = lu_factor(a - tau * m);
    }
    catch (const Error &e)
    {
      if (e.kind() != ErrorKind::SingularMatrix)
      {
        throw;
      }
    }
  }
  if (!fs)
  {
    throw Error(ErrorKind::SingularMatrix, "dense_geig: pencil appears singular at every trial shift");
  }
  const CMatrix k = lu_solve(*fs, m);
  EigResult res = dense_eig(k, opts);
  const double kn = norm_fro(k);
  for (auto &th : res.values)
  {
    th = std::abs(th) <= 1e-12 * kn ? infinite_eigenvalue() : tau + 1.0 / th;
  }
  return res;
}

}  // namespace ratnlevp
