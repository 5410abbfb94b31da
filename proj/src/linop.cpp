// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/linop.hpp"

#include <cmath>

#include "ratnlevp/error.hpp"
#include "ratnlevp/kernels.hpp"

namespace ratnlevp
{

BlockVector BlockVector::zeros(std::size_t m, std::size_t n)
{
  BlockVector w;
  w.v.assign(m, CVector(n));
  w.u.assign(n, 0.0);
  return w;
}

BlockVector BlockVector::random(std::size_t m, std::size_t n, std::mt19937_64 &rng)
{
  BlockVector w;
  w.v.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    w.v.push_back(random_vector(n, rng));
  }
  w.u = random_vector(n, rng);
  return w;
}

BlockVector BlockVector::from_flat(std::span<const cplx> x, std::size_t m, std::size_t n)
{
  if (x.size() != (m + 1) * n)
  {
    throw Error(ErrorKind::DimensionMismatch, "flat block vector length");
  }
  BlockVector w;
  w.v.resize(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    w.v[i].assign(x.begin() + i * n, x.begin() + (i + 1) * n);
  }
  w.u.assign(x.begin() + m * n, x.end());
  return w;
}

CVector BlockVector::flat() const
{
  CVector x;
  x.reserve(size());
  for (const auto &vi : v)
  {
    x.insert(x.end(), vi.begin(), vi.end());
  }
  x.insert(x.end(), u.begin(), u.end());
  return x;
}

double BlockVector::norm() const
{
  double s = 0.0;
  for (const auto &vi : v)
  {
    const double t = norm2(vi);
    s += t * t;
  }
  const double t = norm2(u);
  return std::sqrt(s + t * t);
}

void accumulate_B(const Surrogate &s, std::span<const cplx> coef, const std::vector<CVector> &x,
                  std::span<cplx> out)
{
  const std::size_t m = s.m();
  if (s.factored() && s.terms.size() < m)
  {
    // sum_i c_i B_i x_i = sum_j A_j (sum_i c_i alpha_ij x_i)
    const std::size_t p = s.terms.size();
    std::vector<CVector> y(p, CVector(s.n));
    for (std::size_t j = 0; j < p; ++j)
    {
      for (std::size_t i = 0; i < m; ++i)
      {
        const cplx c = coef[i] * s.alpha(i, j);
        if (c != cplx(0.0))
        {
          axpy(c, x[i], y[j]);
        }
      }
    }
    std::vector<const CMatrix *> ptrs(p);
    std::vector<std::span<const cplx>> spans(p);
    for (std::size_t j = 0; j < p; ++j)
    {
      ptrs[j] = &s.terms[j];
      spans[j] = y[j];
    }
    kernels::matvec_sum(ptrs, spans, out);
    return;
  }
  std::vector<CVector> y(m);
  std::vector<const CMatrix *> ptrs(m);
  std::vector<std::span<const cplx>> spans(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    y[i] = x[i];
    scale(coef[i], y[i]);
    ptrs[i] = &s.B[i];
    spans[i] = y[i];
  }
  kernels::matvec_sum(ptrs, spans, out);
}

CMatrix schur_matrix(const Surrogate &s, cplx z)
{
  if (pole_at(s, z) >= 0)
  {
    throw Error(ErrorKind::AtPole, "Schur complement evaluated at a pole");
  }
  CMatrix r = s.B0;
  r -= z * s.A0;
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    r += (1.0 / (s.poles[i] - z)) * s.B[i];
  }
  return r;
}

ShiftedFactorization factor_shifted(const Surrogate &s, cplx sigma)
{
  const long hit = pole_at(s, sigma);
  if (hit >= 0)
  {
    throw Error(ErrorKind::AtPole, "shift coincides with pole " + std::to_string(hit + 1));
  }
  ShiftedFactorization f;
  f.sigma = sigma;
  f.schur_lu = lu_factor(schur_matrix(s, sigma));
  f.pole_gaps.resize(s.m());
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    f.pole_gaps[i] = s.poles[i] - sigma;
  }
  return f;
}

BlockVector apply_shift_invert(const ShiftedFactorization &fac, const Surrogate &s,
                               const BlockVector &w)
{
  const std::size_t m = s.m();
  if (w.m() != m || w.n() != s.n)
  {
    throw Error(ErrorKind::DimensionMismatch, "block vector does not match the surrogate");
  }
  // b = A0 u - sum_i B_i v_i / (sigma_i - sigma)
  CVector b = s.A0 * std::span<const cplx>(w.u);
  std::vector<cplx> coef(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    coef[i] = -1.0 / fac.pole_gaps[i];
  }
  accumulate_B(s, coef, w.v, b);

  BlockVector x;
  x.u = lu_solve(fac.schur_lu, b);
  x.v.resize(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    // Top block rows of (A - sigma M) x = M w give (sigma_i - sigma) x_i = v_i + x_u.
    const cplx g = 1.0 / fac.pole_gaps[i];
    x.v[i].resize(s.n);
    for (std::size_t r = 0; r < s.n; ++r)
    {
      x.v[i][r] = (w.v[i][r] + x.u[r]) * g;
    }
  }
  return x;
}

BlockVector apply_A(const Surrogate &s, const BlockVector &w)
{
  const std::size_t m = s.m();
  if (w.m() != m || w.n() != s.n)
  {
    throw Error(ErrorKind::DimensionMismatch, "block vector does not match the surrogate");
  }
  BlockVector out;
  out.v.resize(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    out.v[i] = w.v[i];
    scale(s.poles[i], out.v[i]);
    axpy(-1.0, w.u, out.v[i]);
  }
  out.u = s.B0 * std::span<const cplx>(w.u);
  const std::vector<cplx> ones(m, 1.0);
  accumulate_B(s, ones, w.v, out.u);
  return out;
}

BlockVector apply_M(const Surrogate &s, const BlockVector &w)
{
  if (w.m() != s.m() || w.n() != s.n)
  {
    throw Error(ErrorKind::DimensionMismatch, "block vector does not match the surrogate");
  }
  BlockVector out;
  out.v = w.v;
  out.u = s.A0 * std::span<const cplx>(w.u);
  return out;
}

BlockVector lift_eigvec(const Surrogate &s, cplx lambda, std::span<const cplx> u)
{
  if (pole_at(s, lambda) >= 0)
  {
    throw Error(ErrorKind::AtPole, "cannot lift an eigenvector at a pole");
  }
  BlockVector w;
  w.u.assign(u.begin(), u.end());
  w.v.resize(s.m());
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    w.v[i] = w.u;
    scale(1.0 / (s.poles[i] - lambda), w.v[i]);
  }
  return w;
}

Linearization materialize(const Surrogate &s)
{
  const std::size_t m = s.m(), n = s.n, big = (m + 1) * n;
  Linearization lin{CMatrix(big, big), CMatrix(big, big)};
  for (std::size_t i = 0; i < m; ++i)
  {
    for (std::size_t r = 0; r < n; ++r)
    {
      lin.A(i * n + r, i * n + r) = s.poles[i];
      lin.A(i * n + r, m * n + r) = -1.0;
      lin.M(i * n + r, i * n + r) = 1.0;
    }
    lin.A.set_block(m * n, i * n, s.B[i]);
  }
  lin.A.set_block(m * n, m * n, s.B0);
  lin.M.set_block(m * n, m * n, s.A0);
  return lin;
}

}  // namespace ratnlevp
