// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ratnlevp/error.hpp"
#include "ratnlevp/linalg.hpp"

namespace ratnlevp
{

Orthonormalized mgs_orthonormalize(const CMatrix &w, double drop_tol)
{
  const std::size_t n = w.rows();
  CMatrix q(n, w.cols());
  std::size_t rank = 0;
  for (std::size_t j = 0; j < w.cols(); ++j)
  {
    auto v = q.col(rank);
    std::copy(w.col(j).begin(), w.col(j).end(), v.begin());
    const double n0 = norm2(v);
    if (n0 == 0.0 || !std::isfinite(n0))
    {
      std::fill(v.begin(), v.end(), cplx(0.0));
      continue;
    }
    for (int pass = 0; pass < 2; ++pass)
    {
      for (std::size_t i = 0; i < rank; ++i)
      {
        const auto qi = q.col(i);
        axpy(-dot(qi, v), qi, v);
      }
    }
    const double nv = norm2(v);
    if (nv < drop_tol * n0)
    {
      std::fill(v.begin(), v.end(), cplx(0.0));
      continue;
    }
    scale(1.0 / nv, v);
    ++rank;
  }
  return {q.leading_columns(rank), rank};
}

SVDResult jacobi_svd(const CMatrix &a, double tol, int max_sweeps)
{
  if (a.rows() < a.cols())
  {
    SVDResult t = jacobi_svd(a.adjoint(), tol, max_sweeps);
    return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const std::size_t m = a.rows(), n = a.cols();
  CMatrix u = a;
  CMatrix v = CMatrix::identity(n);
  bool rotated = true;
  int sweep = 0;
  for (; rotated && sweep < max_sweeps; ++sweep)
  {
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
    {
      for (std::size_t q = p + 1; q < n; ++q)
      {
        auto up = u.col(p), uq = u.col(q);
        double alpha = 0.0, beta = 0.0;
        for (std::size_t i = 0; i < m; ++i)
        {
          alpha += std::norm(up[i]);
          beta += std::norm(uq[i]);
        }
        const cplx gamma = dot(up, uq);
        const double ag = std::abs(gamma);
        if (ag == 0.0 || ag <= tol * std::sqrt(alpha * beta))
        {
          continue;
        }
        rotated = true;
        // Make the off-diagonal Gram entry real, then rotate as in the real case.
        const cplx ph = std::conj(gamma) / ag;
        const double zeta = (beta - alpha) / (2.0 * ag);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        auto apply = [&](std::span<cplx> xp, std::span<cplx> xq) {
          for (std::size_t i = 0; i < xp.size(); ++i)
          {
            const cplx a0 = xp[i], b0 = xq[i] * ph;
            xp[i] = c * a0 - s * b0;
            xq[i] = s * a0 + c * b0;
          }
        };
        apply(up, uq);
        apply(v.col(p), v.col(q));
      }
    }
  }
  if (rotated)
  {
    throw Error(ErrorKind::ConvergenceFailure,
                "Jacobi SVD did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j)
  {
    sig[j] = norm2(u.col(j));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return sig[i] > sig[j]; });

  SVDResult res{CMatrix(m, n), std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k)
  {
    const std::size_t j = order[k];
    res.sigma[k] = sig[j];
    auto uk = res.u.col(k);
    std::copy(u.col(j).begin(), u.col(j).end(), uk.begin());
    if (sig[j] > 0.0)
    {
      scale(1.0 / sig[j], uk);
    }
    res.v.set_column(k, v.col(j));
  }
  return res;
}

}  // namespace ratnlevp
