// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ratnlevp/error.hpp"
#include "ratnlevp/kernels.hpp"
#include "ratnlevp/serialize.hpp"

namespace ratnlevp
{

void BeynConfig::validate() const
{
  auto fail = [](const std::string &msg) { throw Error(ErrorKind::ConfigError, "beyn." + msg); };
  if (N < 8)
  {
    fail("N: must be at least 8");
  }
  if (K == 0)
  {
    fail("K: must be at least 1");
  }
  if (!(rank_tol > 0.0 && rank_tol < 1.0))
  {
    fail("rank_tol: must lie in (0, 1)");
  }
}

std::size_t BeynConfig::probes(std::size_t n) const
{
  return std::min(n, ell ? ell : std::size_t{10});
}

BeynConfig beyn_defaults(std::size_t n, std::size_t expected)
{
  BeynConfig cfg;
  const std::size_t want = expected + 5;
  cfg.ell = std::min(n, want);
  cfg.K = (want + cfg.ell - 1) / cfg.ell;
  return cfg;
}

SVDResult beyn_svd(const CMatrix &a)
{
  SVDResult r = jacobi_svd(a);
  CMatrix us = r.u;
  for (std::size_t j = 0; j < r.sigma.size(); ++j)
  {
    for (std::size_t i = 0; i < us.rows(); ++i)
    {
      us(i, j) *= r.sigma[j];
    }
  }
  const double na = norm_fro(a);
  if (na > 0.0 && norm_fro(a - us * r.v.adjoint()) > 1e-10 * na)
  {
    throw Error(ErrorKind::ConvergenceFailure, "SVD reconstruction error above 1e-10 ||A||");
  }
  return r;
}

EigenReport beyn_solve(const SplitProblem &prob, const Contour &contour, const BeynConfig &cfg)
{
  cfg.validate();
  const std::size_t n = prob.n(), ell = cfg.probes(n), K = cfg.K;
  const QuadratureRule rule = trapezoid_rule(contour, cfg.N);
  const cplx c = contour.center();
  const double rho = 0.5 * contour.diameter();

  std::mt19937_64 rng(cfg.seed);
  const CMatrix probe = CMatrix::random(n, ell, rng);

  // X_k = T(z_k)^{-1} V, one LU per node.
  std::vector<CMatrix> x(rule.m());
  kernels::for_each_index(rule.m(), [&](std::size_t k) {
    LUFactorization fac;
    try
    {
      fac = lu_factor(evaluate_T(prob, rule.nodes[k]));
    }
    catch (const Error &e)
    {
      if (e.kind() != ErrorKind::SingularMatrix)
      {
        throw;
      }
      throw Error(ErrorKind::SingularAtNode, "T is singular at node " + std::to_string(k) + " (z = " +
                                                 std::to_string(rule.nodes[k].real()) + ", " +
                                                 std::to_string(rule.nodes[k].imag()) + ")");
    }
    x[k] = lu_solve(fac, probe);
  });

  // M_p = (1/2 pi i) oint zeta^p T^{-1} V dz, zeta = (z - c)/rho. The rule's
  // weights carry -(1/2 pi i) dz, hence the sign.
  const std::size_t np = 2 * K;
  std::vector<CMatrix> mom(np, CMatrix(n, ell));
  for (std::size_t k = 0; k < rule.m(); ++k)
  {
    const cplx zeta = (rule.nodes[k] - c) / rho;
    cplx coef = -rule.weights[k];
    for (std::size_t p = 0; p < np; ++p)
    {
      for (std::size_t j = 0; j < ell; ++j)
      {
        for (std::size_t i = 0; i < n; ++i)
        {
          mom[p](i, j) += coef * x[k](i, j);
        }
      }
      coef *= zeta;
    }
  }

  // Block Hankel H0 = [M_{i+j}], H1 = [M_{i+j+1}], i, j < K.
  CMatrix h0(K * n, K * ell), h1(K * n, K * ell);
  for (std::size_t i = 0; i < K; ++i)
  {
    for (std::size_t j = 0; j < K; ++j)
    {
      h0.set_block(i * n, j * ell, mom[i + j]);
      h1.set_block(i * n, j * ell, mom[i + j + 1]);
    }
  }
  const SVDResult sv = beyn_svd(h0);
  std::size_t rank = 0;
  const double smax = sv.sigma.empty() ? 0.0 : sv.sigma.front();
  while (rank < sv.sigma.size() && smax > 0.0 && sv.sigma[rank] > cfg.rank_tol * smax)
  {
    ++rank;
  }
  if (rank == K * ell)
  {
    throw Error(ErrorKind::RankDeficientProbe, "moment matrix has full rank " + std::to_string(rank) +
                                                   "; increase ell or K");
  }

  EigenReport rep;
  std::vector<cplx> discarded;
  if (rank > 0)
  {
    // B = V0^H H1 W0 Sigma0^{-1}
    const CMatrix v0 = sv.u.leading_columns(rank);
    CMatrix w0 = sv.v.leading_columns(rank);
    for (std::size_t j = 0; j < rank; ++j)
    {
      for (std::size_t i = 0; i < w0.rows(); ++i)
      {
        w0(i, j) /= sv.sigma[j];
      }
    }
    const CMatrix b = v0.adjoint() * (h1 * w0);
    const auto ev = dense_eig(b);
    for (std::size_t t = 0; t < rank; ++t)
    {
      const cplx lam = c + rho * ev.values[t];
      if (!contour.is_inside(lam))
      {
        discarded.push_back(lam);
        continue;
      }
      CVector u(n);
      for (std::size_t i = 0; i < n; ++i)
      {
        for (std::size_t q = 0; q < rank; ++q)
        {
          u[i] += v0(i, q) * ev.vectors(q, t);
        }
      }
      const double nu = norm2(u);
      if (nu > 0.0)
      {
        scale(1.0 / nu, u);
      }
      canonicalize_phase(u);
      ReportPair p;
      p.lambda = lam;
      p.u = std::move(u);
      p.inside = true;
      rep.pairs.push_back(std::move(p));
    }
  }
  CVector lam;
  for (const auto &p : rep.pairs)
  {
    lam.push_back(p.lambda);
  }
  std::vector<ReportPair> sorted;
  for (std::size_t i : order_by_distance(lam, c))
  {
    sorted.push_back(std::move(rep.pairs[i]));
  }
  rep.pairs = std::move(sorted);
  attach_exact_residuals(rep, prob);

  auto &md = rep.metadata;
  md["solver"] = "beyn";
  md["N"] = cfg.N;
  md["ell"] = ell;
  md["K"] = K;
  md["rank_tol"] = cfg.rank_tol;
  md["rank"] = rank;
  md["seed"] = cfg.seed;
  md["n"] = n;
  md["contour"] = contour_to_json(contour);
  md["quadrature"] = rule.scheme;
  auto d = nlohmann::json::array();
  for (cplx z : discarded)
  {
    d.push_back(complex_to_json(z));
  }
  md["discarded_outside"] = d;
  auto s = nlohmann::json::array();
  for (double v : sv.sigma)
  {
    s.push_back(v);
  }
  md["singular_values"] = s;
  return rep;
}

}  // namespace ratnlevp
