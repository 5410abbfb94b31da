// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ratnlevp/error.hpp"
#include "ratnlevp/kernels.hpp"
#include "ratnlevp/linop.hpp"
#include "ratnlevp/serialize.hpp"

namespace ratnlevp
{

namespace
{

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Projected problems up to this size are solved densely in the reduced subspace iteration.
constexpr std::size_t kDenseReducedLimit = 600;

struct RitzPair
{
  cplx lambda;
  CVector u;
};

bool finite(cplx z)
{
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Unit vector from the last n entries of a flat (m+1)n vector; falls back to
// the largest block when the bottom block vanishes (pole artifacts).
CVector bottom_block(std::span<const cplx> x, std::size_t n)
{
  CVector u(x.end() - static_cast<std::ptrdiff_t>(n), x.end());
  double nu = norm2(u);
  const double nx = norm2(x);
  if (nu <= 1e-14 * nx)
  {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t b = 0; b * n < x.size(); ++b)
    {
      const double t = norm2(x.subspan(b * n, n));
      if (t > best_norm)
      {
        best_norm = t;
        best = b;
      }
    }
    u.assign(x.begin() + static_cast<std::ptrdiff_t>(best * n),
             x.begin() + static_cast<std::ptrdiff_t>((best + 1) * n));
    nu = best_norm;
  }
  if (nu > 0.0)
  {
    scale(1.0 / nu, u);
  }
  return u;
}

CVector unit(CVector u)
{
  const double nu = norm2(u);
  if (nu > 0.0)
  {
    scale(1.0 / nu, u);
  }
  return u;
}

double pair_scaled_residual(const Surrogate &s, const SurrogateNorms &norms, cplx lambda,
                            std::span<const cplx> u)
{
  return surrogate_residual_norm(s, lambda, u) / surrogate_scale(s, norms, lambda);
}

// Rows of a times columns of b, restricted to the leading ca / cb columns.
CMatrix gram(const CMatrix &a, std::size_t ca, const CMatrix &b, std::size_t cb)
{
  CMatrix g(ca, cb);
  for (std::size_t j = 0; j < cb; ++j)
  {
    for (std::size_t i = 0; i < ca; ++i)
    {
      g(i, j) = dot(a.col(i), b.col(j));
    }
  }
  return g;
}

// Leading `cols` columns of a times y.
CMatrix times_leading(const CMatrix &a, std::size_t cols, const CMatrix &y)
{
  CMatrix out(a.rows(), y.cols());
  for (std::size_t j = 0; j < y.cols(); ++j)
  {
    auto oj = out.col(j);
    for (std::size_t i = 0; i < cols; ++i)
    {
      const cplx c = y(i, j);
      if (c != cplx(0.0))
      {
        axpy(c, a.col(i), oj);
      }
    }
  }
  return out;
}

// sum_i y(i, col) * a(:, i) over the leading `cols` columns of a.
CVector combine_columns(const CMatrix &a, std::size_t cols, const CMatrix &y, std::size_t col)
{
  CVector x(a.rows());
  for (std::size_t i = 0; i < cols; ++i)
  {
    axpy(y(i, col), a.col(i), x);
  }
  return x;
}

// Classical Gram-Schmidt with one reorthogonalization against the leading
// `cols` columns of v.
void orthogonalize(const CMatrix &v, std::size_t cols, std::span<cplx> r)
{
  for (int pass = 0; pass < 2; ++pass)
  {
    CVector h(cols);
    for (std::size_t i = 0; i < cols; ++i)
    {
      h[i] = dot(v.col(i), r);
    }
    for (std::size_t i = 0; i < cols; ++i)
    {
      axpy(-h[i], v.col(i), r);
    }
  }
}

CVector random_orthogonal(const CMatrix &v, std::size_t cols, std::mt19937_64 &rng)
{
  for (int attempt = 0; attempt < 10; ++attempt)
  {
    CVector r = random_vector(v.rows(), rng);
    const double before = norm2(r);
    orthogonalize(v, cols, r);
    const double after = norm2(r);
    if (after > 1e-8 * before)
    {
      scale(1.0 / after, r);
      return r;
    }
  }
  throw Error(ErrorKind::DegenerateBasis, "cannot extend the Krylov basis");
}

struct ArnoldiResult
{
  std::vector<RitzPair> pairs;  // the k nearest usable Ritz pairs, by distance
  std::vector<cplx> pole_hits;  // Ritz values at poles met before the k-th pair
  std::size_t restarts = 0;
  bool converged = false;
  std::size_t krylov_dim = 0;
};

// Thick-restart Arnoldi on H = (A - sigma M)^{-1} M. W = H V is stored
// explicitly so the Rayleigh quotient V^H H V stays exact after restarts.
ArnoldiResult arnoldi(const Surrogate &s, cplx sigma, std::size_t k, std::size_t nu, double tol,
                      std::size_t max_restarts, std::uint64_t seed)
{
  const std::size_t m = s.m(), n = s.n, big = (m + 1) * n;
  const auto fac = factor_shifted(s, sigma);
  const auto norms = surrogate_norms(s);
  const std::size_t cap = std::min(std::max(2 * nu, k + 20), big);
  const std::size_t nkeep = cap > 2 ? std::min(cap - 2, std::max(k + 2, nu)) : 0;

  std::mt19937_64 rng(seed);
  CMatrix v(big, cap + 1), w(big, cap);
  {
    CVector v0 = random_vector(big, rng);
    scale(1.0 / norm2(v0), v0);
    v.set_column(0, v0);
  }
  auto op = [&](std::span<const cplx> x) {
    return apply_shift_invert(fac, s, BlockVector::from_flat(x, m, n)).flat();
  };

  ArnoldiResult res;
  res.krylov_dim = cap;
  std::size_t j = 0;
  for (std::size_t restart = 0;; ++restart)
  {
    bool complete = false;
    while (j < cap)
    {
      CVector r = op(v.col(j));
      w.set_column(j, r);
      const double before = norm2(r);
      orthogonalize(v, j + 1, r);
      ++j;
      if (j == big)
      {
        complete = true;
        break;
      }
      const double after = norm2(r);
      if (!(after > 1e-12 * before))
      {
        v.set_column(j, random_orthogonal(v, j, rng));
      }
      else
      {
        scale(1.0 / after, r);
        v.set_column(j, r);
      }
    }

    const CMatrix g = gram(v, j, w, j);
    const auto eg = dense_eig(g);
    CVector lambdas(j);
    for (std::size_t i = 0; i < j; ++i)
    {
      const cplx th = eg.values[i];
      lambdas[i] = std::abs(th) > 0.0 ? sigma + 1.0 / th : infinite_eigenvalue();
    }
    const auto order = order_by_distance(lambdas, sigma);

    std::vector<RitzPair> cand;
    std::vector<cplx> hits;
    std::vector<std::size_t> keep;
    bool ok = true;
    for (std::size_t idx : order)
    {
      if (!finite(lambdas[idx]))
      {
        continue;
      }
      if (near_pole(s, lambdas[idx]))
      {
        if (cand.size() < k)
        {
          hits.push_back(lambdas[idx]);
        }
        continue;
      }
      if (keep.size() < nkeep)
      {
        keep.push_back(idx);
      }
      if (cand.size() < k)
      {
        RitzPair p{lambdas[idx], bottom_block(combine_columns(v, j, eg.vectors, idx), n)};
        ok = ok && pair_scaled_residual(s, norms, p.lambda, p.u) <= tol;
        cand.push_back(std::move(p));
      }
    }
    ok = ok && cand.size() == k;

    if (ok || complete || restart >= max_restarts)
    {
      res.pairs = std::move(cand);
      res.pole_hits = std::move(hits);
      res.restarts = restart;
      res.converged = ok || complete;
      return res;
    }

    // Thick restart: V <- [V Y, v_j], W <- W Y with Y orthonormal.
    CMatrix y(j, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c)
    {
      for (std::size_t i = 0; i < j; ++i)
      {
        y(i, c) = eg.vectors(i, keep[c]);
      }
    }
    const auto yq = keep.empty() ? Orthonormalized{CMatrix(j, 0), 0} : mgs_orthonormalize(y);
    const CMatrix yr = yq.q.leading_columns(yq.rank);
    const CMatrix vnew = times_leading(v, j, yr);
    const CMatrix wnew = times_leading(w, j, yr);
    const CVector next = v.column(j);
    for (std::size_t c = 0; c < yq.rank; ++c)
    {
      v.set_column(c, vnew.col(c));
      w.set_column(c, wnew.col(c));
    }
    v.set_column(yq.rank, next);
    j = yq.rank;
  }
}

std::vector<RitzPair> dense_reduced_pairs(const Surrogate &sr)
{
  const auto lin = materialize(sr);
  const auto ev = dense_geig(lin.A, lin.M, {.max_dim = 100000, .shift = {}});
  std::vector<RitzPair> out;
  for (std::size_t i = 0; i < ev.values.size(); ++i)
  {
    if (!finite(ev.values[i]))
    {
      continue;
    }
    out.push_back({ev.values[i], bottom_block(ev.vectors.col(i), sr.n)});
  }
  return out;
}

ReportPair make_report_pair(const Surrogate &s, const Contour &contour, cplx lambda, CVector u)
{
  ReportPair p;
  p.lambda = lambda;
  canonicalize_phase(u);
  p.u = std::move(u);
  p.inside = contour.is_inside(lambda);
  p.pole_flag = near_pole(s, lambda);
  p.residual_surrogate = pole_at(s, lambda) >= 0 ? kNaN : surrogate_residual_norm(s, lambda, p.u);
  return p;
}

nlohmann::json base_metadata(const Surrogate &s, const SolveConfig &cfg, const Contour &contour)
{
  nlohmann::json j;
  j["solver"] = to_string(cfg.method);
  j["sigma"] = complex_to_json(cfg.shift(contour));
  j["k"] = cfg.k;
  j["nu"] = cfg.subspace_dim();
  j["q"] = cfg.q;
  j["tol"] = cfg.tol;
  j["max_outer"] = cfg.max_outer;
  j["seed"] = cfg.seed;
  j["contour"] = contour_to_json(contour);
  j["m"] = s.m();
  j["n"] = s.n;
  j["quadrature"] = quadrature_scheme(contour);
  return j;
}

nlohmann::json values_json(const std::vector<cplx> &v)
{
  auto a = nlohmann::json::array();
  for (cplx z : v)
  {
    a.push_back(complex_to_json(z));
  }
  return a;
}

void sort_report(EigenReport &r, cplx sigma)
{
  CVector lam;
  for (const auto &p : r.pairs)
  {
    lam.push_back(p.lambda);
  }
  std::vector<ReportPair> sorted;
  for (std::size_t i : order_by_distance(lam, sigma))
  {
    sorted.push_back(std::move(r.pairs[i]));
  }
  r.pairs = std::move(sorted);
}

BlockVector normalized(BlockVector w)
{
  const double nw = w.norm();
  if (nw > 0.0)
  {
    for (auto &vi : w.v)
    {
      scale(1.0 / nw, vi);
    }
    scale(1.0 / nw, w.u);
  }
  return w;
}

// q applications of the shift-invert operator, renormalizing each step.
BlockVector power_steps(const ShiftedFactorization &fac, const Surrogate &s, BlockVector w, std::size_t q)
{
  for (std::size_t step = 0; step < q; ++step)
  {
    w = normalized(apply_shift_invert(fac, s, w));
  }
  return w;
}

}  // namespace

std::string to_string(Method m)
{
  switch (m)
  {
  case Method::FullArnoldi:
    return "full-arnoldi";
  case Method::FullSubspace:
    return "full-subspace";
  case Method::ReducedSubspace:
    return "reduced-subspace";
  case Method::DenseLinearization:
    return "dense";
  }
  return "unknown";
}

Method parse_method(const std::string &name)
{
  for (Method m : {Method::FullArnoldi, Method::FullSubspace, Method::ReducedSubspace,
                   Method::DenseLinearization})
  {
    if (to_string(m) == name)
    {
      return m;
    }
  }
  throw Error(ErrorKind::ConfigError,
              "unknown method '" + name + "' (full-arnoldi, full-subspace, reduced-subspace, dense, beyn)");
}

void SolveConfig::validate() const
{
  auto fail = [](const std::string &msg) { throw Error(ErrorKind::ConfigError, "solver." + msg); };
  if (k == 0)
  {
    fail("k: must be at least 1");
  }
  if (k > subspace_dim())
  {
    fail("nu: must be at least k");
  }
  if (q == 0)
  {
    fail("q: must be at least 1");
  }
  if (!(tol > 0.0))
  {
    fail("tol: must be positive");
  }
  if (max_outer == 0)
  {
    fail("max_outer: must be at least 1");
  }
  if (sigma && !finite(*sigma))
  {
    fail("sigma: must be finite");
  }
}

std::vector<std::size_t> order_by_distance(std::span<const cplx> values, cplx sigma)
{
  std::vector<double> d(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    d[i] = finite(values[i]) ? std::abs(values[i] - sigma) : std::numeric_limits<double>::infinity();
  }
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  // Regroup runs of near-equal distances by the tie rule.
  for (std::size_t start = 0; start < idx.size();)
  {
    std::size_t end = start + 1;
    while (end < idx.size() && std::isfinite(d[idx[start]]) &&
           d[idx[end]] - d[idx[start]] <= 1e-9 * std::max(d[idx[end]], 1e-300))
    {
      ++end;
    }
    std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(start),
                     idx.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                       if (values[a].imag() != values[b].imag())
                       {
                         return values[a].imag() < values[b].imag();
                       }
                       return values[a].real() < values[b].real();
                     });
    start = end;
  }
  return idx;
}

EigenReport solve_full_arnoldi(const Surrogate &s, const SolveConfig &cfg, const Contour &contour)
{
  cfg.validate();
  const cplx sigma = cfg.shift(contour);
  const auto res = arnoldi(s, sigma, cfg.k, cfg.subspace_dim(), cfg.tol, cfg.max_outer, cfg.seed);
  if (!res.converged)
  {
    throw Error(ErrorKind::ConvergenceFailure,
                "Arnoldi did not converge after " + std::to_string(res.restarts) + " restarts");
  }
  EigenReport r;
  for (const auto &p : res.pairs)
  {
    r.pairs.push_back(make_report_pair(s, contour, p.lambda, p.u));
  }
  r.iterations = res.restarts;
  r.metadata = base_metadata(s, cfg, contour);
  r.metadata["krylov_dim"] = res.krylov_dim;
  r.metadata["pole_artifacts"] = values_json(res.pole_hits);
  sort_report(r, sigma);
  return r;
}

EigenReport solve_full_subspace(const Surrogate &s, const SolveConfig &cfg, const Contour &contour)
{
  cfg.validate();
  const cplx sigma = cfg.shift(contour);
  const std::size_t m = s.m(), n = s.n, big = (m + 1) * n;
  const std::size_t nu = std::min(cfg.subspace_dim(), big);
  if (cfg.k > nu)
  {
    throw Error(ErrorKind::ConfigError, "solver.k: exceeds the problem dimension");
  }
  const auto fac = factor_shifted(s, sigma);
  const auto norms = surrogate_norms(s);
  std::mt19937_64 rng(cfg.seed);

  std::vector<BlockVector> cols;
  for (std::size_t c = 0; c < nu; ++c)
  {
    cols.push_back(BlockVector::random(m, n, rng));
  }

  std::vector<cplx> pole_hits;
  for (std::size_t outer = 1; outer <= cfg.max_outer; ++outer)
  {
    kernels::for_each_index(nu, [&](std::size_t c) { cols[c] = power_steps(fac, s, cols[c], cfg.q); });
    CMatrix wm(big, nu);
    for (std::size_t c = 0; c < nu; ++c)
    {
      wm.set_column(c, cols[c].flat());
    }
    const auto orth = mgs_orthonormalize(wm);
    if (orth.rank < cfg.k)
    {
      throw Error(ErrorKind::DegenerateBasis, "subspace rank " + std::to_string(orth.rank) + " < k");
    }
    const std::size_t r = orth.rank;
    // Rayleigh-Ritz with H = (A - sigma M)^{-1} M: theta -> lambda = sigma + 1/theta.
    CMatrix hq(big, r);
    kernels::for_each_index(r, [&](std::size_t c) {
      hq.set_column(c, apply_shift_invert(fac, s, BlockVector::from_flat(orth.q.col(c), m, n)).flat());
    });
    auto ev = dense_eig(gram(orth.q, r, hq, r));
    for (auto &th : ev.values)
    {
      th = std::abs(th) > 0.0 ? sigma + 1.0 / th : infinite_eigenvalue();
    }
    const auto order = order_by_distance(ev.values, sigma);

    std::vector<EigenPair> acc;
    pole_hits.clear();
    for (std::size_t idx : order)
    {
      if (acc.size() == cfg.k)
      {
        break;
      }
      if (!finite(ev.values[idx]))
      {
        continue;
      }
      if (near_pole(s, ev.values[idx]))
      {
        pole_hits.push_back(ev.values[idx]);
        continue;
      }
      const CVector x = combine_columns(orth.q, r, ev.vectors, idx);
      acc.push_back({ev.values[idx], bottom_block(x, n)});
    }

    const bool done = acc.size() == cfg.k && surrogate_scaled_residual_sum(s, norms, acc) <= cfg.tol;
    if (done)
    {
      EigenReport rep;
      for (const auto &p : acc)
      {
        rep.pairs.push_back(make_report_pair(s, contour, p.lambda, p.u));
      }
      rep.iterations = outer;
      rep.metadata = base_metadata(s, cfg, contour);
      rep.metadata["pole_artifacts"] = values_json(pole_hits);
      sort_report(rep, sigma);
      return rep;
    }

    // Restart from all Ritz vectors in distance order.
    const CMatrix ritz = times_leading(orth.q, r, [&] {
      CMatrix y(r, r);
      for (std::size_t c = 0; c < r; ++c)
      {
        for (std::size_t i = 0; i < r; ++i)
        {
          y(i, c) = ev.vectors(i, order[c]);
        }
      }
      return y;
    }());
    for (std::size_t c = 0; c < nu; ++c)
    {
      cols[c] = c < r ? BlockVector::from_flat(ritz.col(c), m, n) : BlockVector::random(m, n, rng);
    }
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "subspace iteration did not converge in " + std::to_string(cfg.max_outer) + " sweeps");
}

EigenReport solve_reduced_subspace(const SplitProblem &prob, const Surrogate &s, const SolveConfig &cfg,
                                   const Contour &contour)
{
  cfg.validate();
  const cplx sigma = cfg.shift(contour);
  const std::size_t m = s.m(), n = s.n, nu = cfg.subspace_dim();
  if (prob.n() != n)
  {
    throw Error(ErrorKind::DimensionMismatch, "problem and surrogate sizes differ");
  }
  if (nu > n)
  {
    throw Error(ErrorKind::ConfigError, "solver.nu: reduced iteration needs nu <= n = " + std::to_string(n));
  }
  const auto fac = factor_shifted(s, sigma);
  const auto norms = surrogate_norms(s);
  std::mt19937_64 rng(cfg.seed);

  std::vector<BlockVector> starts;
  for (std::size_t c = 0; c < nu; ++c)
  {
    starts.push_back(BlockVector::random(m, n, rng));
  }

  std::vector<cplx> pole_hits;
  std::string reduced_solver;
  for (std::size_t outer = 1; outer <= cfg.max_outer; ++outer)
  {
    // Only the bottom block of each run is kept.
    CMatrix u(n, nu);
    kernels::for_each_index(nu, [&](std::size_t c) { u.set_column(c, power_steps(fac, s, starts[c], cfg.q).u); });
    const auto orth = mgs_orthonormalize(u);
    if (orth.rank < cfg.k)
    {
      throw Error(ErrorKind::DegenerateBasis, "reduced basis rank " + std::to_string(orth.rank) + " < k");
    }
    const CMatrix q = orth.q.leading_columns(orth.rank);
    const Surrogate sr = project_surrogate(s, q);

    std::vector<RitzPair> red;
    if ((m + 1) * orth.rank <= kDenseReducedLimit)
    {
      reduced_solver = "dense";
      red = dense_reduced_pairs(sr);
    }
    else
    {
      reduced_solver = "arnoldi";
      red = arnoldi(sr, sigma, nu, nu, 1e-2 * cfg.tol, 30, cfg.seed + outer).pairs;
    }

    CVector lam;
    for (const auto &p : red)
    {
      lam.push_back(p.lambda);
    }
    std::vector<EigenPair> interior;
    pole_hits.clear();
    for (std::size_t idx : order_by_distance(lam, sigma))
    {
      if (!finite(lam[idx]) || !contour.is_inside(lam[idx]))
      {
        continue;
      }
      if (near_pole(s, lam[idx]))
      {
        pole_hits.push_back(lam[idx]);
        continue;
      }
      interior.push_back({lam[idx], unit(q * std::span<const cplx>(red[idx].u))});
    }

    if (interior.size() >= cfg.k)
    {
      // The projected problem also has spurious interior Ritz values; keep
      // the k interior pairs with the smallest scaled residuals.
      std::vector<double> res(interior.size());
      kernels::for_each_index(interior.size(), [&](std::size_t i) {
        res[i] = pair_scaled_residual(s, norms, interior[i].lambda, interior[i].u);
      });
      std::vector<std::size_t> best(interior.size());
      std::iota(best.begin(), best.end(), 0);
      std::stable_sort(best.begin(), best.end(), [&](std::size_t a, std::size_t b) { return res[a] < res[b]; });
      std::vector<EigenPair> acc;
      for (std::size_t i = 0; i < cfg.k; ++i)
      {
        acc.push_back(interior[best[i]]);
      }
      if (surrogate_scaled_residual_sum(s, norms, acc) <= cfg.tol)
      {
        EigenReport rep;
        for (const auto &p : acc)
        {
          rep.pairs.push_back(make_report_pair(s, contour, p.lambda, p.u));
        }
        rep.iterations = outer;
        rep.metadata = base_metadata(s, cfg, contour);
        rep.metadata["pole_artifacts"] = values_json(pole_hits);
        rep.metadata["reduced_solver"] = reduced_solver;
        sort_report(rep, sigma);
        attach_exact_residuals(rep, prob);
        return rep;
      }
    }

    // Restart from the lifted interior Ritz pairs, padded with random vectors.
    for (std::size_t c = 0; c < nu; ++c)
    {
      starts[c] = c < interior.size() ? normalized(lift_eigvec(s, interior[c].lambda, interior[c].u))
                                      : BlockVector::random(m, n, rng);
    }
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "reduced subspace iteration did not converge in " + std::to_string(cfg.max_outer) + " sweeps");
}

EigenReport solve_dense_linearization(const Surrogate &s, const Contour &contour, std::size_t max_dim)
{
  const std::size_t big = (s.m() + 1) * s.n;
  if (big > max_dim)
  {
    throw Error(ErrorKind::DimensionCap, "dense linearization of size " + std::to_string(big) +
                                             " exceeds the cap " + std::to_string(max_dim));
  }
  const auto lin = materialize(s);
  const auto ev = dense_geig(lin.A, lin.M, {.max_dim = max_dim, .shift = {}});
  EigenReport r;
  std::size_t infinite = 0;
  for (std::size_t i = 0; i < ev.values.size(); ++i)
  {
    if (!finite(ev.values[i]))
    {
      ++infinite;
      continue;
    }
    r.pairs.push_back(make_report_pair(s, contour, ev.values[i], bottom_block(ev.vectors.col(i), s.n)));
  }
  SolveConfig cfg;
  cfg.method = Method::DenseLinearization;
  r.metadata = base_metadata(s, cfg, contour);
  for (const char *key : {"k", "nu", "q", "tol", "max_outer", "seed"})
  {
    r.metadata.erase(key);
  }
  r.metadata["infinite_eigenvalues"] = infinite;
  sort_report(r, contour.center());
  return r;
}

EigenReport solve(const SplitProblem &prob, const Surrogate &s, const SolveConfig &cfg, const Contour &contour)
{
  EigenReport r;
  switch (cfg.method)
  {
  case Method::FullArnoldi:
    r = solve_full_arnoldi(s, cfg, contour);
    break;
  case Method::FullSubspace:
    r = solve_full_subspace(s, cfg, contour);
    break;
  case Method::ReducedSubspace:
    r = solve_reduced_subspace(prob, s, cfg, contour);
    break;
  case Method::DenseLinearization:
    r = solve_dense_linearization(s, contour);
    if (cfg.sigma)
    {
      sort_report(r, *cfg.sigma);
      r.metadata["sigma"] = complex_to_json(*cfg.sigma);
    }
    break;
  }
  attach_exact_residuals(r, prob);
  return r;
}

void attach_exact_residuals(EigenReport &report, const SplitProblem &prob)
{
  for (auto &p : report.pairs)
  {
    try
    {
      p.residual_T = residual_norm(prob, p.lambda, p.u);
    }
    catch (const Error &)
    {
      p.residual_T = kNaN;
    }
  }
}

std::vector<EigenPair> interior_pairs(const EigenReport &report)
{
  std::vector<EigenPair> out;
  for (const auto &p : report.pairs)
  {
    if (p.inside && !p.pole_flag)
    {
      out.push_back({p.lambda, p.u});
    }
  }
  return out;
}

}  // namespace ratnlevp
