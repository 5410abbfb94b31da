// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/analysis.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "ratnlevp/error.hpp"
#include "ratnlevp/linop.hpp"

namespace ratnlevp
{

namespace
{

void require_identity_a0(const Surrogate &s, const char *what)
{
  if (s.A0.rows() != s.n || norm_max(s.A0 - CMatrix::identity(s.n)) > 1e-14)
  {
    throw Error(ErrorKind::NotIdentityM, std::string(what) + " assumes A0 = I");
  }
}

// z^k as a LogDet.
LogDet power_factor(cplx z, std::size_t k)
{
  LogDet d;
  if (z == cplx(0.0))
  {
    d.zero = true;
    d.phase = 0.0;
    d.log_abs = -std::numeric_limits<double>::infinity();
    return d;
  }
  const double kk = static_cast<double>(k);
  d.log_abs = kk * std::log(std::abs(z));
  d.phase = std::polar(1.0, kk * std::arg(z));
  return d;
}

double det_gap(const LogDet &a, const LogDet &b)
{
  if (a.zero && b.zero)
  {
    return 0.0;
  }
  if (a.zero != b.zero)
  {
    return std::numeric_limits<double>::infinity();
  }
  const double mag = std::abs(a.log_abs - b.log_abs);
  const double phase = std::abs(std::arg(a.phase / b.phase));
  return std::max(mag, phase);
}

// ||B0||_F + |z| ||A0||_F + sum_i ||B_i||_F / |sigma_i - z|, the size of the
// terms of S(z); S(z) itself vanishes at an eigenvalue when n = 1.
double schur_scale(const Surrogate &s, cplx z)
{
  double sc = norm_fro(s.B0) + std::abs(z) * norm_fro(s.A0);
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    sc += norm_fro(s.B[i]) / std::abs(s.poles[i] - z);
  }
  return std::max(sc, std::numeric_limits<double>::min());
}

CVector unit_copy(CVector v)
{
  const double nv = norm2(v);
  if (nv > 0.0)
  {
    scale(1.0 / nv, v);
  }
  return v;
}

}  // namespace

DetCheck det_identity_check(const Surrogate &s, cplx z, std::size_t max_dim)
{
  require_identity_a0(s, "det_identity_check");
  const std::size_t m = s.m(), n = s.n, big = (m + 1) * n;
  if (big > max_dim)
  {
    throw Error(ErrorKind::DimensionCap,
                "linearization of size " + std::to_string(big) + " exceeds " + std::to_string(max_dim));
  }
  CMatrix shifted = materialize(s).A;
  for (std::size_t i = 0; i < big; ++i)
  {
    shifted(i, i) -= z;
  }
  DetCheck out;
  out.lhs = log_det(shifted);

  const long pole = pole_at(s, z);
  if (pole >= 0)
  {
    const auto ip = static_cast<std::size_t>(pole);
    out.pole_branch = true;
    out.rhs = log_det(s.B[ip]);
    for (std::size_t j = 0; j < m; ++j)
    {
      if (j != ip)
      {
        out.rhs = out.rhs * power_factor(s.poles[j] - s.poles[ip], n);
      }
    }
  }
  else
  {
    out.rhs = log_det(schur_matrix(s, z));
    for (std::size_t j = 0; j < m; ++j)
    {
      out.rhs = out.rhs * power_factor(s.poles[j] - z, n);
    }
  }
  out.rel_err = det_gap(out.lhs, out.rhs);
  return out;
}

ConditionEstimate condition_number(const Surrogate &s, cplx lambda, CVector u, CVector y,
                                   const ConditionOptions &opts)
{
  require_identity_a0(s, "condition_number");
  const std::size_t n = s.n;
  if (u.size() != n || y.size() != n)
  {
    throw Error(ErrorKind::DimensionMismatch, "u and y must have length n");
  }
  u = unit_copy(std::move(u));
  y = unit_copy(std::move(y));
  const CMatrix sl = schur_matrix(s, lambda);  // throws AtPole
  const double sn = schur_scale(s, lambda);
  const double ru = norm2(sl * std::span<const cplx>(u));
  CVector sy(n);
  for (std::size_t c = 0; c < n; ++c)
  {
    for (std::size_t r = 0; r < n; ++r)
    {
      sy[c] += std::conj(sl(r, c)) * y[r];
    }
  }
  const double ry = norm2(sy);
  if (ru > opts.residual_tol * sn || ry > opts.residual_tol * sn)
  {
    throw Error(ErrorKind::NotEigenpair, "relative residuals " + std::to_string(ru / sn) + " (right), " +
                                             std::to_string(ry / sn) + " (left) exceed " +
                                             std::to_string(opts.residual_tol));
  }

  ConditionEstimate ce;
  ce.lambda = lambda;
  double su = 1.0, sy2 = 1.0;
  // S'(lambda) u = -u + sum_i B_i u / (sigma_i - lambda)^2
  CVector dsu(u.size());
  axpy(-1.0, u, dsu);
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    const cplx gap = s.poles[i] - lambda;
    const double g2 = std::norm(gap);
    su += 1.0 / g2;
    // ||B_i^H y||
    CVector bhy(n);
    for (std::size_t c = 0; c < n; ++c)
    {
      for (std::size_t r = 0; r < n; ++r)
      {
        bhy[c] += std::conj(s.B[i](r, c)) * y[r];
      }
    }
    const double nb = norm2(bhy);
    sy2 += (opts.printed_form ? nb : nb * nb) / g2;
    const CVector bu = s.B[i] * std::span<const cplx>(u);
    axpy(1.0 / (gap * gap), bu, dsu);
  }
  ce.alpha_u = std::sqrt(su);
  ce.alpha_y = std::sqrt(sy2);
  ce.denom = std::abs(dot(y, dsu));
  ce.kappa = ce.denom > 0.0 ? ce.alpha_u * ce.alpha_y / ce.denom : std::numeric_limits<double>::infinity();
  return ce;
}

CVector left_eigvec(const Surrogate &s, cplx lambda, std::uint64_t seed)
{
  CMatrix sl = schur_matrix(s, lambda);
  const double sn = schur_scale(s, lambda);
  LUFactorization fac;
  try
  {
    fac = lu_factor(sl, 0.0);
  }
  catch (const Error &)
  {
    CMatrix reg = sl;
    for (std::size_t i = 0; i < s.n; ++i)
    {
      reg(i, i) += 1e-14 * std::max(sn, 1.0);
    }
    fac = lu_factor(reg, 0.0);
  }
  std::mt19937_64 rng(seed);
  CVector y = unit_copy(random_vector(s.n, rng));
  double res = std::numeric_limits<double>::infinity();
  for (int step = 0; step < 6; ++step)
  {
    y = unit_copy(lu_solve_adjoint(fac, y));
    CVector sy(s.n);
    for (std::size_t c = 0; c < s.n; ++c)
    {
      for (std::size_t r = 0; r < s.n; ++r)
      {
        sy[c] += std::conj(sl(r, c)) * y[r];
      }
    }
    res = norm2(sy);
    if (step >= 1 && res <= 1e-8 * sn)
    {
      break;
    }
  }
  if (!(res <= 1e-6 * sn))
  {
    throw Error(ErrorKind::ConvergenceFailure,
                "left eigenvector residual " + std::to_string(res / sn) + " relative to the size of S");
  }
  canonicalize_phase(y);
  return y;
}

std::string to_string(HaloLabel l)
{
  switch (l)
  {
  case HaloLabel::InteriorTrue:
    return "InteriorTrue";
  case HaloLabel::ExteriorLinearPencil:
    return "ExteriorLinearPencil";
  case HaloLabel::Halo:
    return "Halo";
  case HaloLabel::PoleArtifact:
    return "PoleArtifact";
  }
  return "Halo";
}

HaloClassification classify_halo(const EigenReport &report, const Surrogate &s, const Contour &contour,
                                 double tol_match, const std::optional<std::vector<cplx>> &reference,
                                 double delta)
{
  HaloClassification out;
  out.delta = delta;
  out.band = delta * contour.diameter();
  const auto pencil = dense_geig(s.B0, s.A0, {.vectors = false, .shift = {}});
  std::vector<cplx> exterior;
  for (cplx z : pencil.values)
  {
    if (is_infinite(z))
    {
      continue;
    }
    out.pencil_eigenvalues.push_back(z);
    if (!contour.is_inside(z))
    {
      exterior.push_back(z);
    }
  }
  auto within = [&](cplx z, const std::vector<cplx> &set) {
    for (cplx w : set)
    {
      if (std::abs(z - w) <= tol_match)
      {
        return true;
      }
    }
    return false;
  };

  for (const auto &p : report.pairs)
  {
    HaloEntry e;
    e.lambda = p.lambda;
    e.boundary_distance = contour.distance_to_boundary(p.lambda);
    const bool inside = contour.is_inside(p.lambda);
    if (p.pole_flag || near_pole(s, p.lambda))
    {
      e.label = HaloLabel::PoleArtifact;
    }
    else if (within(p.lambda, exterior))
    {
      e.label = HaloLabel::ExteriorLinearPencil;
    }
    else if (inside && e.boundary_distance > out.band)
    {
      e.label = HaloLabel::InteriorTrue;
      e.matched = reference && within(p.lambda, *reference);
    }
    else if (e.boundary_distance <= out.band)
    {
      e.label = HaloLabel::Halo;
    }
    else
    {
      e.label = HaloLabel::Halo;
      e.low_confidence = true;
    }
    out.entries.push_back(e);
  }
  return out;
}

BoundSummary residual_bound_check(const SplitProblem &prob, const RationalApprox &ra,
                               const std::vector<EigenPair> &pairs, const Contour &inner,
                               bool throw_on_violation, std::size_t grid_density)
{
  if (ra.p() != prob.p())
  {
    throw Error(ErrorKind::DimensionMismatch, "approximation and problem have different term counts");
  }
  BoundSummary out;
  for (const auto &a : prob.A)
  {
    out.mu += norm_spectral(a);
  }
  for (std::size_t j = 0; j < ra.p(); ++j)
  {
    out.eps = std::max(out.eps, approx_error(ra, j, inner, grid_density));
  }
  for (const auto &p : pairs)
  {
    if (!inner.is_inside(p.lambda))
    {
      throw Error(ErrorKind::RegionNotInterior, "eigenvalue outside the inner region");
    }
    BoundCheck c;
    c.lambda = p.lambda;
    const CVector u = unit_copy(p.u);
    const CVector tu = apply_T(prob, p.lambda, u);
    c.lhs = norm2(tu);
    c.lhs_inf = norm_inf(std::span<const cplx>(tu));
    c.bound = out.mu * out.eps;
    c.holds = c.lhs <= c.bound * (1.0 + 1e-6);
    if (!c.holds && throw_on_violation)
    {
      throw Error(ErrorKind::BoundViolated, "||T(lambda)u|| = " + std::to_string(c.lhs) + " > mu*eps = " +
                                                std::to_string(c.bound) + " at lambda = " +
                                                std::to_string(p.lambda.real()) + (p.lambda.imag() < 0 ? "" : "+") +
                                                std::to_string(p.lambda.imag()) + "i");
    }
    out.checks.push_back(c);
  }
  return out;
}

}  // namespace ratnlevp
