// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#include "ratnlevp/nlevp.hpp"

#include <algorithm>
#include <cmath>

#include "ratnlevp/error.hpp"
#include "ratnlevp/kernels.hpp"

namespace ratnlevp
{

namespace
{

bool finite(cplx z)
{
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_shape(const CMatrix &a, std::size_t n, const std::string &what)
{
  if (a.rows() != n || a.cols() != n)
  {
    throw Error(ErrorKind::DimensionMismatch, what + " must be " + std::to_string(n) + "x" +
                                                  std::to_string(n) + ", got " +
                                                  std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()));
  }
}

void require_distinct(const CVector &poles)
{
  for (std::size_t a = 0; a < poles.size(); ++a)
  {
    for (std::size_t b = a + 1; b < poles.size(); ++b)
    {
      if (poles[a] == poles[b])
      {
        throw Error(ErrorKind::InvalidArgument, "surrogate poles must be pairwise distinct");
      }
    }
  }
}

CVector unit(std::span<const cplx> u)
{
  CVector v(u.begin(), u.end());
  const double nu = norm2(v);
  if (nu == 0.0)
  {
    throw Error(ErrorKind::InvalidArgument, "eigenvector must be nonzero");
  }
  scale(1.0 / nu, v);
  return v;
}

// Sum of matrices times per-matrix scalars applied to one vector.
void add_scaled_products(const std::vector<CMatrix> &mats, std::span<const cplx> coef,
                         std::span<const cplx> u, std::span<cplx> y)
{
  std::vector<CVector> xs(mats.size());
  std::vector<const CMatrix *> ptrs(mats.size());
  std::vector<std::span<const cplx>> spans(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i)
  {
    xs[i].assign(u.begin(), u.end());
    scale(coef[i], xs[i]);
    ptrs[i] = &mats[i];
    spans[i] = xs[i];
  }
  kernels::matvec_sum(ptrs, spans, y);
}

}  // namespace

SplitProblem make_split_problem(std::string name, CMatrix B0, CMatrix A0, std::vector<CMatrix> A,
                                std::vector<ScalarFunction> f)
{
  SplitProblem p;
  p.name = std::move(name);
  const std::size_t n = B0.rows();
  if (n == 0)
  {
    throw Error(ErrorKind::DimensionMismatch, "problem dimension must be positive");
  }
  require_shape(B0, n, "B0");
  require_shape(A0, n, "A0");
  if (A.size() != f.size())
  {
    throw Error(ErrorKind::DimensionMismatch, "need one scalar function per term matrix");
  }
  for (std::size_t j = 0; j < A.size(); ++j)
  {
    require_shape(A[j], n, "A_" + std::to_string(j + 1));
    A[j].check_finite();
  }
  B0.check_finite();
  A0.check_finite();
  p.B0 = std::move(B0);
  p.A0 = std::move(A0);
  p.A = std::move(A);
  p.f = std::move(f);
  try
  {
    const LUFactorization fa = lu_factor(p.A0, 1e-12);
    p.has_invertible_A0 = fa.min_pivot() > 1e-12 * fa.max_pivot();
  }
  catch (const Error &)
  {
    p.has_invertible_A0 = false;
  }
  return p;
}

Surrogate make_surrogate(CMatrix B0, CMatrix A0, CVector poles, std::vector<CMatrix> B,
                         double diameter)
{
  const std::size_t n = B0.rows();
  require_shape(B0, n, "B0");
  require_shape(A0, n, "A0");
  if (B.size() != poles.size())
  {
    throw Error(ErrorKind::DimensionMismatch, "need one B_i per pole");
  }
  for (std::size_t i = 0; i < B.size(); ++i)
  {
    require_shape(B[i], n, "B_" + std::to_string(i + 1));
  }
  require_distinct(poles);
  Surrogate s;
  s.n = n;
  s.B0 = std::move(B0);
  s.A0 = std::move(A0);
  s.poles = std::move(poles);
  s.B = std::move(B);
  s.diameter = diameter;
  return s;
}

Surrogate build_surrogate(const SplitProblem &prob, const RationalApprox &ra)
{
  if (ra.p() != prob.p())
  {
    throw Error(ErrorKind::DimensionMismatch, "approximation has " + std::to_string(ra.p()) +
                                                  " functions, problem has " +
                                                  std::to_string(prob.p()) + " terms");
  }
  require_distinct(ra.poles);
  Surrogate s;
  s.n = prob.n();
  s.B0 = prob.B0;
  s.A0 = prob.A0;
  s.poles = ra.poles;
  s.terms = prob.A;
  s.alpha = ra.coeffs;
  s.diameter = ra.contour.diameter();
  if (prob.p() == 0)
  {
    s.B.assign(ra.size(), CMatrix(s.n, s.n));
    s.terms.clear();
  }
  else
  {
    s.B = kernels::combine(prob.A, ra.coeffs);
  }
  return s;
}

Surrogate project_surrogate(const Surrogate &s, const CMatrix &u)
{
  if (u.rows() != s.n)
  {
    throw Error(ErrorKind::DimensionMismatch, "projection basis has wrong row count");
  }
  const CMatrix uh = u.adjoint();
  auto proj = [&](const CMatrix &x) { return uh * (x * u); };
  Surrogate r;
  r.n = u.cols();
  r.B0 = proj(s.B0);
  r.A0 = proj(s.A0);
  r.poles = s.poles;
  r.diameter = s.diameter;
  if (s.factored())
  {
    for (const auto &t : s.terms)
    {
      r.terms.push_back(proj(t));
    }
    r.alpha = s.alpha;
    r.B = kernels::combine(r.terms, r.alpha);
  }
  else
  {
    for (const auto &b : s.B)
    {
      r.B.push_back(proj(b));
    }
  }
  return r;
}

double pole_guard(const Surrogate &s)
{
  double mx = 1.0;
  for (const auto &p : s.poles)
  {
    mx = std::max(mx, std::abs(p));
  }
  return 1e-12 * mx;
}

long pole_at(const Surrogate &s, cplx z)
{
  const double g = pole_guard(s);
  for (std::size_t i = 0; i < s.poles.size(); ++i)
  {
    if (std::abs(z - s.poles[i]) <= g)
    {
      return static_cast<long>(i);
    }
  }
  return -1;
}

bool near_pole(const Surrogate &s, cplx z)
{
  const double g = 1e-8 * s.diameter;
  for (const auto &p : s.poles)
  {
    if (std::abs(z - p) <= g)
    {
      return true;
    }
  }
  return false;
}

cplx surrogate_function(const Surrogate &s, std::size_t j, cplx z)
{
  if (!s.factored() || j >= s.terms.size())
  {
    throw Error(ErrorKind::InvalidArgument, "surrogate has no factored term " + std::to_string(j));
  }
  cplx r = 0.0;
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    r += s.alpha(i, j) / (z - s.poles[i]);
  }
  return r;
}

CMatrix evaluate_T(const SplitProblem &prob, cplx z)
{
  CMatrix t = -1.0 * prob.B0;
  t += z * prob.A0;
  for (std::size_t j = 0; j < prob.p(); ++j)
  {
    const cplx fz = prob.f[j](z);
    if (!finite(fz))
    {
      throw Error(ErrorKind::EvaluationFailure,
                  "term " + std::to_string(j + 1) + " (" + prob.f[j].descriptor() +
                      ") is not finite at the evaluation point");
    }
    t += fz * prob.A[j];
  }
  return t;
}

CVector apply_T(const SplitProblem &prob, cplx z, std::span<const cplx> u)
{
  CVector y = prob.A0 * u;
  scale(z, y);
  axpy(-1.0, prob.B0 * u, y);
  std::vector<cplx> coef(prob.p());
  for (std::size_t j = 0; j < prob.p(); ++j)
  {
    coef[j] = prob.f[j](z);
    if (!finite(coef[j]))
    {
      throw Error(ErrorKind::EvaluationFailure,
                  "term " + std::to_string(j + 1) + " (" + prob.f[j].descriptor() +
                      ") is not finite at the evaluation point");
    }
  }
  add_scaled_products(prob.A, coef, u, y);
  return y;
}

CMatrix evaluate_surrogate(const Surrogate &s, cplx z)
{
  if (pole_at(s, z) >= 0)
  {
    throw Error(ErrorKind::AtPole, "surrogate evaluated at a pole");
  }
  CMatrix t = -1.0 * s.B0;
  t += z * s.A0;
  for (std::size_t i = 0; i < s.m(); ++i)
  {
    t += (1.0 / (z - s.poles[i])) * s.B[i];
  }
  return t;
}

CVector apply_surrogate(const Surrogate &s, cplx z, std::span<const cplx> u)
{
  if (pole_at(s, z) >= 0)
  {
    throw Error(ErrorKind::AtPole, "surrogate evaluated at a pole");
  }
  CVector y = s.A0 * u;
  scale(z, y);
  axpy(-1.0, s.B0 * u, y);
  if (s.factored())
  {
    std::vector<cplx> coef(s.terms.size());
    for (std::size_t j = 0; j < s.terms.size(); ++j)
    {
      coef[j] = surrogate_function(s, j, z);
    }
    add_scaled_products(s.terms, coef, u, y);
  }
  else
  {
    std::vector<cplx> coef(s.m());
    for (std::size_t i = 0; i < s.m(); ++i)
    {
      coef[i] = 1.0 / (z - s.poles[i]);
    }
    add_scaled_products(s.B, coef, u, y);
  }
  return y;
}

double residual_norm(const SplitProblem &prob, cplx lambda, std::span<const cplx> u)
{
  return norm2(apply_T(prob, lambda, unit(u)));
}

double surrogate_residual_norm(const Surrogate &s, cplx lambda, std::span<const cplx> u)
{
  return norm2(apply_surrogate(s, lambda, unit(u)));
}

ProblemNorms problem_norms(const SplitProblem &prob)
{
  ProblemNorms n;
  n.B0 = norm_spectral(prob.B0);
  n.A0 = norm_spectral(prob.A0);
  for (const auto &a : prob.A)
  {
    n.A.push_back(norm_spectral(a));
  }
  return n;
}

double scaled_residual_sum(const SplitProblem &prob, const Surrogate *s,
                           const std::vector<EigenPair> &pairs, bool use_exact_f,
                           const ProblemNorms *norms)
{
  if (pairs.empty())
  {
    throw Error(ErrorKind::InvalidArgument, "scaled_residual_sum needs at least one pair");
  }
  if (!use_exact_f && (s == nullptr || !s->factored()) && prob.p() > 0)
  {
    throw Error(ErrorKind::InvalidArgument,
                "surrogate form of the residual needs the factored surrogate");
  }
  const ProblemNorms local = norms ? ProblemNorms{} : problem_norms(prob);
  const ProblemNorms &nm = norms ? *norms : local;
  double num = 0.0, den = 0.0;
  for (const auto &pr : pairs)
  {
    const CVector u = unit(pr.u);
    double g = nm.B0 + std::abs(pr.lambda) * nm.A0;
    if (use_exact_f)
    {
      num += norm2(apply_T(prob, pr.lambda, u));
      for (std::size_t j = 0; j < prob.p(); ++j)
      {
        g += std::abs(prob.f[j](pr.lambda)) * nm.A[j];
      }
    }
    else
    {
      num += norm2(apply_surrogate(*s, pr.lambda, u));
      for (std::size_t j = 0; j < prob.p(); ++j)
      {
        g += std::abs(surrogate_function(*s, j, pr.lambda)) * nm.A[j];
      }
    }
    den += g;
  }
  return den > 0.0 ? num / den : num;
}

SurrogateNorms surrogate_norms(const Surrogate &s)
{
  SurrogateNorms n;
  n.B0 = norm_spectral(s.B0);
  n.A0 = norm_spectral(s.A0);
  if (s.factored())
  {
    for (const auto &t : s.terms)
    {
      n.terms.push_back(norm_spectral(t));
    }
  }
  else
  {
    for (const auto &b : s.B)
    {
      n.B.push_back(norm_spectral(b));
    }
  }
  return n;
}

double surrogate_scale(const Surrogate &s, const SurrogateNorms &norms, cplx lambda)
{
  double g = norms.B0 + std::abs(lambda) * norms.A0;
  if (s.factored())
  {
    for (std::size_t j = 0; j < s.terms.size(); ++j)
    {
      g += std::abs(surrogate_function(s, j, lambda)) * norms.terms[j];
    }
  }
  else
  {
    for (std::size_t i = 0; i < s.m(); ++i)
    {
      g += norms.B[i] / std::abs(lambda - s.poles[i]);
    }
  }
  return g;
}

double surrogate_scaled_residual_sum(const Surrogate &s, const SurrogateNorms &norms,
                                     const std::vector<EigenPair> &pairs)
{
  double num = 0.0, den = 0.0;
  for (const auto &pr : pairs)
  {
    num += surrogate_residual_norm(s, pr.lambda, pr.u);
    den += surrogate_scale(s, norms, pr.lambda);
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace ratnlevp
