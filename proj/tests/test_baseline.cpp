#include <algorithm>
#include <random>

#include "doctest.h"
#include "ratnlevp/baseline.hpp"
#include "ratnlevp/error.hpp"
#include "ratnlevp/gallery.hpp"

using namespace ratnlevp;

namespace
{

ErrorKind kind_of(const std::function<void()> &fn)
{
  try
  {
    fn();
  }
  catch (const Error &e)
  {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidArgument;
}

double nearest(cplx z, const EigenReport &r)
{
  double d = 1e300;
  for (const auto &p : r.pairs)
  {
    d = std::min(d, std::abs(z - p.lambda));
  }
  return d;
}

double reconstruction(const CMatrix &a, const SVDResult &r)
{
  CMatrix us = r.u;
  for (std::size_t j = 0; j < r.sigma.size(); ++j)
  {
    for (std::size_t i = 0; i < us.rows(); ++i)
    {
      us(i, j) *= r.sigma[j];
    }
  }
  return norm_fro(a - us * r.v.adjoint());
}

}  // namespace

TEST_CASE("beyn svd")
{
  const auto d = beyn_svd(CMatrix::diagonal(CVector{-1.0, cplx(0.0, 3.0), 2.0}));
  CHECK(d.sigma[0] == doctest::Approx(3.0));
  CHECK(d.sigma[1] == doctest::Approx(2.0));
  CHECK(d.sigma[2] == doctest::Approx(1.0));

  const CVector x{1.0, cplx(2.0, 1.0), -1.0}, y{cplx(0.0, 1.0), 2.0};
  CMatrix outer(3, 2);
  for (std::size_t i = 0; i < 3; ++i)
  {
    for (std::size_t j = 0; j < 2; ++j)
    {
      outer(i, j) = x[i] * std::conj(y[j]);
    }
  }
  const auto o = beyn_svd(outer);
  CHECK(o.sigma[0] == doctest::Approx(norm2(x) * norm2(y)));
  CHECK(o.sigma[1] < 1e-14);

  std::mt19937_64 rng(6);
  const CMatrix r = CMatrix::random(6, 3, rng);
  const auto s = beyn_svd(r);
  CHECK(reconstruction(r, s) <= 1e-10 * norm_fro(r));
  CHECK(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()));
}

TEST_CASE("linear pencil with two interior eigenvalues")
{
  const auto prob = make_split_problem("lin", CMatrix::diagonal(CVector{0.3, cplx(-0.2, 0.4), 4.0, -5.0}),
                                       CMatrix::identity(4), {}, {});
  BeynConfig cfg;
  cfg.N = 64;
  cfg.ell = 3;
  const auto r = beyn_solve(prob, Contour::circle(0.0, 1.0), cfg);
  REQUIRE(r.pairs.size() == 2);
  CHECK(nearest(0.3, r) < 1e-10);
  CHECK(nearest(cplx(-0.2, 0.4), r) < 1e-10);
  CHECK(r.metadata["rank"] == 2);
  CHECK(r.metadata["quadrature"] == "trapezoid");
}

TEST_CASE("delay problem needs more than the first two moments")
{
  const auto prob = make_delay(1.0);
  const Contour c = Contour::circle(-1.0, 6.0);
  BeynConfig cfg;
  cfg.N = 150;
  cfg.ell = 2;
  // K = 1 can see at most n = 2 eigenvalues.
  CHECK(kind_of([&] { beyn_solve(prob, c, cfg); }) == ErrorKind::RankDeficientProbe);

  cfg.K = 4;
  const auto a = beyn_solve(prob, c, cfg);
  REQUIRE(a.pairs.size() == 5);
  for (const auto &p : a.pairs)
  {
    CHECK(p.residual_T < 1e-10);
  }
  cfg.seed = 99;
  const auto b = beyn_solve(prob, c, cfg);
  REQUIRE(b.pairs.size() == 5);
  for (const auto &p : a.pairs)
  {
    CHECK(nearest(p.lambda, b) < 1e-8);
  }

  const auto def = beyn_defaults(prob.n(), 5);
  CHECK(def.ell == 2);
  CHECK(def.K * def.ell >= 10);
}

TEST_CASE("fem string agrees with arnoldi")
{
  const auto prob = make_fem_string(100);
  const Contour c = Contour::circle(150.0, 150.0);
  // f has its pole z = 1 inside the circle; T^{-1} stays bounded there, so the
  // moments only see eigenvalues.
  BeynConfig cfg;
  cfg.N = 64;
  cfg.ell = 10;
  const auto b = beyn_solve(prob, c, cfg);
  const auto s = build_surrogate(prob, build_rational_approx(quadrature_rule(c, 6), prob.f));
  SolveConfig scfg;
  scfg.k = 5;
  const auto arn = solve(prob, s, scfg, c);
  for (const auto &p : arn.pairs)
  {
    CHECK(nearest(p.lambda, b) <= 1e-6 * std::abs(p.lambda));
  }
}

TEST_CASE("singular node and config errors")
{
  // Eigenvalue 1 of a linear pencil lies on the circle |z| = 1 at a trapezoid node.
  const auto prob = make_split_problem("lin", CMatrix::diagonal(CVector{1.0, 0.2}), CMatrix::identity(2), {}, {});
  BeynConfig cfg;
  cfg.N = 16;
  CHECK(kind_of([&] { beyn_solve(prob, Contour::circle(0.0, 1.0), cfg); }) == ErrorKind::SingularAtNode);
  cfg.N = 4;
  CHECK(kind_of([&] { beyn_solve(prob, Contour::circle(0.0, 1.0), cfg); }) == ErrorKind::ConfigError);
  cfg.N = 16;
  cfg.K = 0;
  CHECK(kind_of([&] { beyn_solve(prob, Contour::circle(0.0, 1.0), cfg); }) == ErrorKind::ConfigError);
}

TEST_CASE("rectangle uses gauss-legendre sides")
{
  const auto prob = make_delay(1.0);
  BeynConfig cfg;
  cfg.N = 150;
  cfg.ell = 2;
  cfg.K = 4;
  const auto r = beyn_solve(prob, Contour::rectangle({-3.0, -6.0}, {1.0, 6.0}), cfg);
  CHECK(r.metadata["quadrature"] == "gauss-legendre-sides");
  CHECK(r.pairs.size() == 5);
}
