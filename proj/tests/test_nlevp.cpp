#include <random>

#include "doctest.h"
#include "ratnlevp/error.hpp"
#include "ratnlevp/gallery.hpp"
#include "ratnlevp/linop.hpp"
#include "ratnlevp/nlevp.hpp"

using namespace ratnlevp;

namespace
{

cplx random_in_disk(std::mt19937_64 &rng, cplx c, double r)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return c + std::polar(r * std::sqrt(u(rng)), 2.0 * 3.141592653589793 * u(rng));
}

}  // namespace

TEST_CASE("evaluate_T on the delay problem")
{
  const auto prob = make_delay(1.0);
  const CMatrix t0 = evaluate_T(prob, 0.0);
  CHECK(norm_max(t0 - CMatrix::from_rows({{7.0, -2.0}, {-6.0, 7.0}})) < 1e-15);
  CHECK(prob.f[0](0.0) == cplx(1.0));
}

TEST_CASE("evaluate_T with vanishing terms gives -B0")
{
  const auto prob = make_quadratic_halo(4);
  CHECK(norm_max(evaluate_T(prob, 0.0) + prob.B0) == 0.0);
}

TEST_CASE("evaluate_T on the fem problem at zero")
{
  const auto prob = make_fem_string(3);
  CMatrix expect = 3.0 * CMatrix::from_rows({{2.0, -1.0, 0.0}, {-1.0, 2.0, -1.0}, {0.0, -1.0, 1.0}});
  expect(2, 2) += 1.0;
  CHECK(norm_max(evaluate_T(prob, 0.0) - expect) < 1e-14);
}

TEST_CASE("evaluate_T reports the failing term")
{
  const auto prob = make_fem_string(3);
  try
  {
    evaluate_T(prob, 1.0);
    FAIL("expected EvaluationFailure");
  }
  catch (const Error &e)
  {
    CHECK(e.kind() == ErrorKind::EvaluationFailure);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("surrogate construction")
{
  const auto prob = make_split_problem("eye", CMatrix::identity(2), CMatrix::identity(2),
                                       {CMatrix::identity(2)}, {ScalarFunction::exp(1.0)});
  auto ra = build_rational_approx(quadrature_rule(Contour::circle(0.0, 1.0), 8), prob.f);
  const auto s = build_surrogate(prob, ra);
  REQUIRE(s.m() == 8);
  for (std::size_t i = 0; i < 8; ++i)
  {
    CHECK(norm_max(s.B[i] - ra.coeffs(i, 0) * CMatrix::identity(2)) == 0.0);
  }
  // linearity in alpha
  auto ra2 = ra;
  ra2.coeffs *= 2.0;
  const auto s2 = build_surrogate(prob, ra2);
  for (std::size_t i = 0; i < 8; ++i)
  {
    CHECK(s2.B[i] == 2.0 * s.B[i]);
  }
  // zero alpha
  auto ra0 = ra;
  ra0.coeffs *= 0.0;
  for (const auto &b : build_surrogate(prob, ra0).B)
  {
    CHECK(norm_max(b) == 0.0);
  }
}

TEST_CASE("evaluate_surrogate basics and pole guard")
{
  auto s = make_surrogate(CMatrix(2, 2), CMatrix(2, 2), {0.0}, {CMatrix::identity(2)});
  CHECK(norm_max(evaluate_surrogate(s, 2.0) - 0.5 * CMatrix::identity(2)) < 1e-16);
  CHECK_THROWS_AS(evaluate_surrogate(s, 0.0), Error);
  CHECK(pole_at(s, 1e-13) == 0);
  CHECK(pole_at(s, 1e-3) == -1);

  auto lin = make_surrogate(CMatrix::identity(2), CMatrix::identity(2), {3.0}, {CMatrix(2, 2)});
  CHECK(norm_max(evaluate_surrogate(lin, 0.5) - (-0.5) * CMatrix::identity(2)) < 1e-16);
}

TEST_CASE("surrogate equals minus schur complement")
{
  const auto prob = make_delay(1.0);
  const Contour c = Contour::circle(-1.0, 6.0);
  const auto s = build_surrogate(prob, build_rational_approx(quadrature_rule(c, 50), prob.f));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t)
  {
    const cplx z = random_in_disk(rng, -1.0, 5.5);
    const CMatrix a = evaluate_surrogate(s, z);
    const CMatrix b = schur_matrix(s, z);
    CHECK(norm_max(a + b) <= 1e-13 * std::max(1.0, norm_max(a)));
  }
}

TEST_CASE("approximation transfer bound on the delay problem")
{
  const auto prob = make_delay(1.0);
  const Contour c = Contour::circle(-1.0, 6.0);
  const Contour inner = Contour::circle(-1.0, 3.0);
  const auto ra = build_rational_approx(quadrature_rule(c, 50), prob.f);
  const auto s = build_surrogate(prob, ra);
  const double em = approx_error(ra, 0, inner);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t)
  {
    const cplx z = random_in_disk(rng, -1.0, 3.0);
    const double diff = norm_max(evaluate_T(prob, z) - evaluate_surrogate(s, z));
    CHECK(diff <= norm_max(prob.A[0]) * em * (1.0 + 1e-6) + 1e-15);
  }
  const double mu = norm_spectral(prob.A[0]);
  for (int t = 0; t < 50; ++t)
  {
    const cplx z = random_in_disk(rng, -1.0, 3.0);
    const double diff = norm_spectral(evaluate_T(prob, z) - evaluate_surrogate(s, z));
    CHECK(diff <= mu * em * 1.01 + 1e-15);
  }
}

TEST_CASE("factored and expanded surrogate application agree")
{
  const auto prob = make_hadeler(6, 10.0);
  const auto ra = build_rational_approx(quadrature_rule(Contour::circle(-3.0, 2.0), 12), prob.f);
  const auto s = build_surrogate(prob, ra);
  REQUIRE(s.factored());
  auto plain = make_surrogate(s.B0, s.A0, s.poles, s.B, s.diameter);
  std::mt19937_64 rng(4);
  const CVector u = random_vector(6, rng);
  const cplx z(-2.7, 0.4);
  const CVector a = apply_surrogate(s, z, u), b = apply_surrogate(plain, z, u);
  CVector ref = evaluate_surrogate(s, z) * std::span<const cplx>(u);
  for (std::size_t r = 0; r < 6; ++r)
  {
    CHECK(std::abs(a[r] - b[r]) < 1e-10 * (1.0 + std::abs(b[r])));
    CHECK(std::abs(a[r] - ref[r]) < 1e-10 * (1.0 + std::abs(b[r])));
  }
  CHECK(std::abs(surrogate_function(s, 0, z) - ra.evaluate(0, z)) < 1e-14);
}

TEST_CASE("residual norms")
{
  const auto prob = make_split_problem("lin", CMatrix::diagonal(CVector{1.0, 2.0}), CMatrix::identity(2),
                                       {}, {});
  CHECK(residual_norm(prob, 1.0, CVector{3.0, 0.0}) < 1e-14);
  std::mt19937_64 rng(6);
  const CVector u = random_vector(2, rng);
  const cplx z(0.3, -1.0);
  const CVector tu = evaluate_T(prob, z) * std::span<const cplx>(u);
  CHECK(residual_norm(prob, z, u) == doctest::Approx(norm2(tu) / norm2(u)));

  std::vector<EigenPair> exact{{1.0, {1.0, 0.0}}, {2.0, {0.0, 1.0}}};
  CHECK(scaled_residual_sum(prob, nullptr, exact, true) < 1e-15);
}

TEST_CASE("scaled residual of a single pair with residual equal to gamma")
{
  // T(z) = -B0 with B0 = I, A0 = 0: ||T u|| = 1 = gamma.
  const auto prob = make_split_problem("id", CMatrix::identity(2), CMatrix(2, 2), {}, {});
  std::vector<EigenPair> one{{0.0, {1.0, 0.0}}};
  CHECK(scaled_residual_sum(prob, nullptr, one, true) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("projection keeps the factored form consistent")
{
  const auto prob = make_hadeler(8, 10.0);
  const auto s = build_surrogate(prob, build_rational_approx(quadrature_rule(Contour::circle(-3.0, 2.0), 10), prob.f));
  std::mt19937_64 rng(8);
  const auto q = mgs_orthonormalize(CMatrix::random(8, 3, rng)).q;
  const auto r = project_surrogate(s, q);
  CHECK(r.n == 3);
  for (std::size_t i = 0; i < r.m(); ++i)
  {
    CHECK(norm_max(r.B[i] - q.adjoint() * s.B[i] * q) < 1e-9 * (1.0 + norm_max(r.B[i])));
  }
}

TEST_CASE("split problem validation")
{
  CHECK_THROWS_AS(make_split_problem("bad", CMatrix(2, 2), CMatrix(3, 3), {}, {}), Error);
  CHECK_FALSE(make_hadeler(3, 1.0).has_invertible_A0);
  CHECK(make_delay(1.0).has_invertible_A0);
}
