#include <random>

#include "doctest.h"
#include "ratnlevp/error.hpp"
#include "ratnlevp/gallery.hpp"
#include "ratnlevp/linop.hpp"

using namespace ratnlevp;

namespace
{

Surrogate random_surrogate(std::mt19937_64 &rng, std::size_t n, std::size_t m, bool identity_a0 = false)
{
  std::vector<CMatrix> b;
  CVector poles;
  for (std::size_t i = 0; i < m; ++i)
  {
    b.push_back(CMatrix::random(n, n, rng));
    poles.push_back(std::polar(2.0, 6.283185307179586 * (static_cast<double>(i) + 0.3) / static_cast<double>(m)));
  }
  return make_surrogate(CMatrix::random(n, n, rng), identity_a0 ? CMatrix::identity(n) : CMatrix::random(n, n, rng),
                        poles, b);
}

double rel_diff(std::span<const cplx> a, std::span<const cplx> b)
{
  double d = 0.0, s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    d = std::max(d, std::abs(a[i] - b[i]));
    s = std::max(s, std::abs(b[i]));
  }
  return d / std::max(s, 1e-300);
}

}  // namespace

TEST_CASE("materialization equivalence on random tiny instances")
{
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 20; ++t)
  {
    const std::size_t n = 1 + t % 3, m = 1 + t % 4;
    const auto s = random_surrogate(rng, n, m);
    const auto lin = materialize(s);
    const auto w = BlockVector::random(m, n, rng);
    const CVector wf = w.flat();

    CHECK(rel_diff(apply_A(s, w).flat(), lin.A * std::span<const cplx>(wf)) < 1e-11);
    CHECK(rel_diff(apply_M(s, w).flat(), lin.M * std::span<const cplx>(wf)) < 1e-11);

    const cplx sigma(0.1, 0.05);
    const auto fac = factor_shifted(s, sigma);
    const CVector x = apply_shift_invert(fac, s, w).flat();
    const CMatrix shifted = lin.A - sigma * lin.M;
    const CVector mw = lin.M * std::span<const cplx>(wf);
    CVector ref = lu_solve(lu_factor(shifted), mw);
    CHECK(rel_diff(x, ref) < 1e-11);
  }
}

TEST_CASE("schur solve residual")
{
  std::mt19937_64 rng(9);
  const auto prob = make_delay(1.0);
  const auto s = build_surrogate(prob, build_rational_approx(quadrature_rule(Contour::circle(-1.0, 6.0), 50), prob.f));
  const auto fac = factor_shifted(s, -1.0);
  for (int t = 0; t < 5; ++t)
  {
    const auto w = BlockVector::random(s.m(), s.n, rng);
    const auto x = apply_shift_invert(fac, s, w);
    auto lhs = apply_A(s, x);
    const auto mx = apply_M(s, x);
    const auto mw = apply_M(s, w);
    CVector r = lhs.flat();
    axpy(cplx(1.0), std::span<const cplx>(mx.flat()), std::span<cplx>(r));  // A x - sigma M x with sigma = -1
    const CVector mwf = mw.flat();
    axpy(-1.0, mwf, r);
    CHECK(norm2(r) <= 1e-10 * w.norm());
  }
}

TEST_CASE("decoupled shift-invert")
{
  // B_i = 0, A0 = I, B0 = diag(d), sigma = 0
  const CVector d{2.0, -4.0};
  const auto s = make_surrogate(CMatrix::diagonal(d), CMatrix::identity(2), {1.0, cplx(0.0, 3.0)},
                                {CMatrix(2, 2), CMatrix(2, 2)});
  std::mt19937_64 rng(1);
  const auto w = BlockVector::random(2, 2, rng);
  const auto x = apply_shift_invert(factor_shifted(s, 0.0), s, w);
  for (std::size_t r = 0; r < 2; ++r)
  {
    CHECK(std::abs(x.u[r] - w.u[r] / d[r]) < 1e-15);
    for (std::size_t i = 0; i < 2; ++i)
    {
      CHECK(std::abs(x.v[i][r] - (w.v[i][r] + x.u[r]) / s.poles[i]) < 1e-15);
    }
  }
}

TEST_CASE("spectral mapping on a materialized instance")
{
  std::mt19937_64 rng(77);
  const auto s = random_surrogate(rng, 2, 3);
  const auto lin = materialize(s);
  const auto ev = dense_geig(lin.A, lin.M, {.vectors = true});
  const cplx sigma(0.2, -0.1);
  const auto fac = factor_shifted(s, sigma);
  for (std::size_t k = 0; k < ev.values.size(); ++k)
  {
    if (is_infinite(ev.values[k]))
    {
      continue;
    }
    const auto w = BlockVector::from_flat(ev.vectors.col(k), 3, 2);
    const auto x = apply_shift_invert(fac, s, w);
    const cplx theta = 1.0 / (ev.values[k] - sigma);
    CVector diff = x.flat();
    const CVector wf = w.flat();
    axpy(-theta, wf, diff);
    CHECK(norm2(diff) <= 1e-9 * std::abs(theta) * norm2(wf));
  }
}

TEST_CASE("lift_eigvec and eigenpair identity")
{
  const auto s = make_surrogate(CMatrix(1, 1), CMatrix(1, 1), {1.0}, {CMatrix::identity(1)});
  const auto w = lift_eigvec(s, 0.0, CVector{1.0});
  CHECK(w.v[0][0] == cplx(1.0));
  CHECK_THROWS_AS(lift_eigvec(s, 1.0, CVector{1.0}), Error);

  std::mt19937_64 rng(5);
  const auto r = random_surrogate(rng, 2, 2);
  const auto lin = materialize(r);
  const auto ev = dense_geig(lin.A, lin.M);
  for (std::size_t k = 0; k < ev.values.size(); ++k)
  {
    const cplx lam = ev.values[k];
    const CVector col = ev.vectors.column(k);
    const CVector u(col.end() - 2, col.end());
    if (norm2(u) < 1e-6)
    {
      continue;
    }
    const auto lifted = lift_eigvec(r, lam, u);
    CVector lhs = apply_A(r, lifted).flat();
    const CVector rhs = apply_M(r, lifted).flat();
    axpy(-lam, rhs, lhs);
    CHECK(norm2(lhs) <= 1e-9 * (1.0 + std::abs(lam)) * lifted.norm());
  }
}

TEST_CASE("shift guards")
{
  std::mt19937_64 rng(3);
  const auto s = random_surrogate(rng, 2, 3);
  try
  {
    factor_shifted(s, s.poles[1]);
    FAIL("expected AtPole");
  }
  catch (const Error &e)
  {
    CHECK(e.kind() == ErrorKind::AtPole);
  }
  const auto lin = make_surrogate(CMatrix::identity(2), CMatrix::identity(2), {5.0}, {CMatrix(2, 2)});
  CHECK(factor_shifted(lin, 0.0).schur_lu.size() == 2);
  try
  {
    factor_shifted(lin, 1.0);
    FAIL("expected SingularMatrix");
  }
  catch (const Error &e)
  {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
}

TEST_CASE("schur matrix examples")
{
  const auto a = make_surrogate(CMatrix::identity(2), CMatrix::identity(2), {1.0}, {CMatrix(2, 2)});
  CHECK(norm_max(schur_matrix(a, 0.25) - 0.75 * CMatrix::identity(2)) < 1e-16);
  const auto b = make_surrogate(CMatrix(2, 2), CMatrix(2, 2), {1.0}, {CMatrix::identity(2)});
  CHECK(norm_max(schur_matrix(b, 0.0) - CMatrix::identity(2)) < 1e-16);
}

TEST_CASE("factored accumulate matches the expanded sum")
{
  const auto prob = make_hadeler(5, 10.0);
  const auto s = build_surrogate(prob, build_rational_approx(quadrature_rule(Contour::circle(-3.0, 2.0), 9), prob.f));
  const auto plain = make_surrogate(s.B0, s.A0, s.poles, s.B);
  std::mt19937_64 rng(12);
  const auto w = BlockVector::random(s.m(), s.n, rng);
  const auto fac1 = factor_shifted(s, -3.0), fac2 = factor_shifted(plain, -3.0);
  CHECK(rel_diff(apply_shift_invert(fac1, s, w).flat(), apply_shift_invert(fac2, plain, w).flat()) < 1e-10);
  CHECK(rel_diff(apply_A(s, w).flat(), apply_A(plain, w).flat()) < 1e-12);
}
