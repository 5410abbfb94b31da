#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ratnlevp/kernels.hpp"

using namespace ratnlevp;

namespace
{

bool bitwise_equal(std::span<const cplx> a, std::span<const cplx> b)
{
  if (a.size() != b.size())
  {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag())
    {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("matvec_sum serial and openmp agree bitwise")
{
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 7u, 64u, 65u, 200u})
  {
    std::vector<CMatrix> mats;
    std::vector<CVector> xs;
    for (int i = 0; i < 5; ++i)
    {
      mats.push_back(CMatrix::random(n, n, rng));
      xs.push_back(random_vector(n, rng));
    }
    std::vector<const CMatrix *> ptrs;
    std::vector<std::span<const cplx>> spans;
    for (int i = 0; i < 5; ++i)
    {
      ptrs.push_back(&mats[i]);
      spans.push_back(xs[i]);
    }
    CVector y0 = random_vector(n, rng), y1 = y0;
    kernels::serial::matvec_sum(ptrs, spans, y0);
    kernels::omp::matvec_sum(ptrs, spans, y1);
    CHECK(bitwise_equal(y0, y1));

    CVector ref = random_vector(n, rng), got = ref;
    for (int i = 0; i < 5; ++i)
    {
      const CVector t = mats[i] * std::span<const cplx>(xs[i]);
      axpy(1.0, t, ref);
    }
    kernels::matvec_sum(ptrs, spans, got);
    for (std::size_t r = 0; r < n; ++r)
    {
      CHECK(std::abs(ref[r] - got[r]) < 1e-12 * (1.0 + std::abs(ref[r])));
    }
  }
}

TEST_CASE("combine serial and openmp agree bitwise")
{
  std::mt19937_64 rng(3);
  std::vector<CMatrix> a{CMatrix::random(9, 9, rng), CMatrix::random(9, 9, rng)};
  const CMatrix alpha = CMatrix::random(13, 2, rng);
  const auto s = kernels::serial::combine(a, alpha);
  const auto o = kernels::omp::combine(a, alpha);
  REQUIRE(s.size() == 13);
  for (std::size_t i = 0; i < 13; ++i)
  {
    CHECK(s[i] == o[i]);
    const CMatrix ref = alpha(i, 0) * a[0] + alpha(i, 1) * a[1];
    CHECK(norm_max(ref - s[i]) < 1e-14);
  }
}

TEST_CASE("max_abs agrees and propagates nan")
{
  std::mt19937_64 rng(5);
  const CVector pts = random_vector(1000, rng);
  auto g = [](cplx z) { return z * z - 1.0; };
  CHECK(kernels::serial::max_abs(pts, g) == kernels::omp::max_abs(pts, g));
  auto h = [](cplx z) { return z.real() > 1.5 ? cplx(std::nan(""), 0.0) : z; };
  CHECK(std::isnan(kernels::serial::max_abs(pts, h)) == std::isnan(kernels::omp::max_abs(pts, h)));
  const CVector with_big{0.0, 2.0};
  CHECK(std::isnan(kernels::omp::max_abs(with_big, h)));
}

TEST_CASE("for_each_index rethrows the lowest failing index")
{
  std::vector<int> hit(50, 0);
  kernels::omp::for_each_index(50, [&](std::size_t i) { hit[i] = 1; });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 50);
  try
  {
    kernels::omp::for_each_index(50, [](std::size_t i) {
      if (i == 17 || i == 40)
      {
        throw std::runtime_error(std::to_string(i));
      }
    });
    FAIL("expected a throw");
  }
  catch (const std::runtime_error &e)
  {
    CHECK(std::string(e.what()) == "17");
  }
}

TEST_CASE("backend switch")
{
  const auto before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::Serial);
  CHECK(kernels::active_backend() == kernels::Backend::Serial);
  kernels::set_backend(before);
  kernels::set_max_threads(1);
  CHECK(kernels::max_threads() >= 1);
  kernels::set_max_threads(0);
}
