// Serial reference versus OpenMP for the hot loops in kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ratnlevp/kernels.hpp"

using namespace ratnlevp;

namespace
{

struct MatvecData
{
  std::vector<CMatrix> a;
  std::vector<CVector> x;
  std::vector<const CMatrix *> ptr;
  std::vector<std::span<const cplx>> spans;

  MatvecData(std::size_t n, std::size_t m)
  {
    std::mt19937_64 rng(1);
    for (std::size_t i = 0; i < m; ++i)
    {
      a.push_back(CMatrix::random(n, n, rng));
      x.push_back(random_vector(n, rng));
    }
    for (std::size_t i = 0; i < m; ++i)
    {
      ptr.push_back(&a[i]);
      spans.emplace_back(x[i]);
    }
  }
};

template <bool Parallel>
void BM_matvec_sum(benchmark::State &state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  MatvecData d(n, 50);
  CVector y(n);
  for (auto _ : state)
  {
    if constexpr (Parallel)
    {
      kernels::omp::matvec_sum(d.ptr, d.spans, y);
    }
    else
    {
      kernels::serial::matvec_sum(d.ptr, d.spans, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * 50 * static_cast<std::int64_t>(n * n));
}

template <bool Parallel>
void BM_combine(benchmark::State &state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<CMatrix> a{CMatrix::random(n, n, rng), CMatrix::random(n, n, rng)};
  const CMatrix alpha = CMatrix::random(50, 2, rng);
  for (auto _ : state)
  {
    auto out = Parallel ? kernels::omp::combine(a, alpha) : kernels::serial::combine(a, alpha);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_max_abs(benchmark::State &state)
{
  const auto count = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  const CVector pts = random_vector(count, rng);
  const auto g = [](cplx z) { return std::exp(-z); };
  for (auto _ : state)
  {
    const double v = Parallel ? kernels::omp::max_abs(pts, g) : kernels::serial::max_abs(pts, g);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

}  // namespace

BENCHMARK(BM_matvec_sum<false>)->Arg(50)->Arg(200);
BENCHMARK(BM_matvec_sum<true>)->Arg(50)->Arg(200);
BENCHMARK(BM_combine<false>)->Arg(50)->Arg(200);
BENCHMARK(BM_combine<true>)->Arg(50)->Arg(200);
BENCHMARK(BM_max_abs<false>)->Arg(10000)->Arg(40000);
BENCHMARK(BM_max_abs<true>)->Arg(10000)->Arg(40000);

BENCHMARK_MAIN();
