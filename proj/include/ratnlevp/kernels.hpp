// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_KERNELS_HPP
#define RATNLEVP_KERNELS_HPP

#include <functional>
#include <span>
#include <vector>

#include "ratnlevp/linalg.hpp"

// Hot loops, each in a serial reference version and an OpenMP version. Both
// use the same per-output summation order, so their results are bitwise equal.
namespace ratnlevp::kernels
{

enum class Backend
{
  Serial,
  OpenMP
};

// OpenMP when compiled in, else Serial.
Backend active_backend();
void set_backend(Backend b);
bool openmp_available();
// Cap on worker threads for the OpenMP backend; <= 0 restores the runtime default.
void set_max_threads(int n);
int max_threads();

namespace serial
{
// y += sum_i a[i] * x[i]
void matvec_sum(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                std::span<cplx> y);
// out[i] = sum_j alpha(i, j) * a[j]
std::vector<CMatrix> combine(std::span<const CMatrix> a, const CMatrix &alpha);
// max_k |g(points[k])|
double max_abs(std::span<const cplx> points, const std::function<cplx(cplx)> &g);
// fn(0), ..., fn(count - 1)
void for_each_index(std::size_t count, const std::function<void(std::size_t)> &fn);
}  // namespace serial

namespace omp
{
void matvec_sum(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                std::span<cplx> y);
std::vector<CMatrix> combine(std::span<const CMatrix> a, const CMatrix &alpha);
double max_abs(std::span<const cplx> points, const std::function<cplx(cplx)> &g);
// Iterations run concurrently; if any throw, the exception from the lowest
// index is rethrown after all finish.
void for_each_index(std::size_t count, const std::function<void(std::size_t)> &fn);
}  // namespace omp

// Dispatch on active_backend().
void matvec_sum(std::span<const CMatrix *const> a, std::span<const std::span<const cplx>> x,
                std::span<cplx> y);
std::vector<CMatrix> combine(std::span<const CMatrix> a, const CMatrix &alpha);
double max_abs(std::span<const cplx> points, const std::function<cplx(cplx)> &g);
void for_each_index(std::size_t count, const std::function<void(std::size_t)> &fn);

}  // namespace ratnlevp::kernels

#endif  // RATNLEVP_KERNELS_HPP
