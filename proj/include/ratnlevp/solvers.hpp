// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_SOLVERS_HPP
#define RATNLEVP_SOLVERS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ratnlevp/contour.hpp"
#include "ratnlevp/linalg.hpp"
#include "ratnlevp/nlevp.hpp"

namespace ratnlevp
{

enum class Method
{
  FullArnoldi,
  FullSubspace,
  ReducedSubspace,
  DenseLinearization
};

std::string to_string(Method m);
// "full-arnoldi", "full-subspace", "reduced-subspace", "dense"; throws ConfigError.
Method parse_method(const std::string &name);

struct SolveConfig
{
  Method method = Method::FullArnoldi;
  std::optional<cplx> sigma;  // contour center when unset
  std::size_t k = 5;
  std::size_t nu = 0;  // 0 means 2k
  std::size_t q = 5;
  std::size_t max_outer = 100;
  double tol = 1e-10;
  std::uint64_t seed = 42;

  std::size_t subspace_dim() const { return nu ? nu : 2 * k; }
  cplx shift(const Contour &c) const { return sigma ? *sigma : c.center(); }
  // Throws ConfigError on k = 0, k > nu, q = 0, tol <= 0, max_outer = 0.
  void validate() const;
};

struct ReportPair
{
  cplx lambda;
  CVector u;  // unit 2-norm, largest entry real positive
  double residual_T = std::numeric_limits<double>::quiet_NaN();
  double residual_surrogate = std::numeric_limits<double>::quiet_NaN();
  bool inside = false;
  bool pole_flag = false;
  std::optional<double> cond;
};

struct EigenReport
{
  std::vector<ReportPair> pairs;  // sorted by distance to sigma
  std::size_t iterations = 0;
  nlohmann::json metadata;
};

// Indices of `values` by increasing |v - sigma|; distances equal to 1e-9
// relative count as ties, broken by smaller imaginary then smaller real part.
std::vector<std::size_t> order_by_distance(std::span<const cplx> values, cplx sigma);

// Thick-restart Arnoldi on (A - sigma M)^{-1} M.
EigenReport solve_full_arnoldi(const Surrogate &s, const SolveConfig &cfg, const Contour &contour);

// Subspace iteration on the full (m+1)n space.
EigenReport solve_full_subspace(const Surrogate &s, const SolveConfig &cfg, const Contour &contour);

// Reduced subspace iteration keeping only the bottom blocks, with a
// projected rational eigenproblem of size (m+1)nu per sweep.
EigenReport solve_reduced_subspace(const SplitProblem &prob, const Surrogate &s, const SolveConfig &cfg,
                                   const Contour &contour);

// Dense solve of the materialized linearization. Returns every finite
// eigenvalue; those at a pole carry pole_flag.
EigenReport solve_dense_linearization(const Surrogate &s, const Contour &contour,
                                      std::size_t max_dim = 4096);

// Dispatch on cfg.method; fills residual_T from prob.
EigenReport solve(const SplitProblem &prob, const Surrogate &s, const SolveConfig &cfg,
                  const Contour &contour);

// residual_T = ||T(lambda) u|| for every pair (NaN where T is not finite).
void attach_exact_residuals(EigenReport &report, const SplitProblem &prob);

// Pairs with inside && !pole_flag.
std::vector<EigenPair> interior_pairs(const EigenReport &report);

}  // namespace ratnlevp

#endif  // RATNLEVP_SOLVERS_HPP
