// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_BASELINE_HPP
#define RATNLEVP_BASELINE_HPP

#include <cstdint>

#include "ratnlevp/contour.hpp"
#include "ratnlevp/linalg.hpp"
#include "ratnlevp/nlevp.hpp"
#include "ratnlevp/solvers.hpp"

namespace ratnlevp
{

struct BeynConfig
{
  std::size_t N = 150;  // quadrature nodes
  std::size_t ell = 0;  // probe columns; 0 means min(n, 10)
  // Moment blocks: the Hankel matrices use moments 0..2K-1, so up to K*ell
  // eigenvalues can be found. K = 1 is the zeroth/first-moment method.
  std::size_t K = 1;
  double rank_tol = 1e-10;
  std::uint64_t seed = 42;

  // Throws ConfigError on N < 8, K = 0, rank_tol outside (0, 1).
  void validate() const;
  std::size_t probes(std::size_t n) const;
};

// Picks ell = min(n, expected + 5) and the smallest K with K*ell >= expected + 5.
BeynConfig beyn_defaults(std::size_t n, std::size_t expected);

// Contour-integral eigensolver. Trapezoid rule on circles and ellipses, Gauss-Legendre
// per side on rectangles. Moments use the scaled variable (z - c) / rho.
// Throws SingularAtNode, RankDeficientProbe (full numerical rank: raise ell or K).
EigenReport beyn_solve(const SplitProblem &prob, const Contour &contour, const BeynConfig &cfg);

// Thin SVD, singular values nonincreasing. Throws ConvergenceFailure if the
// reconstruction error exceeds 1e-10 ||A||.
SVDResult beyn_svd(const CMatrix &a);

}  // namespace ratnlevp

#endif  // RATNLEVP_BASELINE_HPP
