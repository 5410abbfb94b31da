// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_LINOP_HPP
#define RATNLEVP_LINOP_HPP

#include <random>
#include <vector>

#include "ratnlevp/linalg.hpp"
#include "ratnlevp/nlevp.hpp"

namespace ratnlevp
{

//
// w = [v_1; ...; v_m; u], each block of length n.
//
struct BlockVector
{
  std::vector<CVector> v;
  CVector u;

  static BlockVector zeros(std::size_t m, std::size_t n);
  static BlockVector random(std::size_t m, std::size_t n, std::mt19937_64 &rng);
  static BlockVector from_flat(std::span<const cplx> x, std::size_t m, std::size_t n);

  std::size_t m() const { return v.size(); }
  std::size_t n() const { return u.size(); }
  std::size_t size() const { return (v.size() + 1) * u.size(); }
  CVector flat() const;
  double norm() const;
};

// S(z) = B0 - z A0 + sum_i B_i / (sigma_i - z). Throws AtPole.
CMatrix schur_matrix(const Surrogate &s, cplx z);

struct ShiftedFactorization
{
  cplx sigma;
  LUFactorization schur_lu;
  CVector pole_gaps;  // sigma_i - sigma
};

// Throws AtPole if sigma is within pole_guard of a pole, SingularMatrix if
// S(sigma) is singular.
ShiftedFactorization factor_shifted(const Surrogate &s, cplx sigma);

// x = (A - sigma M)^{-1} M w, via one solve with S(sigma).
BlockVector apply_shift_invert(const ShiftedFactorization &fac, const Surrogate &s,
                               const BlockVector &w);
BlockVector apply_A(const Surrogate &s, const BlockVector &w);
BlockVector apply_M(const Surrogate &s, const BlockVector &w);

// v_i = u / (sigma_i - lambda). Throws AtPole.
BlockVector lift_eigvec(const Surrogate &s, cplx lambda, std::span<const cplx> u);

// Dense A and M of size (m+1)n, for tests and small direct solves.
struct Linearization
{
  CMatrix A, M;
};
Linearization materialize(const Surrogate &s);

// out += sum_i coef[i] B_i x[i], using the factored form when it is cheaper.
void accumulate_B(const Surrogate &s, std::span<const cplx> coef, const std::vector<CVector> &x,
                  std::span<cplx> out);

}  // namespace ratnlevp

#endif  // RATNLEVP_LINOP_HPP
