// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_NLEVP_HPP
#define RATNLEVP_NLEVP_HPP

#include <string>
#include <vector>

#include "ratnlevp/contour.hpp"
#include "ratnlevp/linalg.hpp"

namespace ratnlevp
{

//
// T(z) = -B0 + z A0 + sum_j f_j(z) A_j
//
struct SplitProblem
{
  std::string name;
  CMatrix B0, A0;
  std::vector<CMatrix> A;
  std::vector<ScalarFunction> f;
  // False when A0 is singular (e.g. zero); M of the linearization is then
  // singular and only shift-invert driven methods apply.
  bool has_invertible_A0 = true;

  std::size_t n() const { return B0.rows(); }
  std::size_t p() const { return A.size(); }
};

// Validates shapes and finiteness, sets has_invertible_A0.
SplitProblem make_split_problem(std::string name, CMatrix B0, CMatrix A0, std::vector<CMatrix> A,
                                std::vector<ScalarFunction> f);

//
// T~(z) = -B0 + z A0 + sum_i B_i / (z - sigma_i)
//
struct Surrogate
{
  std::size_t n = 0;
  CMatrix B0, A0;
  CVector poles;
  std::vector<CMatrix> B;
  // Factored form B_i = sum_j alpha(i, j) terms[j]; empty if built from B_i directly.
  std::vector<CMatrix> terms;
  CMatrix alpha;
  // Length scale for the pole-proximity flag (contour diameter).
  double diameter = 1.0;

  std::size_t m() const { return poles.size(); }
  bool factored() const { return !terms.empty(); }
};

// Direct construction from B_i; poles must be pairwise distinct.
Surrogate make_surrogate(CMatrix B0, CMatrix A0, CVector poles, std::vector<CMatrix> B,
                         double diameter = 1.0);

// B_i = sum_{j>=1} alpha_ij A_j.
Surrogate build_surrogate(const SplitProblem &prob, const RationalApprox &ra);

// U^H X U for every matrix (B0, A0, B_i and terms); alpha and poles carried over.
Surrogate project_surrogate(const Surrogate &s, const CMatrix &u);

// Hard evaluation guard: 1e-12 * max(1, max|sigma_i|).
double pole_guard(const Surrogate &s);
// Index of a pole within pole_guard of z, or -1.
long pole_at(const Surrogate &s, cplx z);
// Reporting flag: within 1e-8 * diameter of some pole.
bool near_pole(const Surrogate &s, cplx z);

// r_j(z) = sum_i alpha(i, j) / (z - sigma_i); requires a factored surrogate.
cplx surrogate_function(const Surrogate &s, std::size_t j, cplx z);

// Throws EvaluationFailure naming the term if some f_j(z) is non-finite.
CMatrix evaluate_T(const SplitProblem &prob, cplx z);
CVector apply_T(const SplitProblem &prob, cplx z, std::span<const cplx> u);
// Throws AtPole within pole_guard of a pole.
CMatrix evaluate_surrogate(const Surrogate &s, cplx z);
CVector apply_surrogate(const Surrogate &s, cplx z, std::span<const cplx> u);

// ||T(lambda) u||_2 with u unit-normalized.
double residual_norm(const SplitProblem &prob, cplx lambda, std::span<const cplx> u);
double surrogate_residual_norm(const Surrogate &s, cplx lambda, std::span<const cplx> u);

struct EigenPair
{
  cplx lambda;
  CVector u;
};

// Spectral norms of B0, A0 and each A_j (power iteration, 1e-6).
struct ProblemNorms
{
  double B0 = 0.0, A0 = 0.0;
  std::vector<double> A;
};
ProblemNorms problem_norms(const SplitProblem &prob);

// sum_i ||T(l_i) u_i|| / sum_i (||B0|| + |l_i| ||A0|| + sum_j |f_j(l_i)| ||A_j||).
// With use_exact_f false, T~ and r_j (from the factored surrogate s) replace T and f_j.
double scaled_residual_sum(const SplitProblem &prob, const Surrogate *s,
                           const std::vector<EigenPair> &pairs, bool use_exact_f,
                           const ProblemNorms *norms = nullptr);

// Spectral norms of B0, A0 and either the terms (factored) or each B_i.
struct SurrogateNorms
{
  double B0 = 0.0, A0 = 0.0;
  std::vector<double> terms, B;
};
SurrogateNorms surrogate_norms(const Surrogate &s);

// Scale of T~(lambda): ||B0|| + |lambda| ||A0|| + sum_j |r_j(lambda)| ||A_j||
// (factored), or sum_i ||B_i|| / |lambda - sigma_i| otherwise.
double surrogate_scale(const Surrogate &s, const SurrogateNorms &norms, cplx lambda);

// sum_i ||T~(l_i) u_i|| / sum_i surrogate_scale(l_i).
double surrogate_scaled_residual_sum(const Surrogate &s, const SurrogateNorms &norms,
                                     const std::vector<EigenPair> &pairs);

}  // namespace ratnlevp

#endif  // RATNLEVP_NLEVP_HPP
