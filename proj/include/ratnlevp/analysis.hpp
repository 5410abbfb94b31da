// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_ANALYSIS_HPP
#define RATNLEVP_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ratnlevp/contour.hpp"
#include "ratnlevp/linalg.hpp"
#include "ratnlevp/nlevp.hpp"
#include "ratnlevp/solvers.hpp"

namespace ratnlevp
{

//
// det(A - z I) = det(S(z)) prod_i (sigma_i - z)^n off the poles and
// det(B_i) prod_{j != i} (sigma_j - sigma_i)^n at sigma_i, for A0 = I.
//
struct DetCheck
{
  LogDet lhs, rhs;
  bool pole_branch = false;
  // max of |log|lhs| - log|rhs|| and the phase gap in radians; 0 when both
  // sides vanish, infinity when exactly one does.
  double rel_err = 0.0;
};

// Throws NotIdentityM unless A0 = I, DimensionCap if (m+1)n > max_dim.
DetCheck det_identity_check(const Surrogate &s, cplx z, std::size_t max_dim = 1024);

struct ConditionEstimate
{
  cplx lambda;
  double kappa = 0.0;
  double alpha_u = 0.0, alpha_y = 0.0;
  double denom = 0.0;  // |y^H S'(lambda) u|
};

struct ConditionOptions
{
  // alpha_y with sum ||B_i^H y|| / |lambda - sigma_i|^2 (unsquared norm)
  // instead of the squared-norm form.
  bool printed_form = false;
  // relative to ||B0||_F + |lambda| ||A0||_F + sum_i ||B_i||_F / |sigma_i - lambda|
  double residual_tol = 1e-6;
};

// kappa = alpha_u alpha_y / |y^H S'(lambda) u| with
//   alpha_u = sqrt(1 + sum_i 1/|lambda - sigma_i|^2),
//   alpha_y = sqrt(1 + sum_i ||B_i^H y||^2 / |lambda - sigma_i|^2),
//   S'(z) = -I + sum_i B_i / (sigma_i - z)^2.
// Throws NotIdentityM, AtPole, NotEigenpair.
ConditionEstimate condition_number(const Surrogate &s, cplx lambda, CVector u, CVector y,
                                   const ConditionOptions &opts = {});

// Unit y with S(lambda)^H y ~ 0 by inverse iteration. Throws ConvergenceFailure
// if the residual stays above 1e-6 times the size of S(lambda) (see ConditionOptions).
CVector left_eigvec(const Surrogate &s, cplx lambda, std::uint64_t seed = 42);

enum class HaloLabel
{
  InteriorTrue,
  ExteriorLinearPencil,
  Halo,
  PoleArtifact
};
std::string to_string(HaloLabel l);

struct HaloEntry
{
  cplx lambda;
  HaloLabel label = HaloLabel::Halo;
  bool low_confidence = false;  // Halo by default: neither near the contour nor explained
  bool matched = false;         // InteriorTrue within tol_match of a reference value
  double boundary_distance = 0.0;
};

struct HaloClassification
{
  std::vector<HaloEntry> entries;
  CVector pencil_eigenvalues;  // finite eigenvalues of B0 x = z A0 x
  double delta = 0.05;
  double band = 0.0;  // delta * diameter
};

// Labels, in this order of precedence: PoleArtifact (pole flag), ExteriorLinearPencil
// (within tol_match of a (B0, A0) eigenvalue outside the contour), InteriorTrue (inside,
// farther than delta*diameter from the contour), Halo (within the band), else Halo
// with low_confidence.
HaloClassification classify_halo(const EigenReport &report, const Surrogate &s, const Contour &contour,
                                 double tol_match, const std::optional<std::vector<cplx>> &reference = {},
                                 double delta = 0.05);

struct BoundCheck
{
  cplx lambda;
  double lhs = 0.0;      // ||T(lambda) u||_2
  double lhs_inf = 0.0;  // ||T(lambda) u||_inf
  double bound = 0.0;    // mu * eps
  bool holds = true;
};

struct BoundSummary
{
  std::vector<BoundCheck> checks;
  double mu = 0.0;   // sum_j ||A_j||_2
  double eps = 0.0;  // max_j approx_error over inner
};

// ||T(lambda) u|| <= mu eps with mu = sum_j ||A_j||_2, eps = max_j approx_error(ra, j, inner).
// Throws RegionNotInterior if a lambda lies outside inner, BoundViolated (when
// throw_on_violation) if lhs > bound (1 + 1e-6).
BoundSummary residual_bound_check(const SplitProblem &prob, const RationalApprox &ra,
                               const std::vector<EigenPair> &pairs, const Contour &inner,
                               bool throw_on_violation = true, std::size_t grid_density = 200);

}  // namespace ratnlevp

#endif  // RATNLEVP_ANALYSIS_HPP
