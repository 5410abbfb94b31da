// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_GALLERY_HPP
#define RATNLEVP_GALLERY_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "ratnlevp/contour.hpp"
#include "ratnlevp/nlevp.hpp"

namespace ratnlevp
{

// Characteristic matrix of x'(t) = -B0 x(t) + A1 x(t - tau); n = 2.
SplitProblem make_delay(double tau = 1.0);

// Finite element string with an elastically attached mass: f(z) = 1/(1 - z).
SplitProblem make_fem_string(std::size_t n);

// Exact 2n x 2n linearization (A, M) of the FEM string problem. Besides the
// true eigenvalues it has the eigenvalue 1 with multiplicity n - 1.
struct Pencil
{
  CMatrix A, M;
};
Pencil make_exact_fem_linearization(std::size_t n);

// (e^z - 1) B1 + z^2 B2 - b0 I, with A0 = 0.
SplitProblem make_hadeler(std::size_t n, double b0 = 100.0);

// -B0 + z I + z^2 A2 with the tridiagonal B0 and rank-corrected A2.
SplitProblem make_quadratic_halo(std::size_t n = 4);

// Companion linearization of -B0 + z A0 + z^2 A2 (A0 invertible not needed):
// eigenvalues of the 2n x 2n pencil are exactly those of the quadratic.
Pencil quadratic_companion(const CMatrix &B0, const CMatrix &A0, const CMatrix &A2);

// Default experiment attached to each gallery problem.
struct GalleryEntry
{
  std::string name;
  std::string description;
  Contour contour;
  std::size_t m;  // quadrature nodes
  std::size_t k;  // wanted eigenvalues
};
const std::vector<GalleryEntry> &gallery_entries();
// By name with default parameters: delay, fem, hadeler, quadratic.
SplitProblem make_gallery_problem(const std::string &name);

// Problem directory: problem.json manifest plus one text file per matrix
// ("rows cols" then rows*cols lines "re im", row-major).
SplitProblem load_problem(const std::filesystem::path &dir);
void write_problem(const SplitProblem &prob, const std::filesystem::path &dir);
CMatrix read_matrix_file(const std::filesystem::path &file);
void write_matrix_file(const CMatrix &a, const std::filesystem::path &file);
// Parses poly(d), exp(s), recip(s); throws UnknownFunctionDescriptor otherwise.
ScalarFunction parse_function_descriptor(const std::string &text);

}  // namespace ratnlevp

#endif  // RATNLEVP_GALLERY_HPP
