// Copyright The ratnlevp Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef RATNLEVP_LINALG_HPP
#define RATNLEVP_LINALG_HPP

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace ratnlevp
{

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

//
// Dense complex matrix, column-major storage.
//
class CMatrix
{
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  // Row-wise literal; throws InvalidArgument on ragged rows or non-finite entries.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> d);
  // Entries drawn as independent standard normals in real and imaginary parts.
  static CMatrix random(std::size_t rows, std::size_t cols, std::mt19937_64 &rng);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool square() const { return rows_ == cols_; }

  cplx &operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
  const cplx &operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

  cplx *data() { return data_.data(); }
  const cplx *data() const { return data_.data(); }

  std::span<cplx> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const cplx> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

  CVector column(std::size_t j) const { return {col(j).begin(), col(j).end()}; }
  void set_column(std::size_t j, std::span<const cplx> v);

  // Throws InvalidArgument if any entry is NaN/Inf.
  void check_finite() const;

  CMatrix adjoint() const;
  CMatrix transpose() const;
  // Rows [r0, r0+nr) and columns [c0, c0+nc).
  CMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const CMatrix &b);
  // First ncols columns.
  CMatrix leading_columns(std::size_t ncols) const { return block(0, 0, rows_, ncols); }

  CMatrix &operator+=(const CMatrix &b);
  CMatrix &operator-=(const CMatrix &b);
  CMatrix &operator*=(cplx s);

  bool operator==(const CMatrix &b) const = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix &b);
CMatrix operator-(CMatrix a, const CMatrix &b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix &a, const CMatrix &b);
CVector operator*(const CMatrix &a, std::span<const cplx> x);

// y += alpha * x
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
// x^H y
cplx dot(std::span<const cplx> x, std::span<const cplx> y);
double norm2(std::span<const cplx> x);
double norm_inf(std::span<const cplx> x);
void scale(cplx s, std::span<cplx> x);
CVector random_vector(std::size_t n, std::mt19937_64 &rng);

double norm_max(const CMatrix &a);
double norm_fro(const CMatrix &a);
double norm_one(const CMatrix &a);
double norm_inf(const CMatrix &a);
// Spectral norm by power iteration on A^H A (relative tolerance 1e-6 by default).
double norm_spectral(const CMatrix &a, double tol = 1e-6, int max_iter = 500);

// Rotate the phase of v so its largest-magnitude entry is real and positive.
void canonicalize_phase(std::span<cplx> v);

//
// LU factorization with partial pivoting: P A = L U, unit lower L.
//
struct LUFactorization
{
  CMatrix lu;
  std::vector<std::size_t> perm;  // row i of U came from row perm[i] of A
  int parity = 1;                 // sign of the permutation
  double scale = 0.0;             // max |a_ij| of the factored matrix

  std::size_t size() const { return lu.rows(); }
  double min_pivot() const;
  double max_pivot() const;
};

// Throws SingularMatrix when a pivot magnitude falls below pivot_tol * max|a_ij|.
LUFactorization lu_factor(const CMatrix &a, double pivot_tol = 1e-14);
CVector lu_solve(const LUFactorization &fac, std::span<const cplx> b);
CMatrix lu_solve(const LUFactorization &fac, const CMatrix &b);
// Solves A^H x = b with the factorization of A.
CVector lu_solve_adjoint(const LUFactorization &fac, std::span<const cplx> b);

// Determinant as log|det| plus phase, to survive products that overflow double.
struct LogDet
{
  double log_abs = 0.0;
  cplx phase = 1.0;  // unit modulus; 0 for an exactly singular matrix
  bool zero = false;

  cplx value() const;
  LogDet operator*(const LogDet &o) const;
};

// No pivot threshold: exact zero pivots yield LogDet::zero.
LogDet log_det(const CMatrix &a);

//
// Dense eigenvalue problems.
//
struct EigResult
{
  CVector values;
  CMatrix vectors;  // unit 2-norm columns; empty if vectors were not requested
};

struct EigOptions
{
  bool vectors = true;
  bool balance = true;
  std::size_t max_dim = 4096;
  int max_sweeps_per_eigenvalue = 60;
  // dense_geig only: shift used when M is singular; defaults to a point scaled
  // by max|a_ij| / max|m_ij|.
  std::optional<cplx> shift;
};

// Balancing, Householder Hessenberg reduction, shifted QR to Schur form,
// eigenvectors by back substitution.
EigResult dense_eig(const CMatrix &a, const EigOptions &opts = {});

// Infinite eigenvalues of the pencil are reported as this marker.
cplx infinite_eigenvalue();
bool is_infinite(cplx lambda);

// A x = lambda M x. Uses M^{-1} A when M is well conditioned, otherwise a
// shift-and-invert transform (A - tau M)^{-1} M so singular M is tolerated.
EigResult dense_geig(const CMatrix &a, const CMatrix &m, const EigOptions &opts = {});

//
// Orthonormalization and SVD.
//
struct Orthonormalized
{
  CMatrix q;
  std::size_t rank = 0;
};

// Modified Gram-Schmidt with one full re-orthogonalization pass. Columns whose
// projected norm drops below drop_tol times their initial norm are discarded.
Orthonormalized mgs_orthonormalize(const CMatrix &w, double drop_tol = 1e-12);

struct SVDResult
{
  CMatrix u;                    // rows x r
  std::vector<double> sigma;    // nonincreasing
  CMatrix v;                    // cols x r
};

// Thin SVD by one-sided Jacobi rotations, r = min(rows, cols).
SVDResult jacobi_svd(const CMatrix &a, double tol = 1e-15, int max_sweeps = 80);

}  // namespace ratnlevp

#endif  // RATNLEVP_LINALG_HPP
