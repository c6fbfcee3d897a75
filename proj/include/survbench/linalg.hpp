#pragma once

#include <span>
#include <vector>

#include "survbench/common.hpp"

// Dense helpers for the small symmetric systems in this suite (covariance
// construction, Cox Hessian solves, ridge normal equations). Everything is
// O(d^3) with d at most a few dozen.
namespace survbench::linalg {

// In-place lower Cholesky factor of a symmetric positive definite matrix.
// Returns false when the matrix is not numerically positive definite.
bool cholesky(Matrix& a);

// Solves L L^T x = b given the lower factor from cholesky().
std::vector<double> cholesky_solve(const Matrix& chol_lower,
                                   std::span<const double> b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending.
std::vector<double> jacobi_eigenvalues(Matrix a, int max_sweeps = 64);

}  // namespace survbench::linalg
