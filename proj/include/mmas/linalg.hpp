#pragma once

#include <Eigen/Dense>

namespace mmas {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Inverse via partial-pivot LU plus one step of iterative refinement.
Matrix invert(const Matrix& A);

// 1-norm condition number computed from an explicit inverse.
double cond_1norm(const Matrix& A, const Matrix& A_inv);

// sigma_min / sigma_max; 0 for a rank-deficient or empty matrix.
double singular_value_ratio(const Matrix& M);

// Max deviation of rows 1..n-1 from the shifted-identity companion pattern.
double companion_structure_residual(const Matrix& A_bar);

}  // namespace mmas
