#pragma once

#include <Eigen/Dense>
#include <utility>

#include "hadsw/errors.hpp"

namespace hadsw {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Relative eigenvalue-closeness threshold for the Loewner divided
/// difference; below it the second-order series expansion is used.
inline constexpr double kEigCloseThreshold = 1e-7;

/// Symmetrize (x + x^T)/2. Throws ConstraintViolation when the asymmetry
/// exceeds 1e-10 * max(1, ||x||_F).
MatrixXd ensure_symmetric(const MatrixXd& x);

bool is_symmetric(const MatrixXd& x, double tol = 1e-10);

/// Checks symmetry and strict positive definiteness
/// (lambda_min > 1e-12 * lambda_max).
bool is_spd(const MatrixXd& x);
void check_spd(const MatrixXd& x);

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
struct EigenDecomp {
  MatrixXd u;       // orthogonal, columns are eigenvectors
  VectorXd lambda;  // descending
};

EigenDecomp sym_eigen(const MatrixXd& x);

/// Matrix logarithm of an SPD matrix (result symmetric).
MatrixXd spd_log(const MatrixXd& x);

/// Matrix exponential of a symmetric matrix (result SPD).
MatrixXd sym_exp(const MatrixXd& a);

/// Cholesky factor L (lower triangular, positive diagonal) with L L^T = x.
MatrixXd cholesky_lower(const MatrixXd& x);

/// UDU decomposition m = g diag(d) g^T with g unit-upper-triangular and
/// d positive. Runs a Cholesky-type elimination from the last row upward.
std::pair<MatrixXd, VectorXd> udu_unit_upper(const MatrixXd& m);

/// Loewner matrix of the matrix-log divided differences:
/// gamma[i][j] = (log li - log lj)/(li - lj), gamma[i][i] = 1/li,
/// with a series branch for relatively close eigenvalues.
MatrixXd loewner(const VectorXd& lambda);

/// Differential of the matrix log at SPD x applied to symmetric v:
/// U ((U^T V U) .* Gamma) U^T.
MatrixXd log_differential(const MatrixXd& x, const MatrixXd& v);

/// Inverse of log_differential: U ((U^T W U) ./ Gamma) U^T.
MatrixXd log_differential_inverse(const MatrixXd& x, const MatrixXd& w);

/// Symmetric square root and inverse square root of an SPD matrix.
MatrixXd spd_sqrt(const MatrixXd& x);
MatrixXd spd_inv_sqrt(const MatrixXd& x);

}  // namespace hadsw
