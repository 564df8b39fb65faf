#pragma once

#include "hadsw/manifold.hpp"

namespace hadsw {

/// SPD points travel through the Manifold interface as row-major flattened
/// d x d vectors. These helpers convert and provide the isometric embedding
/// of symmetric matrices used by the SPD direction charts.

MatrixXd spd_from_flat(const VectorXd& x, int d);
VectorXd spd_to_flat(const MatrixXd& x);

/// Isometric embedding of symmetric matrices into R^{d(d+1)/2} w.r.t. the
/// Frobenius norm: diagonal entries first, then the strict upper triangle
/// (row-major) scaled by sqrt(2).
VectorXd sym_embed(const MatrixXd& a);
MatrixXd sym_unembed(const VectorXd& g, int d);

/// The O(n)-invariant family map F^{(p,q)}(A) = q A + ((p-q)/d) tr(A) I and
/// its inverse.
MatrixXd onq_f(const MatrixXd& a, double p, double q);
MatrixXd onq_f_inverse(const MatrixXd& b, double p, double q);

/// Affine-invariant distance ||log(X^{-1/2} Y X^{-1/2})||_F, computed in
/// extended precision to survive large eigenvalue dynamic range.
double ai_distance(const MatrixXd& x, const MatrixXd& y);

}  // namespace hadsw
