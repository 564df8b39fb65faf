#pragma once

#include "hadsw/manifold.hpp"

namespace hadsw {

/// Conversions between the Poincare ball and Lorentz (hyperboloid) models of
/// curvature K < 0. The maps are Riemannian isometries; tangent conversions
/// are their differentials. Ball directions are unit Euclidean vectors (the
/// ideal endpoint scaled by sqrt(-K)); the matching Lorentz direction is the
/// unit tangent (0, v) at the hyperboloid origin.

VectorXd ball_to_lorentz_point(const VectorXd& x, double curvature);
VectorXd lorentz_to_ball_point(const VectorXd& y, double curvature);

/// Differential of ball_to_lorentz_point at x applied to dx.
VectorXd ball_to_lorentz_tangent(const VectorXd& x, const VectorXd& dx,
                                 double curvature);
/// Differential of lorentz_to_ball_point at y applied to tangent dy.
VectorXd lorentz_to_ball_tangent(const VectorXd& y, const VectorXd& dy,
                                 double curvature);

/// Minkowski bilinear form <x, y> = -x0 y0 + sum_i xi yi.
double minkowski_inner(const VectorXd& x, const VectorXd& y);

}  // namespace hadsw
