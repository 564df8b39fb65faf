#pragma once

#include <cstdint>

#include "hadsw/manifold.hpp"

namespace hadsw {

struct MdsParams {
  int embed_dim = 2;        // hyperbolic dimension d; points live in L^d
  double alpha = 1.0;       // dissimilarities are matched to sqrt(alpha)*delta
  int max_iters = 5000;
  double tol = 1e-9;        // relative stress decrease stopping threshold
  double init_scale = 0.1;  // std-dev of the random tangent initialization
  int restarts = 1;
  std::uint64_t seed = 0;
};

struct MdsResult {
  MatrixXd points;   // n x (embed_dim + 1) rows on the K = -1 hyperboloid
  double stress = 0.0;  // sum_{i<j} (d(z_i, z_j) - sqrt(alpha) delta_ij)^2
  int iterations = 0;
};

/// Metric MDS into the Lorentz model (K = -1) by gradient descent with
/// backtracking on the tangent parameterization z = (cosh r, sinh(r) u).
/// delta must be a symmetric nonnegative dissimilarity matrix with zero
/// diagonal. With several restarts the best run is returned.
MdsResult hyperbolic_mds(const MatrixXd& delta, const MdsParams& params);

}  // namespace hadsw
