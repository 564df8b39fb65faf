#pragma once

#include <cstdint>
#include <vector>

#include "hadsw/manifold.hpp"
#include "hadsw/ot1d.hpp"

namespace hadsw {

struct ChswParams {
  Projection projection = Projection::kGeodesic;
  double p = 2.0;
  int num_directions = 64;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ChswResult {
  double value = 0.0;       // CHSW_p (p-th root of the mean)
  double value_pp = 0.0;    // Monte-Carlo mean of W_p^p over directions
  double mc_stderr = 0.0;   // standard error of the mean of W_p^p
  VectorXd per_direction;   // W_p^p for each direction
};

/// Directions sampled uniformly on the origin tangent sphere, one row per
/// direction; row l comes from the counter-based stream (seed, l), so the
/// matrix is independent of thread count and of any other draws.
MatrixXd sample_directions(const Manifold& m, int count, std::uint64_t seed);

/// Projection of all atoms of mu onto direction v.
Projected1D project_measure(const DiscreteMeasure& mu, Projection proj,
                            const VectorXd& v);

/// Monte-Carlo sliced distance between measures on a common Hadamard
/// manifold: mean over directions of the 1D W_p^p between projections.
ChswResult chsw(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                const ChswParams& params);

/// Same estimator with caller-provided directions (rows of `directions`);
/// params.num_directions and params.seed are ignored.
ChswResult chsw_with_directions(const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu,
                                const MatrixXd& directions,
                                const ChswParams& params);

/// Pairwise squared sliced distances (p = 2) over a family of measures,
/// sharing one direction set so the result is a squared Hilbertian distance
/// matrix (the quantile embedding is common to all entries).
MatrixXd chsw_squared_matrix(const std::vector<DiscreteMeasure>& measures,
                             const ChswParams& params);

/// Gaussian kernel Gram matrix exp(-CHSW_2^2 / (2 sigma^2)) with shared
/// directions; positive semi-definite up to round-off.
MatrixXd gaussian_gram(const std::vector<DiscreteMeasure>& measures,
                       const ChswParams& params, double sigma);

}  // namespace hadsw
