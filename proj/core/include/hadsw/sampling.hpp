#pragma once

#include <vector>

#include "hadsw/manifold.hpp"

namespace hadsw {

/// Wrapped normal: z ~ N(0, cov) in orthonormal tangent coordinates at the
/// origin, mapped through the direction chart, parallel-transported to
/// `mean`, and pushed through exp_mean. cov is tangent_dim x tangent_dim.
/// Rows of the result are samples in the manifold's ambient layout.
MatrixXd sample_wrapped_normal(const Manifold& m, const VectorXd& mean,
                               const MatrixXd& cov, int n, RngStream& rng);

struct MixtureComponent {
  double weight = 1.0;
  VectorXd mean;   // ambient layout
  MatrixXd cov;    // tangent_dim x tangent_dim
};

/// Mixture of wrapped normals; weights must sum to 1.
MatrixXd sample_wrapped_mixture(const Manifold& m,
                                const std::vector<MixtureComponent>& comps,
                                int n, RngStream& rng);

/// SPD log-Gaussian: X = exp(M + sigma * S) with S a symmetric matrix whose
/// isometric-embedding coordinates are iid N(0,1). Rows are flattened.
MatrixXd sample_spd_log_gaussian(int dim, const MatrixXd& mean_log,
                                 double sigma, int n, RngStream& rng);

/// Plain Gaussian point cloud, one row per sample.
MatrixXd sample_gaussian(const VectorXd& mean, const MatrixXd& cov, int n,
                         RngStream& rng);

}  // namespace hadsw
