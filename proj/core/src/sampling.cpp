#include "hadsw/sampling.hpp"

#include <cmath>

#include "hadsw/linalg.hpp"
#include "hadsw/spd.hpp"

namespace hadsw {

namespace {

MatrixXd cov_chol(const MatrixXd& cov, int expected) {
  if (cov.rows() != expected || cov.cols() != expected)
    throw ConstraintViolation("covariance has wrong size");
  return cholesky_lower(cov);
}

VectorXd gaussian_vector(int n, RngStream& rng) {
  VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = rng.gaussian();
  return g;
}

VectorXd one_wrapped_sample(const Manifold& m, const VectorXd& mean,
                            const MatrixXd& chol, RngStream& rng) {
  const VectorXd v =
      m.tangent_chart(chol * gaussian_vector(m.tangent_dim(), rng));
  return m.exp_map(mean, m.transport_from_origin(mean, v));
}

}  // namespace

MatrixXd sample_wrapped_normal(const Manifold& m, const VectorXd& mean,
                               const MatrixXd& cov, int n, RngStream& rng) {
  m.validate_point(mean);
  const MatrixXd chol = cov_chol(cov, m.tangent_dim());
  MatrixXd out(n, m.ambient_dim());
  for (int i = 0; i < n; ++i)
    out.row(i) = one_wrapped_sample(m, mean, chol, rng).transpose();
  return out;
}

MatrixXd sample_wrapped_mixture(const Manifold& m,
                                const std::vector<MixtureComponent>& comps,
                                int n, RngStream& rng) {
  if (comps.empty()) throw ConstraintViolation("empty mixture");
  double total = 0.0;
  for (const auto& c : comps) {
    if (c.weight < 0) throw ConstraintViolation("negative mixture weight");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ConstraintViolation("mixture weights must sum to 1");
  std::vector<MatrixXd> chols;
  for (const auto& c : comps) {
    m.validate_point(c.mean);
    chols.push_back(cov_chol(c.cov, m.tangent_dim()));
  }
  MatrixXd out(n, m.ambient_dim());
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t k = comps.size() - 1;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      cum += comps[j].weight;
      if (u < cum) {
        k = j;
        break;
      }
    }
    out.row(i) =
        one_wrapped_sample(m, comps[k].mean, chols[k], rng).transpose();
  }
  return out;
}

MatrixXd sample_spd_log_gaussian(int dim, const MatrixXd& mean_log,
                                 double sigma, int n, RngStream& rng) {
  if (mean_log.rows() != dim || mean_log.cols() != dim ||
      !is_symmetric(mean_log))
    throw ConstraintViolation("mean log-matrix must be symmetric");
  MatrixXd out(n, dim * dim);
  const int tdim = dim * (dim + 1) / 2;
  for (int i = 0; i < n; ++i) {
    const MatrixXd s = sym_unembed(gaussian_vector(tdim, rng), dim);
    out.row(i) = spd_to_flat(sym_exp(mean_log + sigma * s)).transpose();
  }
  return out;
}

MatrixXd sample_gaussian(const VectorXd& mean, const MatrixXd& cov, int n,
                         RngStream& rng) {
  const MatrixXd chol = cov_chol(cov, static_cast<int>(mean.size()));
  MatrixXd out(n, mean.size());
  for (int i = 0; i < n; ++i)
    out.row(i) =
        (mean + chol * gaussian_vector(static_cast<int>(mean.size()), rng))
            .transpose();
  return out;
}

}  // namespace hadsw
