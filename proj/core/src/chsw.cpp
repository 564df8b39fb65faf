#include "hadsw/chsw.hpp"

#include <cmath>

#include "parallel.hpp"

namespace hadsw {

MatrixXd sample_directions(const Manifold& m, int count, std::uint64_t seed) {
  MatrixXd out(count, m.ambient_dim());
  for (int l = 0; l < count; ++l) {
    RngStream rng = derive_stream(seed, static_cast<std::uint64_t>(l));
    out.row(l) = sample_direction(m, rng).transpose();
  }
  return out;
}

Projected1D project_measure(const DiscreteMeasure& mu, Projection proj,
                            const VectorXd& v) {
  VectorXd coords(mu.size());
  for (int i = 0; i < mu.size(); ++i)
    coords[i] =
        project_coord(*mu.manifold, proj, v, mu.points.row(i).transpose());
  if (mu.is_uniform()) return Projected1D::uniform(std::move(coords));
  return Projected1D::weighted(std::move(coords), mu.weights);
}

namespace {

ChswResult reduce(VectorXd per_direction, double p) {
  ChswResult r;
  const int n = static_cast<int>(per_direction.size());
  r.value_pp = per_direction.mean();
  r.value = std::pow(std::max(r.value_pp, 0.0), 1.0 / p);
  if (n > 1) {
    const double var =
        (per_direction.array() - r.value_pp).square().sum() / (n - 1);
    r.mc_stderr = std::sqrt(var / n);
  }
  r.per_direction = std::move(per_direction);
  return r;
}

void check_inputs(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                  const ChswParams& params) {
  if (!(mu.manifold->descriptor() == nu.manifold->descriptor()))
    throw DescriptorMismatch("measures live on different manifolds");
  if (!(params.p >= 1.0)) throw ConstraintViolation("order p must be >= 1");
  if (!supports_projection(*mu.manifold, params.projection))
    throw UnsupportedOperation("projection unavailable on this manifold");
}

}  // namespace

ChswResult chsw_with_directions(const DiscreteMeasure& mu,
                                const DiscreteMeasure& nu,
                                const MatrixXd& directions,
                                const ChswParams& params) {
  check_inputs(mu, nu, params);
  const int count = static_cast<int>(directions.rows());
  if (count == 0) throw ConstraintViolation("need at least one direction");
  VectorXd per_direction(count);
  detail::parallel_for(count, params.threads, [&](int l) {
    const VectorXd v = directions.row(l).transpose();
    per_direction[l] =
        w1d_sorted(project_measure(mu, params.projection, v),
                   project_measure(nu, params.projection, v), params.p);
  });
  return reduce(std::move(per_direction), params.p);
}

ChswResult chsw(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                const ChswParams& params) {
  check_inputs(mu, nu, params);
  if (params.num_directions <= 0)
    throw ConstraintViolation("need at least one direction");
  return chsw_with_directions(
      mu, nu, sample_directions(*mu.manifold, params.num_directions,
                                params.seed),
      params);
}

MatrixXd chsw_squared_matrix(const std::vector<DiscreteMeasure>& measures,
                             const ChswParams& params) {
  const int n = static_cast<int>(measures.size());
  if (n == 0) return MatrixXd();
  for (const auto& m : measures)
    if (!(m.manifold->descriptor() == measures[0].manifold->descriptor()))
      throw DescriptorMismatch("measures live on different manifolds");
  const MatrixXd dirs = sample_directions(
      *measures[0].manifold, params.num_directions, params.seed);

  // One shared projection pass per (measure, direction).
  std::vector<std::vector<Projected1D>> proj(n);
  for (int i = 0; i < n; ++i) proj[i].resize(dirs.rows());
  detail::parallel_for(n, params.threads, [&](int i) {
    for (int l = 0; l < dirs.rows(); ++l)
      proj[i][l] = project_measure(measures[i], params.projection,
                                   dirs.row(l).transpose());
  });

  MatrixXd out = MatrixXd::Zero(n, n);
  const int pairs = n * (n - 1) / 2;
  std::vector<double> vals(pairs);
  detail::parallel_for(pairs, params.threads, [&](int k) {
    // Unrank k into the (i, j) upper-triangle pair.
    int i = 0, rem = k;
    while (rem >= n - 1 - i) rem -= n - 1 - i, ++i;
    const int j = i + 1 + rem;
    double acc = 0.0;
    for (int l = 0; l < dirs.rows(); ++l)
      acc += w1d_sorted(proj[i][l], proj[j][l], 2.0);
    vals[k] = acc / dirs.rows();
  });
  for (int k = 0, i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) out(i, j) = out(j, i) = vals[k];
  return out;
}

MatrixXd gaussian_gram(const std::vector<DiscreteMeasure>& measures,
                       const ChswParams& params, double sigma) {
  if (!(sigma > 0)) throw ConstraintViolation("kernel bandwidth must be > 0");
  const MatrixXd d2 = chsw_squared_matrix(measures, params);
  return (-d2 / (2.0 * sigma * sigma)).array().exp();
}

}  // namespace hadsw
