#include "hadsw/flows.hpp"

#include <cmath>

#include "hadsw/exact.hpp"
#include "parallel.hpp"

namespace hadsw {

namespace {

// Seed counters for the independent direction streams of a flow run.
constexpr std::uint64_t kEvalCounter = 0x45564c44495253ull;   // eval set
constexpr std::uint64_t kStepCounterBase = 0x53544550ull;     // per-step sets

void check_flow_inputs(const DiscreteMeasure& mu, const DiscreteMeasure& target,
                       const FlowParams& params) {
  if (!(mu.manifold->descriptor() == target.manifold->descriptor()))
    throw DescriptorMismatch("measures live on different manifolds");
  if (!supports_projection(*mu.manifold, params.projection) ||
      !supports_projection_grad(*mu.manifold, params.projection))
    throw UnsupportedOperation(
        "flow needs a projection with a closed-form gradient on this "
        "manifold");
  if (!(params.step_size > 0)) throw ConstraintViolation("step size must be > 0");
}

}  // namespace

MatrixXd flow_velocity(const DiscreteMeasure& mu, const DiscreteMeasure& target,
                       const MatrixXd& directions, Projection projection,
                       int threads) {
  const Manifold& m = *mu.manifold;
  const int n = mu.size();
  const int count = static_cast<int>(directions.rows());

  std::vector<Projected1D> proj_mu(count), proj_nu(count);
  detail::parallel_for(count, threads, [&](int l) {
    const VectorXd v = directions.row(l).transpose();
    proj_mu[l] = project_measure(mu, projection, v);
    proj_nu[l] = project_measure(target, projection, v);
  });

  MatrixXd vel = MatrixXd::Zero(n, m.ambient_dim());
  detail::parallel_for(n, threads, [&](int i) {
    const VectorXd x = mu.points.row(i).transpose();
    VectorXd acc = VectorXd::Zero(m.ambient_dim());
    for (int l = 0; l < count; ++l) {
      const VectorXd v = directions.row(l).transpose();
      const double psi =
          potential_derivative(proj_mu[l], proj_nu[l], proj_mu[l].values[i]);
      acc += psi * project_coord_grad(m, projection, v, x);
    }
    vel.row(i) = (-acc / count).transpose();
  });
  return vel;
}

MatrixXd flow_step(const DiscreteMeasure& mu, const DiscreteMeasure& target,
                   const MatrixXd& directions, const FlowParams& params,
                   int step) {
  const Manifold& m = *mu.manifold;
  const MatrixXd vel =
      flow_velocity(mu, target, directions, params.projection, params.threads);
  MatrixXd next(mu.size(), m.ambient_dim());
  detail::parallel_for(mu.size(), params.threads, [&](int i) {
    VectorXd u = params.step_size * vel.row(i).transpose();
    if (params.clip_norm > 0 && u.norm() > params.clip_norm)
      u *= params.clip_norm / u.norm();
    VectorXd x = m.exp_map(mu.points.row(i).transpose(), u);
    x = m.project_to_manifold(x);
    next.row(i) = x.transpose();
  });
  if (!next.allFinite())
    throw DivergenceError("particle scheme produced non-finite values", step);
  return next;
}

FlowResult run_flow(const DiscreteMeasure& mu0, const DiscreteMeasure& target,
                    const FlowParams& params) {
  check_flow_inputs(mu0, target, params);
  const Manifold& m = *mu0.manifold;

  const MatrixXd eval_dirs = sample_directions(
      m, params.num_directions, mix_seed(params.seed, kEvalCounter));
  const MatrixXd frozen_dirs = sample_directions(
      m, params.num_directions, mix_seed(params.seed, kStepCounterBase));

  ChswParams eval;
  eval.projection = params.projection;
  eval.p = 2.0;
  eval.threads = params.threads;

  FlowResult out;
  DiscreteMeasure mu = mu0;
  auto record = [&](int step) {
    if (params.history_every <= 0) return;
    if (step % params.history_every != 0 && step != params.num_steps) return;
    out.history.steps.push_back(step);
    out.history.chsw2.push_back(
        chsw_with_directions(mu, target, eval_dirs, eval).value_pp);
    if (params.track_w2)
      out.history.w2.push_back(std::sqrt(exact_wp(mu, target, 2.0)));
  };

  record(0);
  for (int step = 0; step < params.num_steps; ++step) {
    const MatrixXd dirs =
        params.fresh_directions
            ? sample_directions(
                  m, params.num_directions,
                  mix_seed(params.seed, kStepCounterBase + 1 + step))
            : frozen_dirs;
    mu.points = flow_step(mu, target, dirs, params, step);
    record(step + 1);
  }
  out.points = mu.points;
  return out;
}

}  // namespace hadsw
