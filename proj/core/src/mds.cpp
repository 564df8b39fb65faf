#include "hadsw/mds.hpp"

#include <cmath>

#include "hadsw/hyperbolic.hpp"

namespace hadsw {

namespace {

constexpr double kTinyRadius = 1e-9;

// z(zt) = (cosh r, sinh(r) zt / r), r = ||zt||.
VectorXd lift(const VectorXd& zt) {
  const double r = zt.norm();
  VectorXd z(zt.size() + 1);
  if (r < kTinyRadius) {
    z[0] = 1.0;
    z.tail(zt.size()) = zt;
    return z;
  }
  z[0] = std::cosh(r);
  z.tail(zt.size()) = (std::sinh(r) / r) * zt;
  return z;
}

// Applies the transpose of the lift Jacobian at zt to an ambient vector g.
VectorXd lift_jacobian_t(const VectorXd& zt, const VectorXd& g) {
  const int d = static_cast<int>(zt.size());
  const double r = zt.norm();
  const VectorXd gs = g.tail(d);
  if (r < kTinyRadius) return gs;
  const VectorXd u = zt / r;
  const double sh = std::sinh(r), ch = std::cosh(r);
  // dz0/dzt = sh * u ; dzbar/dzt = (sh/r)(I - uu^T) + ch uu^T.
  return g[0] * sh * u + (sh / r) * (gs - u.dot(gs) * u) +
         ch * u.dot(gs) * u;
}

struct StressGrad {
  double stress;
  MatrixXd grad;  // n x d, gradient w.r.t. the tangent parameters
};

StressGrad eval(const MatrixXd& zt, const MatrixXd& target) {
  const int n = static_cast<int>(zt.rows());
  const int d = static_cast<int>(zt.cols());
  MatrixXd z(n, d + 1);
  for (int i = 0; i < n; ++i)
    z.row(i) = lift(zt.row(i).transpose()).transpose();

  StressGrad out{0.0, MatrixXd::Zero(n, d)};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double c =
          -minkowski_inner(z.row(i).transpose(), z.row(j).transpose());
      const double dist = std::acosh(std::max(c, 1.0));
      const double resid = dist - target(i, j);
      out.stress += resid * resid;
      const double denom =
          std::max(std::sqrt(std::max(c * c - 1.0, 0.0)), kTinyRadius);
      // d dist / d z_i = -J z_j / sqrt(c^2 - 1); J = diag(-1, 1, ..., 1).
      VectorXd gz = z.row(j).transpose() * (2.0 * resid / denom);
      gz[0] = -gz[0];
      gz = -gz;
      out.grad.row(i) +=
          lift_jacobian_t(zt.row(i).transpose(), gz).transpose();
      VectorXd gzi = z.row(i).transpose() * (2.0 * resid / denom);
      gzi[0] = -gzi[0];
      gzi = -gzi;
      out.grad.row(j) +=
          lift_jacobian_t(zt.row(j).transpose(), gzi).transpose();
    }
  return out;
}

MdsResult run_once(const MatrixXd& target, const MdsParams& p,
                   std::uint64_t seed) {
  const int n = static_cast<int>(target.rows());
  RngStream rng(seed);
  MatrixXd zt(n, p.embed_dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p.embed_dim; ++j)
      zt(i, j) = p.init_scale * rng.gaussian();

  double step = 0.1;
  StressGrad cur = eval(zt, target);
  int iters = 0;
  for (; iters < p.max_iters; ++iters) {
    const MatrixXd cand = zt - step * cur.grad;
    const StressGrad next = eval(cand, target);
    if (next.stress <= cur.stress) {
      const double drop = cur.stress - next.stress;
      zt = cand;
      cur = next;
      step *= 1.1;
      if (drop <= p.tol * std::max(cur.stress, 1e-300)) break;
    } else {
      step *= 0.5;
      if (step < 1e-16) break;
    }
  }

  MdsResult out;
  out.points.resize(n, p.embed_dim + 1);
  for (int i = 0; i < n; ++i)
    out.points.row(i) = lift(zt.row(i).transpose()).transpose();
  out.stress = cur.stress;
  out.iterations = iters;
  return out;
}

}  // namespace

MdsResult hyperbolic_mds(const MatrixXd& delta, const MdsParams& params) {
  const int n = static_cast<int>(delta.rows());
  if (delta.cols() != n || n < 2)
    throw ConstraintViolation("dissimilarity matrix must be square, n >= 2");
  if (!delta.isApprox(delta.transpose(), 1e-12) ||
      (delta.array() < 0).any() ||
      delta.diagonal().cwiseAbs().maxCoeff() > 1e-12)
    throw ConstraintViolation(
        "dissimilarities must be symmetric, nonnegative, zero on the "
        "diagonal");
  if (params.embed_dim < 1 || params.restarts < 1 || !(params.alpha > 0))
    throw ConstraintViolation("invalid MDS parameters");

  const MatrixXd target = std::sqrt(params.alpha) * delta;
  MdsResult best;
  for (int r = 0; r < params.restarts; ++r) {
    MdsResult cand = run_once(target, params, mix_seed(params.seed, r));
    if (r == 0 || cand.stress < best.stress) best = std::move(cand);
  }
  return best;
}

}  // namespace hadsw
