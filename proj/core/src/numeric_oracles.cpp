#include <cmath>

#include "hadsw/manifold.hpp"

namespace hadsw {

namespace {

// Central difference of t -> d(exp_o(tv), x)^2.
double sq_dist_slope(const Manifold& m, const VectorXd& v, const VectorXd& x,
                     double t) {
  const double h = 1e-6;
  const double dp = m.dist(m.geodesic_point(v, t + h), x);
  const double dm = m.dist(m.geodesic_point(v, t - h), x);
  return (dp * dp - dm * dm) / (2.0 * h);
}

}  // namespace

double numeric_geodesic_coord(const Manifold& m, const VectorXd& v,
                              const VectorXd& x) {
  // The squared distance along the geodesic is strictly convex on a Hadamard
  // manifold, so its slope has exactly one sign change. Expand the bracket
  // until the slope signs differ, then bisect.
  double lo = -1.0, hi = 1.0;
  double slo = sq_dist_slope(m, v, x, lo);
  double shi = sq_dist_slope(m, v, x, hi);
  if (slo >= 0.0 && shi <= 0.0)
    throw NumericError("squared distance along geodesic is not convex");
  int guard = 0;
  while (slo > 0.0) {
    hi = lo;
    shi = slo;
    lo *= 2.0;
    slo = sq_dist_slope(m, v, x, lo);
    if (++guard > 60) throw NumericError("geodesic bracket expansion failed");
  }
  guard = 0;
  while (shi < 0.0) {
    lo = hi;
    slo = shi;
    hi *= 2.0;
    shi = sq_dist_slope(m, v, x, hi);
    if (++guard > 60) throw NumericError("geodesic bracket expansion failed");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (sq_dist_slope(m, v, x, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double numeric_busemann(const Manifold& m, const VectorXd& v,
                        const VectorXd& x, double t_max) {
  return m.dist(x, m.geodesic_point(v, t_max)) - t_max;
}

}  // namespace hadsw
