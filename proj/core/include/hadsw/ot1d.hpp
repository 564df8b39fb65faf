#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hadsw/errors.hpp"

namespace hadsw {

/// A discrete measure on the real line: atoms, weights on the simplex, and
/// the stable sorting permutation (ties broken by original index).
struct Projected1D {
  Eigen::VectorXd values;
  Eigen::VectorXd weights;        // nonnegative, sums to 1
  std::vector<int> sorted_perm;   // values[sorted_perm[i]] nondecreasing

  static Projected1D uniform(Eigen::VectorXd values);
  static Projected1D weighted(Eigen::VectorXd values, Eigen::VectorXd weights);

  int size() const { return static_cast<int>(values.size()); }
  double sorted_value(int i) const { return values[sorted_perm[i]]; }
  double sorted_weight(int i) const { return weights[sorted_perm[i]]; }
  bool is_uniform() const;
};

/// W_p^p between equal-count uniform measures: (1/n) sum |x_(i) - y_(i)|^p.
/// Falls back to w1d_weighted on count mismatch.
double w1d_sorted(const Projected1D& x, const Projected1D& y, double p);

/// W_p^p via exact piecewise-constant quantile alignment over merged
/// cumulative-weight breakpoints.
double w1d_weighted(const Projected1D& x, const Projected1D& y, double p);

/// Piecewise-linear CDF through knots (x_(i), u_i) with u_i the cumulative
/// weight; clamped to [u_1, 1] outside the support.
double interp_cdf(const Projected1D& m, double t);

/// Monotone inverse of interp_cdf; clamps to the extreme atoms.
double interp_quantile(const Projected1D& m, double u);

/// Derivative of the 1D Kantorovich potential for the quadratic cost:
/// psi'(t) = t - F_nu^{-1}(F_mu(t)), with interpolated CDF/quantile.
double potential_derivative(const Projected1D& mu, const Projected1D& nu,
                            double t);

}  // namespace hadsw
