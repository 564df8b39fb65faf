#include "hadsw/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hadsw {

namespace {

double pow_cost(double diff, double p) {
  const double a = std::abs(diff);
  if (p == 2.0) return a * a;
  if (p == 1.0) return a;
  return std::pow(a, p);
}

std::vector<int> stable_order(const Eigen::VectorXd& v) {
  std::vector<int> perm(v.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return v[a] < v[b]; });
  return perm;
}

}  // namespace

Projected1D Projected1D::uniform(Eigen::VectorXd values) {
  if (values.size() == 0)
    throw ConstraintViolation("empty 1D measure");
  Projected1D m;
  m.sorted_perm = stable_order(values);
  m.weights = Eigen::VectorXd::Constant(values.size(), 1.0 / values.size());
  m.values = std::move(values);
  return m;
}

Projected1D Projected1D::weighted(Eigen::VectorXd values,
                                  Eigen::VectorXd weights) {
  if (values.size() == 0)
    throw ConstraintViolation("empty 1D measure");
  if (values.size() != weights.size())
    throw ConstraintViolation("values/weights length mismatch");
  if ((weights.array() < 0).any() ||
      std::abs(weights.sum() - 1.0) > 1e-12)
    throw ConstraintViolation("weights must be nonnegative and sum to 1");
  Projected1D m;
  m.sorted_perm = stable_order(values);
  m.values = std::move(values);
  m.weights = std::move(weights);
  return m;
}

bool Projected1D::is_uniform() const {
  const double w0 = 1.0 / size();
  return (weights.array() - w0).abs().maxCoeff() <= 1e-15;
}

double w1d_sorted(const Projected1D& x, const Projected1D& y, double p) {
  if (x.size() != y.size() || !x.is_uniform() || !y.is_uniform())
    return w1d_weighted(x, y, p);
  double acc = 0.0;
  const int n = x.size();
  for (int i = 0; i < n; ++i)
    acc += pow_cost(x.sorted_value(i) - y.sorted_value(i), p);
  return acc / n;
}

double w1d_weighted(const Projected1D& x, const Projected1D& y, double p) {
  // Walk the merged cumulative-weight breakpoints; on each segment both
  // quantile functions are constant.
  int ix = 0, iy = 0;
  double cx = x.sorted_weight(0), cy = y.sorted_weight(0);
  double u = 0.0, acc = 0.0;
  const int nx = x.size(), ny = y.size();
  while (u < 1.0 - 1e-15) {
    const double next = std::min({cx, cy, 1.0});
    acc += (next - u) * pow_cost(x.sorted_value(ix) - y.sorted_value(iy), p);
    u = next;
    while (ix + 1 < nx && cx <= u + 1e-15) cx += x.sorted_weight(++ix);
    while (iy + 1 < ny && cy <= u + 1e-15) cy += y.sorted_weight(++iy);
    if (ix == nx - 1) cx = 1.0;
    if (iy == ny - 1) cy = 1.0;
  }
  return acc;
}

namespace {

// Knots with strictly increasing positions; at tied atoms the cumulative
// weight of the last tie wins.
struct Knots {
  std::vector<double> pos;
  std::vector<double> cum;
};

Knots make_knots(const Projected1D& m) {
  Knots k;
  double c = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    c += m.sorted_weight(i);
    const double v = m.sorted_value(i);
    if (!k.pos.empty() && v == k.pos.back())
      k.cum.back() = c;
    else {
      k.pos.push_back(v);
      k.cum.push_back(c);
    }
  }
  k.cum.back() = 1.0;
  return k;
}

}  // namespace

double interp_cdf(const Projected1D& m, double t) {
  const Knots k = make_knots(m);
  if (t <= k.pos.front()) return k.cum.front();
  if (t >= k.pos.back()) return 1.0;
  const auto it = std::upper_bound(k.pos.begin(), k.pos.end(), t);
  const std::size_t j = it - k.pos.begin();  // pos[j-1] <= t < pos[j]
  const double frac = (t - k.pos[j - 1]) / (k.pos[j] - k.pos[j - 1]);
  return k.cum[j - 1] + frac * (k.cum[j] - k.cum[j - 1]);
}

double interp_quantile(const Projected1D& m, double u) {
  const Knots k = make_knots(m);
  if (u <= k.cum.front()) return k.pos.front();
  if (u >= 1.0) return k.pos.back();
  const auto it = std::lower_bound(k.cum.begin(), k.cum.end(), u);
  const std::size_t j = it - k.cum.begin();  // cum[j-1] < u <= cum[j]
  const double frac = (u - k.cum[j - 1]) / (k.cum[j] - k.cum[j - 1]);
  return k.pos[j - 1] + frac * (k.pos[j] - k.pos[j - 1]);
}

double potential_derivative(const Projected1D& mu, const Projected1D& nu,
                            double t) {
  return t - interp_quantile(nu, interp_cdf(mu, t));
}

}  // namespace hadsw
