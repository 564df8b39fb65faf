#include "hadsw/hyperbolic.hpp"

#include <cmath>

#include "manifolds_impl.hpp"

namespace hadsw {

double minkowski_inner(const VectorXd& x, const VectorXd& y) {
  return -x[0] * y[0] + x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

VectorXd ball_to_lorentz_point(const VectorXd& x, double curvature) {
  const double c = -curvature;
  const double s = 1.0 - c * x.squaredNorm();
  if (!(s > 0)) throw ConstraintViolation("point outside the Poincare ball");
  VectorXd y(x.size() + 1);
  y[0] = (1.0 / std::sqrt(c)) * (2.0 / s - 1.0);
  y.tail(x.size()) = 2.0 * x / s;
  return y;
}

VectorXd lorentz_to_ball_point(const VectorXd& y, double curvature) {
  const double c = -curvature;
  return y.tail(y.size() - 1) / (1.0 + std::sqrt(c) * y[0]);
}

VectorXd ball_to_lorentz_tangent(const VectorXd& x, const VectorXd& dx,
                                 double curvature) {
  const double c = -curvature;
  const double s = 1.0 - c * x.squaredNorm();
  const double xd = x.dot(dx);
  VectorXd dy(x.size() + 1);
  dy[0] = 4.0 * std::sqrt(c) * xd / (s * s);
  dy.tail(x.size()) = 2.0 * dx / s + 4.0 * c * xd * x / (s * s);
  return dy;
}

VectorXd lorentz_to_ball_tangent(const VectorXd& y, const VectorXd& dy,
                                 double curvature) {
  const double c = -curvature;
  const double denom = 1.0 + std::sqrt(c) * y[0];
  return dy.tail(y.size() - 1) / denom -
         y.tail(y.size() - 1) * (std::sqrt(c) * dy[0] / (denom * denom));
}

namespace detail {

namespace {

class LorentzManifold final : public Manifold {
 public:
  explicit LorentzManifold(const ManifoldDescriptor& d)
      : Manifold(d),
        k_(d.curvature),
        sqrt_mk_(std::sqrt(-d.curvature)),
        radius_(1.0 / std::sqrt(-d.curvature)) {}

  int ambient_dim() const override { return desc_.dim + 1; }
  int tangent_dim() const override { return desc_.dim; }

  VectorXd origin() const override {
    VectorXd o = VectorXd::Zero(desc_.dim + 1);
    o[0] = radius_;
    return o;
  }

  double dist(const VectorXd& x, const VectorXd& y) const override {
    const double a = std::max(k_ * minkowski_inner(x, y), 1.0);
    return radius_ * std::acosh(a);
  }

  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    const double n2 = minkowski_inner(v, v);
    const double n = std::sqrt(std::max(n2, 0.0));
    if (n < 1e-12) return project_to_manifold(x + v);
    const double t = sqrt_mk_ * n;
    return project_to_manifold(std::cosh(t) * x +
                               (std::sinh(t) / (sqrt_mk_ * n)) * v);
  }

  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    const double d = dist(x, y);
    const VectorXd u = y - k_ * minkowski_inner(x, y) * x;
    const double un = std::sqrt(std::max(minkowski_inner(u, u), 0.0));
    if (un < 1e-12) return VectorXd::Zero(x.size());
    return (d / un) * u;
  }

  double inner(const VectorXd&, const VectorXd& u,
               const VectorXd& w) const override {
    return minkowski_inner(u, w);
  }

  VectorXd transport_from_origin(const VectorXd& x,
                                 const VectorXd& v) const override {
    const VectorXd o = origin();
    return v + (minkowski_inner(x, v) / (-1.0 / k_ - minkowski_inner(o, x))) *
                   (o + x);
  }

  void validate_point(const VectorXd& x) const override {
    if (x.size() != desc_.dim + 1 || !x.allFinite() || x[0] <= 0)
      throw ConstraintViolation("invalid lorentz point");
    const double q = minkowski_inner(x, x);
    const double tol = 1e-8 * std::max(1.0, std::abs(1.0 / k_));
    if (std::abs(q - 1.0 / k_) > tol * std::max(1.0, x.squaredNorm()))
      throw ConstraintViolation("point is off the hyperboloid");
  }

  VectorXd project_to_manifold(const VectorXd& x) const override {
    VectorXd out = x;
    out[0] = std::sqrt(x.tail(x.size() - 1).squaredNorm() - 1.0 / k_);
    return out;
  }

  VectorXd direction_chart(const VectorXd& g) const override {
    VectorXd v(g.size() + 1);
    v[0] = 0.0;
    v.tail(g.size()) = g;
    return v;
  }

  double direction_norm(const VectorXd& v) const override {
    return std::sqrt(std::max(minkowski_inner(v, v), 0.0));
  }

  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    const double s = sqrt_mk_ * t;
    return std::cosh(s) * origin() + (std::sinh(s) / sqrt_mk_) * v;
  }

  // With a = <x,v>_L and x0-component x[0]: P^v(x) = R artanh(a / x[0] / 1)
  // after simplifying -(1/sqrt(-K)) <x,v>/<x,x^0>.
  double geodesic_coord(const VectorXd& v, const VectorXd& x) const override {
    const double a = minkowski_inner(x, v);
    return radius_ * std::atanh(a / x[0]);
  }

  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    const double a = minkowski_inner(x, v);
    return radius_ * std::log(sqrt_mk_ * (x[0] - a));
  }

  VectorXd grad_geodesic_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    const double a = minkowski_inner(x, v);
    const double b = minkowski_inner(x, origin());
    return (b * v - a * origin()) / (a * a + k_ * b * b);
  }

  VectorXd grad_busemann_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    const VectorXd w = sqrt_mk_ * origin() + v;
    return radius_ * (w / minkowski_inner(x, w) - k_ * x);
  }

 private:
  double k_, sqrt_mk_, radius_;
};

VectorXd mobius_add(const VectorXd& x, const VectorXd& y, double c) {
  const double xy = x.dot(y);
  const double x2 = x.squaredNorm();
  const double y2 = y.squaredNorm();
  const double denom = 1.0 + 2.0 * c * xy + c * c * x2 * y2;
  return ((1.0 + 2.0 * c * xy + c * y2) * x + (1.0 - c * x2) * y) / denom;
}

class PoincareManifold final : public Manifold {
 public:
  explicit PoincareManifold(const ManifoldDescriptor& d)
      : Manifold(d),
        k_(d.curvature),
        c_(-d.curvature),
        sqrt_c_(std::sqrt(-d.curvature)),
        lorentz_(std::static_pointer_cast<const Manifold>(
            make_lorentz(ManifoldDescriptor::lorentz(d.dim, d.curvature)))) {}

  int ambient_dim() const override { return desc_.dim; }
  int tangent_dim() const override { return desc_.dim; }
  VectorXd origin() const override { return VectorXd::Zero(desc_.dim); }

  double dist(const VectorXd& x, const VectorXd& y) const override {
    const VectorXd m = mobius_add(-x, y, c_);
    return (2.0 / sqrt_c_) * std::atanh(std::min(sqrt_c_ * m.norm(), 1.0));
  }

  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    const double n = v.norm();
    if (n < 1e-15) return x;
    const double lam = 2.0 / (1.0 - c_ * x.squaredNorm());
    const VectorXd step =
        std::tanh(sqrt_c_ * lam * n / 2.0) * v / (sqrt_c_ * n);
    return mobius_add(x, step, c_);
  }

  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    const VectorXd m = mobius_add(-x, y, c_);
    const double mn = m.norm();
    if (mn < 1e-15) return VectorXd::Zero(x.size());
    const double lam = 2.0 / (1.0 - c_ * x.squaredNorm());
    return (2.0 / (sqrt_c_ * lam)) *
           std::atanh(std::min(sqrt_c_ * mn, 1.0)) * m / mn;
  }

  double inner(const VectorXd& x, const VectorXd& u,
               const VectorXd& w) const override {
    const double lam = 2.0 / (1.0 - c_ * x.squaredNorm());
    return lam * lam * u.dot(w);
  }

  VectorXd transport_from_origin(const VectorXd& x,
                                 const VectorXd& v) const override {
    const VectorXd y = ball_to_lorentz_point(x, k_);
    const VectorXd vl =
        ball_to_lorentz_tangent(VectorXd::Zero(desc_.dim), v, k_);
    return lorentz_to_ball_tangent(
        y, lorentz_->transport_from_origin(y, vl), k_);
  }

  void validate_point(const VectorXd& x) const override {
    if (x.size() != desc_.dim || !x.allFinite())
      throw ConstraintViolation("invalid poincare point");
    if (c_ * x.squaredNorm() >= 1.0)
      throw ConstraintViolation("point outside the Poincare ball");
  }

  VectorXd project_to_manifold(const VectorXd& x) const override {
    const double n = sqrt_c_ * x.norm();
    if (n < 1.0) return x;
    return x * ((1.0 - 1e-12) / n);
  }

  VectorXd direction_chart(const VectorXd& g) const override { return g; }
  double direction_norm(const VectorXd& v) const override { return v.norm(); }

  // The conformal factor at the origin is 2, so the Riemannian-orthonormal
  // tangent coordinates are half the Euclidean ones.
  VectorXd tangent_chart(const VectorXd& g) const override { return g / 2.0; }

  // Unit-speed geodesic from 0 toward the ideal point v / sqrt(c).
  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    return (std::tanh(sqrt_c_ * t / 2.0) / sqrt_c_) * v;
  }

  double geodesic_coord(const VectorXd& v, const VectorXd& x) const override {
    // s solves x's projection; written with the conjugate to stay stable as
    // <x,v> -> 0: s = 2<x,v> / (b + sqrt(b^2 + 4K<x,v>^2)).
    const double a = x.dot(v);
    const double b = 1.0 - k_ * x.squaredNorm();
    const double disc = std::sqrt(std::max(b * b + 4.0 * k_ * a * a, 0.0));
    const double s = 2.0 * a / (b + disc);
    return (2.0 / sqrt_c_) * std::atanh(sqrt_c_ * s);
  }

  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    const double num = (v - sqrt_c_ * x).squaredNorm();
    const double den = 1.0 + k_ * x.squaredNorm();
    return (1.0 / sqrt_c_) * std::log(num / den);
  }

  VectorXd grad_geodesic_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    return pullback_grad(v, x, Projection::kGeodesic);
  }

  VectorXd grad_busemann_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    if (k_ == -1.0) {
      const double f = (1.0 + k_ * x.squaredNorm()) / 2.0;
      const VectorXd egrad =
          2.0 * (x / (1.0 - x.squaredNorm()) - (v - x) / (v - x).squaredNorm());
      return f * f * egrad;
    }
    return pullback_grad(v, x, Projection::kHorospherical);
  }

 private:
  // Gradients transfer through the model isometry: push x and the direction
  // to the hyperboloid, take the gradient there, pull back the tangent.
  VectorXd pullback_grad(const VectorXd& v, const VectorXd& x,
                         Projection proj) const {
    const VectorXd y = ball_to_lorentz_point(x, k_);
    const VectorXd vl = lorentz_->direction_chart(v);
    const VectorXd gl = proj == Projection::kGeodesic
                            ? lorentz_->grad_geodesic_coord(vl, y)
                            : lorentz_->grad_busemann_coord(vl, y);
    return lorentz_to_ball_tangent(y, gl, k_);
  }

  double k_, c_, sqrt_c_;
  std::shared_ptr<const Manifold> lorentz_;
};

}  // namespace

std::shared_ptr<const Manifold> make_lorentz(const ManifoldDescriptor& d) {
  return std::make_shared<LorentzManifold>(d);
}

std::shared_ptr<const Manifold> make_poincare(const ManifoldDescriptor& d) {
  return std::make_shared<PoincareManifold>(d);
}

}  // namespace detail
}  // namespace hadsw
