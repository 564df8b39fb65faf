#include <cmath>

#include "hadsw/linalg.hpp"
#include "manifolds_impl.hpp"

namespace hadsw::detail {

namespace {

class EuclideanManifold final : public Manifold {
 public:
  explicit EuclideanManifold(const ManifoldDescriptor& d) : Manifold(d) {}

  int ambient_dim() const override { return desc_.dim; }
  int tangent_dim() const override { return desc_.dim; }
  VectorXd origin() const override { return VectorXd::Zero(desc_.dim); }

  double dist(const VectorXd& x, const VectorXd& y) const override {
    return (x - y).norm();
  }
  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    return x + v;
  }
  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    return y - x;
  }
  double inner(const VectorXd&, const VectorXd& u,
               const VectorXd& w) const override {
    return u.dot(w);
  }
  VectorXd transport_from_origin(const VectorXd&,
                                 const VectorXd& v) const override {
    return v;
  }
  void validate_point(const VectorXd& x) const override {
    if (x.size() != desc_.dim || !x.allFinite())
      throw ConstraintViolation("invalid euclidean point");
  }

  VectorXd direction_chart(const VectorXd& g) const override { return g; }
  double direction_norm(const VectorXd& v) const override { return v.norm(); }

  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    return t * v;
  }
  double geodesic_coord(const VectorXd& v, const VectorXd& x) const override {
    return x.dot(v);
  }
  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    return -x.dot(v);
  }
  VectorXd grad_geodesic_coord(const VectorXd& v,
                               const VectorXd&) const override {
    return v;
  }
  VectorXd grad_busemann_coord(const VectorXd& v,
                               const VectorXd&) const override {
    return -v;
  }
};

// Pullback of the Euclidean metric through phi(x) = A^{1/2} x.
class MahalanobisManifold final : public Manifold {
 public:
  explicit MahalanobisManifold(const ManifoldDescriptor& d)
      : Manifold(d),
        a_(d.metric),
        a_sqrt_(spd_sqrt(d.metric)),
        a_inv_sqrt_(spd_inv_sqrt(d.metric)) {}

  int ambient_dim() const override { return desc_.dim; }
  int tangent_dim() const override { return desc_.dim; }
  VectorXd origin() const override { return VectorXd::Zero(desc_.dim); }

  double dist(const VectorXd& x, const VectorXd& y) const override {
    const VectorXd diff = x - y;
    return std::sqrt(diff.dot(a_ * diff));
  }
  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    return x + v;
  }
  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    return y - x;
  }
  double inner(const VectorXd&, const VectorXd& u,
               const VectorXd& w) const override {
    return u.dot(a_ * w);
  }
  VectorXd transport_from_origin(const VectorXd&,
                                 const VectorXd& v) const override {
    return v;
  }
  void validate_point(const VectorXd& x) const override {
    if (x.size() != desc_.dim || !x.allFinite())
      throw ConstraintViolation("invalid mahalanobis point");
  }

  VectorXd direction_chart(const VectorXd& g) const override {
    return a_inv_sqrt_ * g;
  }
  double direction_norm(const VectorXd& v) const override {
    return std::sqrt(v.dot(a_ * v));
  }

  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    return t * v;
  }
  double geodesic_coord(const VectorXd& v, const VectorXd& x) const override {
    return x.dot(a_ * v);
  }
  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    return -geodesic_coord(v, x);
  }
  VectorXd grad_geodesic_coord(const VectorXd& v,
                               const VectorXd&) const override {
    return v;
  }
  VectorXd grad_busemann_coord(const VectorXd& v,
                               const VectorXd&) const override {
    return -v;
  }

 private:
  MatrixXd a_, a_sqrt_, a_inv_sqrt_;
};

}  // namespace

std::shared_ptr<const Manifold> make_euclidean(const ManifoldDescriptor& d) {
  return std::make_shared<EuclideanManifold>(d);
}

std::shared_ptr<const Manifold> make_mahalanobis(const ManifoldDescriptor& d) {
  return std::make_shared<MahalanobisManifold>(d);
}

}  // namespace hadsw::detail
