#include <cmath>
#include <vector>

#include "manifolds_impl.hpp"

namespace hadsw::detail {

namespace {

/// Product of Hadamard manifolds with the l2-combined metric. Points and
/// tangents are concatenations of the component ambient vectors; direction
/// draws are joint Gaussians across components normalized in the product
/// norm, so a direction carries per-component speeds lambda_i.
class ProductManifold final : public Manifold {
 public:
  explicit ProductManifold(const ManifoldDescriptor& d) : Manifold(d) {
    int aoff = 0, toff = 0;
    for (const auto& c : d.components) {
      parts_.push_back(make_manifold(c));
      aoff_.push_back(aoff);
      toff_.push_back(toff);
      aoff += parts_.back()->ambient_dim();
      toff += parts_.back()->tangent_dim();
    }
    ambient_ = aoff;
    tangent_ = toff;
  }

  int ambient_dim() const override { return ambient_; }
  int tangent_dim() const override { return tangent_; }

  VectorXd origin() const override {
    VectorXd o(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(o, i) = parts_[i]->origin();
    return o;
  }

  double dist(const VectorXd& x, const VectorXd& y) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const double di = parts_[i]->dist(cblock(x, i), cblock(y, i));
      acc += di * di;
    }
    return std::sqrt(acc);
  }

  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    VectorXd out(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(out, i) = parts_[i]->exp_map(cblock(x, i), cblock(v, i));
    return out;
  }

  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    VectorXd out(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(out, i) = parts_[i]->log_map(cblock(x, i), cblock(y, i));
    return out;
  }

  double inner(const VectorXd& x, const VectorXd& u,
               const VectorXd& w) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i)
      acc += parts_[i]->inner(cblock(x, i), cblock(u, i), cblock(w, i));
    return acc;
  }

  VectorXd transport_from_origin(const VectorXd& x,
                                 const VectorXd& v) const override {
    VectorXd out(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(out, i) =
          parts_[i]->transport_from_origin(cblock(x, i), cblock(v, i));
    return out;
  }

  void validate_point(const VectorXd& x) const override {
    if (x.size() != ambient_)
      throw ConstraintViolation("invalid product point length");
    for (std::size_t i = 0; i < parts_.size(); ++i)
      parts_[i]->validate_point(cblock(x, i));
  }

  VectorXd project_to_manifold(const VectorXd& x) const override {
    VectorXd out(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(out, i) = parts_[i]->project_to_manifold(cblock(x, i));
    return out;
  }

  VectorXd direction_chart(const VectorXd& g) const override {
    VectorXd v(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(v, i) = parts_[i]->direction_chart(
          g.segment(toff_[i], parts_[i]->tangent_dim()));
    return v;
  }

  VectorXd tangent_chart(const VectorXd& g) const override {
    VectorXd v(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i)
      block(v, i) = parts_[i]->tangent_chart(
          g.segment(toff_[i], parts_[i]->tangent_dim()));
    return v;
  }

  double direction_norm(const VectorXd& v) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const double ni = parts_[i]->direction_norm(cblock(v, i));
      acc += ni * ni;
    }
    return std::sqrt(acc);
  }

  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    VectorXd out(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const double lam = parts_[i]->direction_norm(cblock(v, i));
      block(out, i) = lam < kZeroSpeed
                          ? parts_[i]->origin()
                          : parts_[i]->geodesic_point(
                                cblock(v, i) / lam, lam * t);
    }
    return out;
  }

  bool has_geodesic_grad() const override { return false; }
  bool has_busemann_grad() const override {
    for (const auto& p : parts_)
      if (!p->has_busemann_grad()) return false;
    return true;
  }

  // No closed form; falls back to the bracketing line search along the
  // product geodesic.
  double geodesic_coord(const VectorXd& v, const VectorXd& x) const override {
    return numeric_geodesic_coord(*this, v, x);
  }

  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    double acc = 0.0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const double lam = parts_[i]->direction_norm(cblock(v, i));
      if (lam < kZeroSpeed) continue;
      acc += lam * parts_[i]->busemann_coord(cblock(v, i) / lam, cblock(x, i));
    }
    return acc;
  }

  VectorXd grad_geodesic_coord(const VectorXd&, const VectorXd&) const override {
    throw UnsupportedOperation(
        "product geodesic projection has no closed-form gradient");
  }

  VectorXd grad_busemann_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    VectorXd out = VectorXd::Zero(ambient_);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      const double lam = parts_[i]->direction_norm(cblock(v, i));
      if (lam < kZeroSpeed) continue;
      block(out, i) = lam * parts_[i]->grad_busemann_coord(cblock(v, i) / lam,
                                                           cblock(x, i));
    }
    return out;
  }

 private:
  static constexpr double kZeroSpeed = 1e-12;

  Eigen::VectorBlock<VectorXd> block(VectorXd& x, std::size_t i) const {
    return x.segment(aoff_[i], parts_[i]->ambient_dim());
  }
  Eigen::VectorBlock<const VectorXd> cblock(const VectorXd& x,
                                            std::size_t i) const {
    return x.segment(aoff_[i], parts_[i]->ambient_dim());
  }

  std::vector<std::shared_ptr<const Manifold>> parts_;
  std::vector<int> aoff_, toff_;
  int ambient_ = 0, tangent_ = 0;
};

}  // namespace

std::shared_ptr<const Manifold> make_product(const ManifoldDescriptor& d) {
  return std::make_shared<ProductManifold>(d);
}

}  // namespace hadsw::detail
