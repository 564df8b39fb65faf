#include "hadsw/manifold.hpp"

#include <cmath>

#include "hadsw/linalg.hpp"
#include "manifolds_impl.hpp"

namespace hadsw {

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::kEuclidean: return "euclidean";
    case Kind::kMahalanobis: return "mahalanobis";
    case Kind::kLorentz: return "lorentz";
    case Kind::kPoincare: return "poincare";
    case Kind::kSpdLogEuclidean: return "spd_log_euclidean";
    case Kind::kSpdOnq: return "spd_onq";
    case Kind::kSpdLogCholesky: return "spd_log_cholesky";
    case Kind::kSpdAffineInvariant: return "spd_affine_invariant";
    case Kind::kProduct: return "product";
  }
  throw std::logic_error("unknown kind");
}

Kind kind_from_name(const std::string& name) {
  for (Kind k : {Kind::kEuclidean, Kind::kMahalanobis, Kind::kLorentz,
                 Kind::kPoincare, Kind::kSpdLogEuclidean, Kind::kSpdOnq,
                 Kind::kSpdLogCholesky, Kind::kSpdAffineInvariant,
                 Kind::kProduct})
    if (kind_name(k) == name) return k;
  throw ConstraintViolation("unknown manifold kind: " + name);
}

std::string projection_name(Projection p) {
  return p == Projection::kGeodesic ? "geodesic" : "horospherical";
}

Projection projection_from_name(const std::string& name) {
  if (name == "geodesic") return Projection::kGeodesic;
  if (name == "horospherical") return Projection::kHorospherical;
  throw ConstraintViolation("unknown projection: " + name);
}

namespace {
void check_dim(int dim) {
  if (dim < 1) throw ConstraintViolation("dimension must be positive");
}
}  // namespace

ManifoldDescriptor ManifoldDescriptor::euclidean(int dim) {
  check_dim(dim);
  ManifoldDescriptor d;
  d.kind = Kind::kEuclidean;
  d.dim = dim;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::mahalanobis(MatrixXd a) {
  check_spd(a);
  ManifoldDescriptor d;
  d.kind = Kind::kMahalanobis;
  d.dim = static_cast<int>(a.rows());
  d.metric = std::move(a);
  return d;
}

ManifoldDescriptor ManifoldDescriptor::lorentz(int dim, double curvature) {
  check_dim(dim);
  if (!(curvature < 0))
    throw ConstraintViolation("hyperbolic curvature must be negative");
  ManifoldDescriptor d;
  d.kind = Kind::kLorentz;
  d.dim = dim;
  d.curvature = curvature;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::poincare(int dim, double curvature) {
  ManifoldDescriptor d = lorentz(dim, curvature);
  d.kind = Kind::kPoincare;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::spd_log_euclidean(int dim) {
  check_dim(dim);
  ManifoldDescriptor d;
  d.kind = Kind::kSpdLogEuclidean;
  d.dim = dim;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::spd_onq(int dim, double p, double q) {
  check_dim(dim);
  if (!(p > 0) || !(q > 0))
    throw ConstraintViolation("spd_onq requires p > 0 and q > 0");
  ManifoldDescriptor d;
  d.kind = Kind::kSpdOnq;
  d.dim = dim;
  d.onq_p = p;
  d.onq_q = q;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::spd_log_cholesky(int dim) {
  check_dim(dim);
  ManifoldDescriptor d;
  d.kind = Kind::kSpdLogCholesky;
  d.dim = dim;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::spd_affine_invariant(int dim) {
  check_dim(dim);
  ManifoldDescriptor d;
  d.kind = Kind::kSpdAffineInvariant;
  d.dim = dim;
  return d;
}

ManifoldDescriptor ManifoldDescriptor::product(
    std::vector<ManifoldDescriptor> parts) {
  if (parts.size() < 2)
    throw ConstraintViolation("product manifold needs >= 2 components");
  ManifoldDescriptor d;
  d.kind = Kind::kProduct;
  d.components = std::move(parts);
  for (const auto& c : d.components) d.dim += c.dim;
  return d;
}

bool ManifoldDescriptor::operator==(const ManifoldDescriptor& other) const {
  if (kind != other.kind || dim != other.dim) return false;
  switch (kind) {
    case Kind::kLorentz:
    case Kind::kPoincare:
      return curvature == other.curvature;
    case Kind::kMahalanobis:
      return metric.rows() == other.metric.rows() && metric == other.metric;
    case Kind::kSpdOnq:
      return onq_p == other.onq_p && onq_q == other.onq_q;
    case Kind::kProduct:
      return components == other.components;
    default:
      return true;
  }
}

std::shared_ptr<const Manifold> make_manifold(const ManifoldDescriptor& d) {
  switch (d.kind) {
    case Kind::kEuclidean: return detail::make_euclidean(d);
    case Kind::kMahalanobis: return detail::make_mahalanobis(d);
    case Kind::kLorentz: return detail::make_lorentz(d);
    case Kind::kPoincare: return detail::make_poincare(d);
    case Kind::kSpdLogEuclidean:
    case Kind::kSpdOnq:
    case Kind::kSpdLogCholesky:
    case Kind::kSpdAffineInvariant:
      return detail::make_spd(d);
    case Kind::kProduct: return detail::make_product(d);
  }
  throw std::logic_error("unknown kind");
}

VectorXd sample_direction(const Manifold& m, RngStream& rng) {
  VectorXd g(m.tangent_dim());
  for (int i = 0; i < g.size(); ++i) g[i] = rng.gaussian();
  VectorXd v = m.direction_chart(g);
  const double n = m.direction_norm(v);
  if (!(n > 0)) throw NumericError("degenerate direction draw");
  return v / n;
}

bool supports_projection(const Manifold& m, Projection proj) {
  return proj == Projection::kHorospherical || m.has_geodesic_coord();
}

bool supports_projection_grad(const Manifold& m, Projection proj) {
  return proj == Projection::kGeodesic ? m.has_geodesic_grad()
                                       : m.has_busemann_grad();
}

double project_coord(const Manifold& m, Projection proj, const VectorXd& v,
                     const VectorXd& x) {
  return proj == Projection::kGeodesic ? m.geodesic_coord(v, x)
                                       : m.busemann_coord(v, x);
}

VectorXd project_coord_grad(const Manifold& m, Projection proj,
                            const VectorXd& v, const VectorXd& x) {
  return proj == Projection::kGeodesic ? m.grad_geodesic_coord(v, x)
                                       : m.grad_busemann_coord(v, x);
}

VectorXd geodesic_project_point(const Manifold& m, Projection proj,
                                const VectorXd& v, const VectorXd& x) {
  const double c = proj == Projection::kGeodesic ? m.geodesic_coord(v, x)
                                                 : -m.busemann_coord(v, x);
  return m.geodesic_point(v, c);
}

bool DiscreteMeasure::is_uniform() const {
  const double w0 = 1.0 / size();
  return (weights.array() - w0).abs().maxCoeff() <= 1e-15;
}

void DiscreteMeasure::validate() const {
  if (!manifold) throw ConstraintViolation("measure has no manifold");
  if (points.rows() == 0) throw ConstraintViolation("empty measure");
  if (points.cols() != manifold->ambient_dim())
    throw ConstraintViolation("point width does not match manifold");
  if (weights.size() != points.rows())
    throw ConstraintViolation("weights length mismatch");
  if ((weights.array() < 0).any() || std::abs(weights.sum() - 1.0) > 1e-12)
    throw ConstraintViolation("weights must be on the simplex");
  for (int i = 0; i < size(); ++i)
    manifold->validate_point(points.row(i).transpose());
}

DiscreteMeasure DiscreteMeasure::uniform(std::shared_ptr<const Manifold> m,
                                         MatrixXd pts) {
  DiscreteMeasure out;
  out.manifold = std::move(m);
  out.weights = VectorXd::Constant(pts.rows(), 1.0 / pts.rows());
  out.points = std::move(pts);
  out.validate();
  return out;
}

DiscreteMeasure DiscreteMeasure::weighted(std::shared_ptr<const Manifold> m,
                                          MatrixXd pts, VectorXd w) {
  DiscreteMeasure out;
  out.manifold = std::move(m);
  out.points = std::move(pts);
  out.weights = std::move(w);
  out.validate();
  return out;
}

}  // namespace hadsw
