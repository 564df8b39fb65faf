#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "hadsw/errors.hpp"
#include "hadsw/rng.hpp"

namespace hadsw {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Kind {
  kEuclidean,
  kMahalanobis,
  kLorentz,
  kPoincare,
  kSpdLogEuclidean,
  kSpdOnq,
  kSpdLogCholesky,
  kSpdAffineInvariant,
  kProduct,
};

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

/// Value description of a manifold; serializable, comparable, and the
/// factory input for make_manifold.
struct ManifoldDescriptor {
  Kind kind = Kind::kEuclidean;
  int dim = 0;            // intrinsic dimension parameter (see each kind)
  double curvature = -1;  // hyperbolic kinds, K < 0
  MatrixXd metric;        // mahalanobis: the SPD matrix A
  double onq_p = 1, onq_q = 1;
  std::vector<ManifoldDescriptor> components;  // product

  static ManifoldDescriptor euclidean(int dim);
  static ManifoldDescriptor mahalanobis(MatrixXd a);
  static ManifoldDescriptor lorentz(int dim, double curvature = -1.0);
  static ManifoldDescriptor poincare(int dim, double curvature = -1.0);
  static ManifoldDescriptor spd_log_euclidean(int dim);
  static ManifoldDescriptor spd_onq(int dim, double p, double q);
  static ManifoldDescriptor spd_log_cholesky(int dim);
  static ManifoldDescriptor spd_affine_invariant(int dim);
  static ManifoldDescriptor product(std::vector<ManifoldDescriptor> parts);

  bool operator==(const ManifoldDescriptor& other) const;
};

/// A Cartan-Hadamard manifold: geodesic distance, exp/log maps, direction
/// sampling, and the two coordinate projections on geodesics through the
/// origin. Points, tangent vectors, and directions are flat coordinate
/// vectors in the kind's ambient layout (SPD matrices row-major).
///
/// Directions are unit vectors of the tangent sphere at the origin in each
/// kind's convention (Poincare stores the ideal point). All operations are
/// pure; instances are immutable and safe to share across threads.
class Manifold {
 public:
  virtual ~Manifold() = default;

  const ManifoldDescriptor& descriptor() const { return desc_; }
  Kind kind() const { return desc_.kind; }

  /// Length of the flat coordinate vector of a point.
  virtual int ambient_dim() const = 0;
  /// Gaussian variates consumed per direction draw.
  virtual int tangent_dim() const = 0;

  virtual VectorXd origin() const = 0;

  virtual double dist(const VectorXd& x, const VectorXd& y) const = 0;
  virtual VectorXd exp_map(const VectorXd& x, const VectorXd& v) const = 0;
  virtual VectorXd log_map(const VectorXd& x, const VectorXd& y) const = 0;
  /// Riemannian inner product of tangent vectors u, w at x.
  virtual double inner(const VectorXd& x, const VectorXd& u,
                       const VectorXd& w) const = 0;

  /// Parallel transport of a tangent vector at the origin to x along the
  /// connecting geodesic.
  virtual VectorXd transport_from_origin(const VectorXd& x,
                                         const VectorXd& v) const = 0;

  /// Throws ConstraintViolation if x is not on the manifold.
  virtual void validate_point(const VectorXd& x) const = 0;
  /// Repairs small constraint drift (hyperboloid renormalization, SPD
  /// symmetrization); used after flow steps.
  virtual VectorXd project_to_manifold(const VectorXd& x) const {
    return x;
  }

  /// Linear isometry from R^{tangent_dim} onto tangent coordinates at the
  /// origin: ||chart(g)||_o = ||g||_2. Composed with normalization it
  /// yields the uniform direction distribution on S_o.
  virtual VectorXd direction_chart(const VectorXd& g) const = 0;
  /// Norm in which directions are normalized (metric norm at the origin in
  /// the direction representation).
  virtual double direction_norm(const VectorXd& v) const = 0;

  /// Linear isometry from orthonormal coordinates onto actual tangent
  /// vectors at the origin (Riemannian norm preserved); used for tangent
  /// Gaussians. Coincides with direction_chart except where the direction
  /// representation is not itself a tangent vector (Poincare ideal points).
  virtual VectorXd tangent_chart(const VectorXd& g) const {
    return direction_chart(g);
  }

  /// Point at parameter t on the unit-speed geodesic through the origin in
  /// direction v.
  virtual VectorXd geodesic_point(const VectorXd& v, double t) const = 0;

  virtual bool has_geodesic_coord() const { return true; }
  virtual double geodesic_coord(const VectorXd& v,
                                const VectorXd& x) const = 0;
  virtual double busemann_coord(const VectorXd& v,
                                const VectorXd& x) const = 0;

  virtual bool has_geodesic_grad() const { return true; }
  virtual bool has_busemann_grad() const { return true; }
  virtual VectorXd grad_geodesic_coord(const VectorXd& v,
                                       const VectorXd& x) const = 0;
  virtual VectorXd grad_busemann_coord(const VectorXd& v,
                                       const VectorXd& x) const = 0;

 protected:
  explicit Manifold(ManifoldDescriptor desc) : desc_(std::move(desc)) {}
  ManifoldDescriptor desc_;
};

std::shared_ptr<const Manifold> make_manifold(const ManifoldDescriptor& desc);

/// Uniform direction on the unit tangent sphere at the origin.
VectorXd sample_direction(const Manifold& m, RngStream& rng);

enum class Projection { kGeodesic, kHorospherical };

std::string projection_name(Projection p);
Projection projection_from_name(const std::string& name);

/// Coordinate of x under the chosen projection (geodesic coordinate or
/// Busemann function).
double project_coord(const Manifold& m, Projection proj, const VectorXd& v,
                     const VectorXd& x);
/// Riemannian gradient of project_coord in x.
VectorXd project_coord_grad(const Manifold& m, Projection proj,
                            const VectorXd& v, const VectorXd& x);
bool supports_projection(const Manifold& m, Projection proj);
bool supports_projection_grad(const Manifold& m, Projection proj);

/// Point on the geodesic closest (geodesic) or horospherically associated
/// (Busemann) to x: exp_o(c v) with c the coordinate.
VectorXd geodesic_project_point(const Manifold& m, Projection proj,
                                const VectorXd& v, const VectorXd& x);

// ---- Numeric oracles (validation references for every closed form) ----

/// Solves argmin_t d(exp_o(tv), x) by bracket expansion and bisection on
/// the derivative sign of the squared distance.
double numeric_geodesic_coord(const Manifold& m, const VectorXd& v,
                              const VectorXd& x);

/// Truncated Busemann limit: d(x, exp_o(t_max v)) - t_max.
double numeric_busemann(const Manifold& m, const VectorXd& v,
                        const VectorXd& x, double t_max);

/// A discrete measure: point cloud plus weights on one manifold.
struct DiscreteMeasure {
  std::shared_ptr<const Manifold> manifold;
  MatrixXd points;    // n x ambient_dim, one point per row
  VectorXd weights;   // nonnegative, sums to 1

  int size() const { return static_cast<int>(points.rows()); }
  bool is_uniform() const;
  void validate() const;

  static DiscreteMeasure uniform(std::shared_ptr<const Manifold> m,
                                 MatrixXd points);
  static DiscreteMeasure weighted(std::shared_ptr<const Manifold> m,
                                  MatrixXd points, VectorXd weights);
};

}  // namespace hadsw
