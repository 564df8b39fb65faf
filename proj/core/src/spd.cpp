#include "hadsw/spd.hpp"

#include <cmath>

#include "hadsw/linalg.hpp"
#include "manifolds_impl.hpp"

namespace hadsw {

MatrixXd spd_from_flat(const VectorXd& x, int d) {
  if (x.size() != static_cast<long>(d) * d)
    throw ConstraintViolation("flat SPD vector has wrong length");
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                        Eigen::Dynamic, Eigen::RowMajor>>(
      x.data(), d, d);
}

VectorXd spd_to_flat(const MatrixXd& x) {
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      rm = x;
  return Eigen::Map<const VectorXd>(rm.data(), rm.size());
}

VectorXd sym_embed(const MatrixXd& a) {
  const int d = static_cast<int>(a.rows());
  VectorXd g(d * (d + 1) / 2);
  int k = 0;
  for (int i = 0; i < d; ++i) g[k++] = a(i, i);
  const double s = std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) g[k++] = s * a(i, j);
  return g;
}

MatrixXd sym_unembed(const VectorXd& g, int d) {
  if (g.size() != d * (d + 1) / 2)
    throw ConstraintViolation("embedded symmetric vector has wrong length");
  MatrixXd a(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i) a(i, i) = g[k++];
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      a(i, j) = s * g[k];
      a(j, i) = s * g[k];
      ++k;
    }
  return a;
}

MatrixXd onq_f(const MatrixXd& a, double p, double q) {
  const double d = static_cast<double>(a.rows());
  MatrixXd out = q * a;
  out.diagonal().array() += (p - q) / d * a.trace();
  return out;
}

MatrixXd onq_f_inverse(const MatrixXd& b, double p, double q) {
  const double d = static_cast<double>(b.rows());
  MatrixXd out = b;
  out.diagonal().array() -= (p - q) / d * (b.trace() / p);
  return out / q;
}

namespace {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

MatrixXld spd_inv_sqrt_ld(const MatrixXld& x) {
  Eigen::SelfAdjointEigenSolver<MatrixXld> es(x);
  if (es.info() != Eigen::Success)
    throw NumericError("long-double eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0)
    throw ConstraintViolation("matrix is not positive definite");
  const auto lam = es.eigenvalues().array();
  return es.eigenvectors() *
         lam.rsqrt().matrix().asDiagonal() *
         es.eigenvectors().transpose();
}

}  // namespace

double ai_distance(const MatrixXd& x, const MatrixXd& y) {
  const MatrixXld xl = x.cast<long double>();
  const MatrixXld yl = y.cast<long double>();
  const MatrixXld r = spd_inv_sqrt_ld((xl + xl.transpose()) / 2.0L);
  MatrixXld s = r * yl * r;
  s = (s + s.transpose()) / 2.0L;
  Eigen::SelfAdjointEigenSolver<MatrixXld> es(s);
  if (es.info() != Eigen::Success)
    throw NumericError("long-double eigendecomposition failed");
  if (es.eigenvalues().minCoeff() <= 0)
    throw ConstraintViolation("matrix is not positive definite");
  long double acc = 0.0L;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const long double l = std::log(es.eigenvalues()[i]);
    acc += l * l;
  }
  return static_cast<double>(std::sqrt(acc));
}

namespace detail {

namespace {

MatrixXd strict_lower(const MatrixXd& m) {
  return m.triangularView<Eigen::StrictlyLower>();
}

// (M)_half = strict lower of M plus half its diagonal.
MatrixXd half_lower(const MatrixXd& m) {
  MatrixXd out = strict_lower(m);
  out.diagonal() = 0.5 * m.diagonal();
  return out;
}

/// Common machinery for the SPD kinds. Points cross the interface as
/// row-major flat vectors; subclasses work on matrices.
class SpdBase : public Manifold {
 public:
  explicit SpdBase(const ManifoldDescriptor& d) : Manifold(d), n_(d.dim) {}

  int ambient_dim() const override { return n_ * n_; }
  int tangent_dim() const override { return n_ * (n_ + 1) / 2; }
  VectorXd origin() const override {
    return spd_to_flat(MatrixXd::Identity(n_, n_));
  }

  void validate_point(const VectorXd& x) const override {
    if (x.size() != static_cast<long>(n_) * n_ || !x.allFinite())
      throw ConstraintViolation("invalid SPD point");
    const MatrixXd m = spd_from_flat(x, n_);
    if (!is_spd(m)) throw ConstraintViolation("matrix is not SPD");
  }

  VectorXd project_to_manifold(const VectorXd& x) const override {
    const MatrixXd m = spd_from_flat(x, n_);
    return spd_to_flat((m + m.transpose()) / 2.0);
  }

 protected:
  int n_;
};

/// Pullback-Euclidean SPD metric: phi maps SPD matrices to a Euclidean space
/// of symmetric (or lower-triangular) matrices. Distance, exp/log, and both
/// projections with their gradients all reduce to phi and its differential.
class SpdPullback : public SpdBase {
 public:
  using SpdBase::SpdBase;

  double dist(const VectorXd& x, const VectorXd& y) const override {
    return (phi(spd_from_flat(x, n_)) - phi(spd_from_flat(y, n_))).norm();
  }

  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    const MatrixXd xm = spd_from_flat(x, n_);
    const MatrixXd vm = ensure_symmetric(spd_from_flat(v, n_));
    return spd_to_flat(phi_inverse(phi(xm) + phi_diff(xm, vm)));
  }

  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    const MatrixXd xm = spd_from_flat(x, n_);
    const MatrixXd ym = spd_from_flat(y, n_);
    return spd_to_flat(phi_diff_inverse(xm, phi(ym) - phi(xm)));
  }

  double inner(const VectorXd& x, const VectorXd& u,
               const VectorXd& w) const override {
    const MatrixXd xm = spd_from_flat(x, n_);
    return phi_diff(xm, ensure_symmetric(spd_from_flat(u, n_)))
        .cwiseProduct(phi_diff(xm, ensure_symmetric(spd_from_flat(w, n_))))
        .sum();
  }

  double direction_norm(const VectorXd& v) const override {
    return phi_diff(MatrixXd::Identity(n_, n_),
                    ensure_symmetric(spd_from_flat(v, n_)))
        .norm();
  }

  // Pullback-Euclidean transport is translation in phi coordinates.
  VectorXd transport_from_origin(const VectorXd& x,
                                 const VectorXd& v) const override {
    const MatrixXd vm = ensure_symmetric(spd_from_flat(v, n_));
    return spd_to_flat(phi_diff_inverse(
        spd_from_flat(x, n_), phi_diff(MatrixXd::Identity(n_, n_), vm)));
  }

  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    const MatrixXd a =
        phi_diff(MatrixXd::Identity(n_, n_),
                 ensure_symmetric(spd_from_flat(v, n_)));
    return spd_to_flat(phi_inverse(t * a));
  }

  double geodesic_coord(const VectorXd& v, const VectorXd& x) const override {
    const MatrixXd a =
        phi_diff(MatrixXd::Identity(n_, n_),
                 ensure_symmetric(spd_from_flat(v, n_)));
    return phi(spd_from_flat(x, n_)).cwiseProduct(a).sum();
  }

  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    return -geodesic_coord(v, x);
  }

  VectorXd grad_geodesic_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    const MatrixXd a =
        phi_diff(MatrixXd::Identity(n_, n_),
                 ensure_symmetric(spd_from_flat(v, n_)));
    return spd_to_flat(phi_diff_inverse(spd_from_flat(x, n_), a));
  }

  VectorXd grad_busemann_coord(const VectorXd& v,
                               const VectorXd& x) const override {
    return -grad_geodesic_coord(v, x);
  }

 protected:
  /// phi maps SPD(d) into a Euclidean space represented as a matrix with the
  /// Frobenius inner product.
  virtual MatrixXd phi(const MatrixXd& x) const = 0;
  virtual MatrixXd phi_inverse(const MatrixXd& z) const = 0;
  /// Differential of phi at x applied to symmetric v, and its inverse.
  virtual MatrixXd phi_diff(const MatrixXd& x, const MatrixXd& v) const = 0;
  virtual MatrixXd phi_diff_inverse(const MatrixXd& x,
                                    const MatrixXd& w) const = 0;
};

class SpdLogEuclidean final : public SpdPullback {
 public:
  using SpdPullback::SpdPullback;

  VectorXd direction_chart(const VectorXd& g) const override {
    return spd_to_flat(sym_unembed(g, n_));
  }

 protected:
  MatrixXd phi(const MatrixXd& x) const override { return spd_log(x); }
  MatrixXd phi_inverse(const MatrixXd& z) const override {
    return sym_exp(ensure_symmetric(z));
  }
  MatrixXd phi_diff(const MatrixXd& x, const MatrixXd& v) const override {
    return log_differential(x, v);
  }
  MatrixXd phi_diff_inverse(const MatrixXd& x,
                            const MatrixXd& w) const override {
    return log_differential_inverse(x, w);
  }
};

class SpdOnq final : public SpdPullback {
 public:
  explicit SpdOnq(const ManifoldDescriptor& d)
      : SpdPullback(d), p_(d.onq_p), q_(d.onq_q) {}

  VectorXd direction_chart(const VectorXd& g) const override {
    return spd_to_flat(onq_f_inverse(sym_unembed(g, n_), p_, q_));
  }

 protected:
  MatrixXd phi(const MatrixXd& x) const override {
    return onq_f(spd_log(x), p_, q_);
  }
  MatrixXd phi_inverse(const MatrixXd& z) const override {
    return sym_exp(onq_f_inverse(ensure_symmetric(z), p_, q_));
  }
  MatrixXd phi_diff(const MatrixXd& x, const MatrixXd& v) const override {
    return onq_f(log_differential(x, v), p_, q_);
  }
  MatrixXd phi_diff_inverse(const MatrixXd& x,
                            const MatrixXd& w) const override {
    return log_differential_inverse(x, onq_f_inverse(w, p_, q_));
  }

 private:
  double p_, q_;
};

class SpdLogCholesky final : public SpdPullback {
 public:
  using SpdPullback::SpdPullback;

  VectorXd direction_chart(const VectorXd& g) const override {
    // Fill a lower-triangular W from g (diagonal first, then the strict
    // lower triangle row-major); the matching symmetric direction is the
    // one whose Cholesky-space image is W.
    MatrixXd w = MatrixXd::Zero(n_, n_);
    int k = 0;
    for (int i = 0; i < n_; ++i) w(i, i) = g[k++];
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < i; ++j) w(i, j) = g[k++];
    MatrixXd a = w + w.transpose();
    return spd_to_flat(a);
  }

 protected:
  MatrixXd phi(const MatrixXd& x) const override {
    const MatrixXd l = cholesky_lower(x);
    MatrixXd z = strict_lower(l);
    z.diagonal() = l.diagonal().array().log();
    return z;
  }

  MatrixXd phi_inverse(const MatrixXd& z) const override {
    MatrixXd l = strict_lower(z);
    l.diagonal() = z.diagonal().array().exp();
    return l * l.transpose();
  }

  MatrixXd phi_diff(const MatrixXd& x, const MatrixXd& v) const override {
    const MatrixXd l = cholesky_lower(x);
    const auto lt = l.triangularView<Eigen::Lower>();
    const MatrixXd inner = lt.solve(
        lt.solve(v).transpose().eval());  // L^{-1} V L^{-T}
    const MatrixXd w = l * half_lower(ensure_symmetric(inner));
    MatrixXd out = strict_lower(w);
    out.diagonal() = w.diagonal().cwiseQuotient(l.diagonal());
    return out;
  }

  MatrixXd phi_diff_inverse(const MatrixXd& x,
                            const MatrixXd& z) const override {
    const MatrixXd l = cholesky_lower(x);
    MatrixXd w = strict_lower(z);
    w.diagonal() = z.diagonal().cwiseProduct(l.diagonal());
    const MatrixXd mh = l.triangularView<Eigen::Lower>().solve(w);
    const MatrixXd m = mh + mh.transpose();
    return l * m * l.transpose();
  }
};

class SpdAffineInvariant final : public SpdBase {
 public:
  using SpdBase::SpdBase;

  double dist(const VectorXd& x, const VectorXd& y) const override {
    return ai_distance(spd_from_flat(x, n_), spd_from_flat(y, n_));
  }

  VectorXd exp_map(const VectorXd& x, const VectorXd& v) const override {
    const MatrixXd xm = spd_from_flat(x, n_);
    const MatrixXd r = spd_sqrt(xm);
    const MatrixXd ri = spd_inv_sqrt(xm);
    const MatrixXd inner = ensure_symmetric(
        ri * ensure_symmetric(spd_from_flat(v, n_)) * ri);
    return spd_to_flat(ensure_symmetric(r * sym_exp(inner) * r));
  }

  VectorXd log_map(const VectorXd& x, const VectorXd& y) const override {
    const MatrixXd xm = spd_from_flat(x, n_);
    const MatrixXd r = spd_sqrt(xm);
    const MatrixXd ri = spd_inv_sqrt(xm);
    const MatrixXd inner =
        ensure_symmetric(ri * spd_from_flat(y, n_) * ri);
    return spd_to_flat(ensure_symmetric(r * spd_log(inner) * r));
  }

  double inner(const VectorXd& x, const VectorXd& u,
               const VectorXd& w) const override {
    const MatrixXd xi = spd_from_flat(x, n_).inverse();
    return (xi * ensure_symmetric(spd_from_flat(u, n_)) * xi *
            ensure_symmetric(spd_from_flat(w, n_)))
        .trace();
  }

  VectorXd direction_chart(const VectorXd& g) const override {
    return spd_to_flat(sym_unembed(g, n_));
  }

  double direction_norm(const VectorXd& v) const override {
    return ensure_symmetric(spd_from_flat(v, n_)).norm();
  }

  VectorXd transport_from_origin(const VectorXd& x,
                                 const VectorXd& v) const override {
    const MatrixXd r = spd_sqrt(spd_from_flat(x, n_));
    return spd_to_flat(
        ensure_symmetric(r * ensure_symmetric(spd_from_flat(v, n_)) * r));
  }

  VectorXd geodesic_point(const VectorXd& v, double t) const override {
    return spd_to_flat(
        sym_exp(t * ensure_symmetric(spd_from_flat(v, n_))));
  }

  bool has_geodesic_coord() const override { return false; }
  bool has_geodesic_grad() const override { return false; }
  bool has_busemann_grad() const override { return false; }

  double geodesic_coord(const VectorXd&, const VectorXd&) const override {
    throw UnsupportedOperation(
        "affine-invariant metric has no closed-form geodesic projection");
  }

  // Busemann function of the geodesic ray exp(t A), A with distinct
  // eigenvalues: rotate into the eigenbasis of A (eigenvalues strictly
  // decreasing), factor the rotated point as g diag(d) g^T with g
  // unit-upper-triangular, and contract the eigenvalues against log d.
  double busemann_coord(const VectorXd& v, const VectorXd& x) const override {
    const MatrixXd a = ensure_symmetric(spd_from_flat(v, n_));
    const EigenDecomp ed = sym_eigen(a);
    const double scale = ed.lambda.cwiseAbs().maxCoeff();
    for (int i = 0; i + 1 < n_; ++i)
      if (ed.lambda[i] - ed.lambda[i + 1] <= 1e-8 * std::max(scale, 1.0))
        throw UnsupportedOperation(
            "affine-invariant Busemann needs a direction with distinct "
            "eigenvalues");
    const MatrixXd xt =
        ensure_symmetric(ed.u.transpose() * spd_from_flat(x, n_) * ed.u);
    const auto [g, dvec] = udu_unit_upper(xt);
    (void)g;
    return -ed.lambda.dot(dvec.array().log().matrix());
  }

  VectorXd grad_geodesic_coord(const VectorXd&, const VectorXd&) const override {
    throw UnsupportedOperation("no affine-invariant projection gradient");
  }
  VectorXd grad_busemann_coord(const VectorXd&, const VectorXd&) const override {
    throw UnsupportedOperation("no affine-invariant Busemann gradient");
  }
};

}  // namespace

std::shared_ptr<const Manifold> make_spd(const ManifoldDescriptor& d) {
  switch (d.kind) {
    case Kind::kSpdLogEuclidean:
      return std::make_shared<SpdLogEuclidean>(d);
    case Kind::kSpdOnq:
      return std::make_shared<SpdOnq>(d);
    case Kind::kSpdLogCholesky:
      return std::make_shared<SpdLogCholesky>(d);
    case Kind::kSpdAffineInvariant:
      return std::make_shared<SpdAffineInvariant>(d);
    default:
      throw std::logic_error("not an SPD kind");
  }
}

}  // namespace detail
}  // namespace hadsw
