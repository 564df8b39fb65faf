#include "hadsw/linalg.hpp"

#include <cmath>

namespace hadsw {

bool is_symmetric(const MatrixXd& x, double tol) {
  const double scale = std::max(1.0, x.norm());
  return (x - x.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

MatrixXd ensure_symmetric(const MatrixXd& x) {
  if (x.rows() != x.cols())
    throw ConstraintViolation("matrix is not square");
  if (!is_symmetric(x))
    throw ConstraintViolation("matrix asymmetry exceeds tolerance");
  return 0.5 * (x + x.transpose());
}

bool is_spd(const MatrixXd& x) {
  if (x.rows() != x.cols() || !is_symmetric(x)) return false;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (x + x.transpose()),
                                             Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return false;
  const double lmax = es.eigenvalues().maxCoeff();
  const double lmin = es.eigenvalues().minCoeff();
  return lmax > 0 && lmin > 1e-12 * lmax;
}

void check_spd(const MatrixXd& x) {
  if (!is_spd(x))
    throw ConstraintViolation("matrix is not symmetric positive definite");
}

EigenDecomp sym_eigen(const MatrixXd& x) {
  MatrixXd s = ensure_symmetric(x);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s);
  if (es.info() != Eigen::Success)
    throw NumericError("symmetric eigendecomposition did not converge");
  const Eigen::Index d = s.rows();
  EigenDecomp out;
  out.u.resize(d, d);
  out.lambda.resize(d);
  // Eigen sorts ascending; flip to descending.
  for (Eigen::Index i = 0; i < d; ++i) {
    out.lambda[i] = es.eigenvalues()[d - 1 - i];
    out.u.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  const double residual =
      (out.u * out.lambda.asDiagonal() * out.u.transpose() - s).norm();
  if (residual > 1e-8 * std::max(1.0, s.norm()))
    throw NumericError("eigendecomposition residual " +
                       std::to_string(residual));
  return out;
}

MatrixXd spd_log(const MatrixXd& x) {
  EigenDecomp e = sym_eigen(x);
  const double lmax = e.lambda.maxCoeff();
  // Loose relative floor: far-out geodesic points reach conditions near
  // 1e12 and their small eigenvalues are still accurate enough for a log.
  if (e.lambda.minCoeff() <= 1e-14 * std::max(lmax, 0.0))
    throw NumericError("matrix log: eigenvalue below positivity floor");
  VectorXd loglam = e.lambda.array().log();
  return e.u * loglam.asDiagonal() * e.u.transpose();
}

MatrixXd sym_exp(const MatrixXd& a) {
  EigenDecomp e = sym_eigen(a);
  VectorXd explam = e.lambda.array().exp();
  return e.u * explam.asDiagonal() * e.u.transpose();
}

MatrixXd cholesky_lower(const MatrixXd& x) {
  MatrixXd s = ensure_symmetric(x);
  Eigen::LLT<MatrixXd> llt(s);
  if (llt.info() != Eigen::Success)
    throw NumericError("Cholesky: matrix not positive definite");
  return llt.matrixL();
}

std::pair<MatrixXd, VectorXd> udu_unit_upper(const MatrixXd& m) {
  MatrixXd a = ensure_symmetric(m);
  const Eigen::Index n = a.rows();
  MatrixXd g = MatrixXd::Identity(n, n);
  VectorXd d(n);
  // Eliminate from the last row upward: at step j the trailing block has
  // already been reduced, pivot d[j] = a_jj, column j of g above it.
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    double pivot = a(j, j);
    if (!(pivot > 0))
      throw NumericError("UDU: non-positive pivot at row " +
                         std::to_string(j));
    d[j] = pivot;
    for (Eigen::Index i = 0; i < j; ++i) g(i, j) = a(i, j) / pivot;
    for (Eigen::Index i = 0; i < j; ++i)
      for (Eigen::Index k = 0; k <= i; ++k)
        a(k, i) -= g(k, j) * g(i, j) * pivot;
  }
  return {g, d};
}

MatrixXd loewner(const VectorXd& lambda) {
  const Eigen::Index d = lambda.size();
  if ((lambda.array() <= 0).any())
    throw ConstraintViolation("Loewner matrix requires positive eigenvalues");
  MatrixXd gamma(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    gamma(i, i) = 1.0 / lambda[i];
    for (Eigen::Index j = 0; j < i; ++j) {
      const double li = lambda[i], lj = lambda[j];
      const double diff = li - lj;
      double g;
      if (std::abs(diff) > kEigCloseThreshold * std::max(li, lj)) {
        g = std::log1p(diff / lj) / diff;
      } else {
        // Second-order expansion about lj, stable for close eigenvalues.
        const double r = diff / lj;
        g = (1.0 - r / 2.0 + r * r / 3.0) / lj;
      }
      gamma(i, j) = g;
      gamma(j, i) = g;
    }
  }
  return gamma;
}

namespace {

MatrixXd loewner_conjugate(const MatrixXd& x, const MatrixXd& v,
                           bool inverse) {
  EigenDecomp e = sym_eigen(x);
  const double lmax = e.lambda.maxCoeff();
  if (e.lambda.minCoeff() <= 1e-12 * std::max(lmax, 0.0))
    throw NumericError("log differential: eigenvalue below positivity floor");
  MatrixXd gamma = loewner(e.lambda);
  MatrixXd core = e.u.transpose() * ensure_symmetric(v) * e.u;
  if (inverse)
    core = core.cwiseQuotient(gamma);
  else
    core = core.cwiseProduct(gamma);
  return e.u * core * e.u.transpose();
}

}  // namespace

MatrixXd log_differential(const MatrixXd& x, const MatrixXd& v) {
  return loewner_conjugate(x, v, /*inverse=*/false);
}

MatrixXd log_differential_inverse(const MatrixXd& x, const MatrixXd& w) {
  return loewner_conjugate(x, w, /*inverse=*/true);
}

MatrixXd spd_sqrt(const MatrixXd& x) {
  EigenDecomp e = sym_eigen(x);
  if (e.lambda.minCoeff() <= 0)
    throw NumericError("matrix sqrt: non-positive eigenvalue");
  VectorXd s = e.lambda.array().sqrt();
  return e.u * s.asDiagonal() * e.u.transpose();
}

MatrixXd spd_inv_sqrt(const MatrixXd& x) {
  EigenDecomp e = sym_eigen(x);
  if (e.lambda.minCoeff() <= 0)
    throw NumericError("matrix inverse sqrt: non-positive eigenvalue");
  VectorXd s = e.lambda.array().sqrt().inverse();
  return e.u * s.asDiagonal() * e.u.transpose();
}

}  // namespace hadsw
