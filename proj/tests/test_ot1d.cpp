#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hadsw/exact.hpp"
#include "hadsw/ot1d.hpp"
#include "hadsw/rng.hpp"

using namespace hadsw;

namespace {

Eigen::VectorXd random_values(int n, RngStream& rng, double scale = 2.0) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * rng.gaussian();
  return v;
}

Eigen::VectorXd random_simplex(int n, RngStream& rng) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = -std::log(1.0 - rng.uniform());
  return w / w.sum();
}

// Brute-force optimal assignment over all permutations (1D uniform W_p^p).
double brute_force_uniform(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           double p) {
  std::vector<int> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i)
      acc += std::pow(std::abs(x[i] - y[perm[i]]), p);
    best = std::min(best, acc / x.size());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("w1d_sorted equals brute-force assignment for uniform measures") {
  RngStream rng(17);
  for (double p : {1.0, 2.0, 3.0}) {
    for (int t = 0; t < 50; ++t) {
      const int n = 2 + static_cast<int>(rng.uniform() * 5);  // 2..6
      const auto x = Projected1D::uniform(random_values(n, rng));
      const auto y = Projected1D::uniform(random_values(n, rng));
      CHECK(w1d_sorted(x, y, p) ==
            doctest::Approx(brute_force_uniform(x.values, y.values, p))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("w1d_weighted equals the exact transport LP") {
  RngStream rng(23);
  for (double p : {1.0, 2.0}) {
    for (int t = 0; t < 100; ++t) {
      const int n = 1 + static_cast<int>(rng.uniform() * 7);
      const int m = 1 + static_cast<int>(rng.uniform() * 7);
      const auto wx = random_simplex(n, rng);
      const auto wy = random_simplex(m, rng);
      const auto x = Projected1D::weighted(random_values(n, rng), wx);
      const auto y = Projected1D::weighted(random_values(m, rng), wy);
      MatrixXd cost(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          cost(i, j) = std::pow(std::abs(x.values[i] - y.values[j]), p);
      const double lp = transport_cost(cost, wx, wy);
      CHECK(w1d_weighted(x, y, p) == doctest::Approx(lp).epsilon(1e-10));
    }
  }
}

TEST_CASE("w1d handles ties and mismatched counts") {
  const auto x = Projected1D::uniform((Eigen::VectorXd(4) << 0, 0, 1, 1).finished());
  const auto y = Projected1D::uniform((Eigen::VectorXd(2) << 0, 1).finished());
  CHECK(w1d_sorted(x, y, 2.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("interp_cdf and interp_quantile on a hand case") {
  // Atoms 0, 1 with weights 0.25, 0.75. CDF knots: (0, 0.25), (1, 1).
  // [DERIVED]
  const auto m = Projected1D::weighted(
      (Eigen::VectorXd(2) << 0, 1).finished(),
      (Eigen::VectorXd(2) << 0.25, 0.75).finished());
  CHECK(interp_cdf(m, -1.0) == doctest::Approx(0.25));   // clamped
  CHECK(interp_cdf(m, 0.0) == doctest::Approx(0.25));
  CHECK(interp_cdf(m, 0.5) == doctest::Approx(0.625));   // midpoint interp
  CHECK(interp_cdf(m, 2.0) == doctest::Approx(1.0));
  CHECK(interp_quantile(m, 0.25) == doctest::Approx(0.0));
  CHECK(interp_quantile(m, 0.625) == doctest::Approx(0.5));
  CHECK(interp_quantile(m, 1.0) == doctest::Approx(1.0));
  CHECK(interp_quantile(m, 0.0) == doctest::Approx(0.0));  // clamped
}

TEST_CASE("quantile inverts the cdf between the extreme atoms") {
  RngStream rng(29);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform() * 6);
    const auto m =
        Projected1D::weighted(random_values(n, rng), random_simplex(n, rng));
    for (int k = 0; k < 20; ++k) {
      const double span =
          m.values.maxCoeff() - m.values.minCoeff();
      const double t0 =
          m.values.minCoeff() + rng.uniform() * span;
      CHECK(interp_quantile(m, interp_cdf(m, t0)) ==
            doctest::Approx(t0).epsilon(1e-9));
    }
  }
}

TEST_CASE("potential derivative moves atoms onto the target quantiles") {
  // For uniform equal-count measures, x - psi'(x) evaluated at the i-th
  // sorted atom of mu lands exactly on the i-th sorted atom of nu.
  RngStream rng(37);
  for (int t = 0; t < 20; ++t) {
    const int n = 3 + static_cast<int>(rng.uniform() * 5);
    const auto mu = Projected1D::uniform(random_values(n, rng));
    const auto nu = Projected1D::uniform(random_values(n, rng));
    for (int i = 0; i < n; ++i) {
      const double x = mu.sorted_value(i);
      const double mapped = x - potential_derivative(mu, nu, x);
      CHECK(mapped == doctest::Approx(nu.sorted_value(i)).epsilon(1e-10));
    }
  }
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(Projected1D::uniform(Eigen::VectorXd()),
                  ConstraintViolation);
  CHECK_THROWS_AS(
      Projected1D::weighted((Eigen::VectorXd(2) << 0, 1).finished(),
                            (Eigen::VectorXd(2) << 0.4, 0.4).finished()),
      ConstraintViolation);
}
