#include "hadsw/exact.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace hadsw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double assignment_cost(const MatrixXd& cost) {
  // Jonker-Volgenant: add columns one at a time, each via a shortest
  // augmenting path maintained with dual potentials.
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw ConstraintViolation("cost matrix must be square");
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match_col(n + 1, n);  // row matched to each column; n = free
  for (int i = 0; i < n; ++i) {
    int j_cur = n;
    match_col[n] = i;
    std::vector<double> min_to(n + 1, kInf);
    std::vector<int> prev(n + 1, -1);
    std::vector<char> used(n + 1, 0);
    do {
      used[j_cur] = 1;
      const int row = match_col[j_cur];
      double delta = kInf;
      int j_next = -1;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double cur = cost(row, j) - u[row] - v[j];
        if (cur < min_to[j]) {
          min_to[j] = cur;
          prev[j] = j_cur;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j_next = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match_col[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j_cur = j_next;
    } while (match_col[j_cur] != n);
    while (j_cur != n) {
      const int j_prev = prev[j_cur];
      match_col[j_cur] = match_col[j_prev];
      j_cur = j_prev;
    }
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += cost(match_col[j], j);
  return total;
}

double transport_cost(const MatrixXd& cost, const VectorXd& a,
                      const VectorXd& b) {
  const int n = static_cast<int>(cost.rows());
  const int m = static_cast<int>(cost.cols());
  if (a.size() != n || b.size() != m)
    throw ConstraintViolation("marginal sizes do not match cost matrix");
  if ((a.array() < 0).any() || (b.array() < 0).any() ||
      std::abs(a.sum() - b.sum()) > 1e-12)
    throw ConstraintViolation("marginals must be nonnegative with equal mass");

  // Successive shortest augmenting paths on the residual bipartite graph,
  // with Johnson potentials so every Dijkstra search sees nonnegative
  // reduced costs (and its parent tree is therefore acyclic). Nodes: rows
  // 0..n-1, columns n..n+m-1. Forward arcs row->col carry unlimited
  // capacity at cost(i,j); residual backward arcs carry the current plan
  // at -cost(i,j).
  MatrixXd plan = MatrixXd::Zero(n, m);
  VectorXd ra = a, rb = b;
  const int nodes = n + m;

  // Initial potentials: with zero flow only forward one-hop arcs exist, so
  // pi[col] = min over rows of cost makes all reduced costs nonnegative
  // even for negative cost entries.
  std::vector<double> pi(nodes, 0.0);
  for (int j = 0; j < m; ++j) pi[n + j] = cost.col(j).minCoeff();

  const int iters_cap = 10 * (n + 1) * (m + 1);
  int it = 0;
  for (; it < iters_cap; ++it) {
    if (ra.sum() <= 1e-14) break;

    // Dense Dijkstra over reduced costs from all rows with supply left.
    std::vector<double> dist(nodes, kInf);
    std::vector<int> par(nodes, -1);
    std::vector<char> done(nodes, 0);
    for (int i = 0; i < n; ++i)
      if (ra[i] > 1e-14) dist[i] = 0.0;
    for (int step = 0; step < nodes; ++step) {
      int u = -1;
      for (int k = 0; k < nodes; ++k)
        if (!done[k] && dist[k] < kInf && (u < 0 || dist[k] < dist[u])) u = k;
      if (u < 0) break;
      done[u] = 1;
      if (u < n) {
        for (int j = 0; j < m; ++j) {
          const double rc =
              std::max(cost(u, j) + pi[u] - pi[n + j], 0.0);
          if (dist[u] + rc < dist[n + j]) {
            dist[n + j] = dist[u] + rc;
            par[n + j] = u;
          }
        }
      } else {
        const int j = u - n;
        for (int i = 0; i < n; ++i) {
          if (plan(i, j) <= 1e-14) continue;
          const double rc =
              std::max(-cost(i, j) + pi[u] - pi[i], 0.0);
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            par[i] = u;
          }
        }
      }
    }

    // Nearest reachable column with remaining demand.
    int target = -1;
    for (int j = 0; j < m; ++j)
      if (rb[j] > 1e-14 && dist[n + j] < kInf &&
          (target < 0 || dist[n + j] < dist[n + target]))
        target = j;
    if (target < 0) throw NumericError("transport augmentation failed");

    for (int k = 0; k < nodes; ++k)
      if (dist[k] < kInf) pi[k] += dist[k];

    // Bottleneck along the (acyclic) parent path back to a supply row.
    double amount = rb[target];
    int root = n + target;
    while (par[root] >= 0) {
      if (root < n) amount = std::min(amount, plan(root, par[root] - n));
      root = par[root];
    }
    amount = std::min(amount, ra[root]);

    int node = n + target;
    while (par[node] >= 0) {
      if (node >= n)
        plan(par[node], node - n) += amount;
      else
        plan(node, par[node] - n) -= amount;
      node = par[node];
    }
    ra[root] -= amount;
    rb[target] -= amount;
  }
  if (ra.sum() > 1e-12) throw NumericError("transport did not converge");
  return plan.cwiseProduct(cost).sum();
}

double exact_wp(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                double p) {
  if (!(mu.manifold->descriptor() == nu.manifold->descriptor()))
    throw DescriptorMismatch("measures live on different manifolds");
  const int n = mu.size(), m = nu.size();
  MatrixXd cost(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      cost(i, j) = std::pow(
          mu.manifold->dist(mu.points.row(i).transpose(),
                            nu.points.row(j).transpose()),
          p);
  if (n == m && mu.is_uniform() && nu.is_uniform())
    return assignment_cost(cost) / n;
  return transport_cost(cost, mu.weights, nu.weights);
}

}  // namespace hadsw
