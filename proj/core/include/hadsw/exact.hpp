#pragma once

#include "hadsw/manifold.hpp"

namespace hadsw {

/// Minimal total cost of a perfect assignment on a square cost matrix
/// (Jonker-Volgenant shortest augmenting paths, O(n^3)).
double assignment_cost(const MatrixXd& cost);

/// Exact optimal transport cost min_pi <pi, cost> with row marginals a and
/// column marginals b (successive shortest paths; intended for small
/// instances and as a validation oracle).
double transport_cost(const MatrixXd& cost, const VectorXd& a,
                      const VectorXd& b);

/// Exact W_p^p between two measures on the same manifold. Equal-count
/// uniform pairs use assignment; general weights use transport_cost.
double exact_wp(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                double p);

}  // namespace hadsw
