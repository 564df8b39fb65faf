#pragma once

#include <cstdint>
#include <vector>

#include "hadsw/chsw.hpp"
#include "hadsw/manifold.hpp"

namespace hadsw {

struct FlowParams {
  Projection projection = Projection::kHorospherical;
  int num_directions = 64;
  double step_size = 0.1;
  int num_steps = 100;
  std::uint64_t seed = 0;
  /// Resample directions every step (stochastic scheme). When false the
  /// direction set is frozen, which makes the objective a fixed functional.
  bool fresh_directions = true;
  int threads = 1;
  /// Tangent updates larger than this (norm of the coordinate vector) are
  /// rescaled; guards the SPD matrix exponential. <= 0 disables.
  double clip_norm = 10.0;
  /// Record diagnostics every k-th step (plus step 0 and the last); 0 = off.
  int history_every = 1;
  /// Also record the exact W_2 to the target at recorded steps (assignment
  /// solve; requires equal counts and uniform weights).
  bool track_w2 = false;
};

struct FlowHistory {
  std::vector<int> steps;
  std::vector<double> chsw2;  // squared sliced distance, fixed eval directions
  std::vector<double> w2;     // empty unless track_w2
};

struct FlowResult {
  MatrixXd points;  // final particle positions
  FlowHistory history;
};

/// Estimated Wasserstein-gradient velocity of 1/2 * CHSW_2^2(mu, target) at
/// every particle: minus the mean over directions of psi'(P(x)) grad P(x),
/// with psi' the 1D Kantorovich potential derivative between the projected
/// measures. One row per particle.
MatrixXd flow_velocity(const DiscreteMeasure& mu, const DiscreteMeasure& target,
                       const MatrixXd& directions, Projection projection,
                       int threads);

/// One explicit Euler step: x <- exp_x(step_size * velocity), with tangent
/// clipping and constraint repair. Throws DivergenceError (with `step` as
/// reported index) on non-finite values.
MatrixXd flow_step(const DiscreteMeasure& mu, const DiscreteMeasure& target,
                   const MatrixXd& directions, const FlowParams& params,
                   int step);

/// Runs the particle scheme for params.num_steps steps from mu0.
FlowResult run_flow(const DiscreteMeasure& mu0, const DiscreteMeasure& target,
                    const FlowParams& params);

}  // namespace hadsw
