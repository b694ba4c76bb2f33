#pragma once

#include <cstdint>
#include <vector>

#include "entkit/statespace.hpp"

namespace entkit {

enum class BipartitionSet { All, SinglePartOnly };

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 1000;        // iteration budget per restart
  double step_init = 0.5;      // initial ascent step, adapted per iteration
  double smoothing_beta = 10.0;  // initial soft-min sharpness
  double beta_growth = 2.0;    // sharpness multiplier per schedule phase
  double tol_grad = 1e-8;      // tangent gradient norm for convergence
  std::uint64_t seed = 0;
  BipartitionSet bipartition_set = BipartitionSet::All;
};

struct BipartitionValue {
  Bipartition bipartition;
  double m_value = 0.0;
};

struct OptResult {
  AmplitudeTensor best_state;
  double best_min_m = 0.0;
  std::vector<BipartitionValue> per_bipartition_m;
  int iterations_used = 0;
  bool converged = false;
  int restart_index = 0;
  int converged_restarts = 0;  // how many restarts reached tol_grad
};

/// Smoothed worst-case entanglement across the selected bipartitions:
/// -(1/beta) * log( (1/K) * sum_k exp(-beta * M_k) ). The normalization by
/// the bipartition count K makes the value exact for equal inputs and the
/// limit beta -> infinity is min_k M_k from above.
double objective(const AmplitudeTensor& state, double beta,
                 BipartitionSet bp_set);

/// Projected-gradient ascent of the smoothed objective over the unit
/// sphere, with backtracking line search and a beta sharpening schedule.
/// Runs `restarts` independent ascents seeded from seed, seed+1, ...;
/// the best restart wins, ties broken by the lowest restart index.
/// Throws DimensionTooLarge above total dimension 4096.
OptResult maximize_min_m(const std::vector<int>& dims,
                         const OptimizerConfig& config);

/// Maximum relative discrepancy between the analytic tangent gradient of
/// the smoothed objective (all bipartitions) and central finite differences
/// over 20 fixed random tangent directions; relative to the analytic
/// gradient norm with a 1e-8 floor. h must lie in [1e-7, 1e-4].
double gradient_check(const AmplitudeTensor& state, double beta, double h);

}  // namespace entkit
