#include "entkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "entkit/detect.hpp"

namespace entkit {

namespace {

std::vector<Bipartition> selected_bipartitions(int n_parts,
                                               BipartitionSet bp_set) {
  std::vector<Bipartition> bps = enumerate_bipartitions(n_parts);
  if (bp_set == BipartitionSet::SinglePartOnly) {
    std::erase_if(bps, [](const Bipartition& bp) {
      return !bp.isolates_single_part();
    });
  }
  return bps;
}

// M values and the Wirtinger gradient d/d(psi*) of each M at unit-norm amps.
struct MWithGrad {
  std::vector<double> values;
  Eigen::VectorXcd grad;  // of the soft-min, filled by the caller
};

std::vector<double> m_values(const AmplitudeTensor& state,
                             const std::vector<Bipartition>& bps) {
  std::vector<double> out;
  out.reserve(bps.size());
  for (const Bipartition& bp : bps) out.push_back(m_functional(state, bp));
  return out;
}

double soft_min(const std::vector<double>& vals, double beta) {
  const double mn = *std::min_element(vals.begin(), vals.end());
  double acc = 0.0;
  for (double v : vals) acc += std::exp(-beta * (v - mn));
  return mn - std::log(acc / static_cast<double>(vals.size())) / beta;
}

std::vector<double> soft_min_weights(const std::vector<double>& vals,
                                     double beta) {
  const double mn = *std::min_element(vals.begin(), vals.end());
  std::vector<double> w(vals.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    w[k] = std::exp(-beta * (vals[k] - mn));
    acc += w[k];
  }
  for (double& x : w) x /= acc;
  return w;
}

// d/d(psi*) of M across bp: with A = matricize(psi), rho = A A^dagger,
// dP/dA* = 2 rho A, so dM/dA* = -4 rho A mapped back to a flat vector.
Eigen::VectorXcd m_conj_gradient(const AmplitudeTensor& state,
                                 const Bipartition& bp) {
  const Eigen::MatrixXcd a = matricize(state, bp);
  const Eigen::MatrixXcd rho = a * a.adjoint();
  return -4.0 * unmatricize(rho * a, bp, state.dims);
}

// Real-embedding ambient gradient of the smoothed objective (length-2T
// real vector represented as a complex vector; real inner products apply).
Eigen::VectorXcd ambient_gradient(const AmplitudeTensor& state,
                                  const std::vector<Bipartition>& bps,
                                  const std::vector<double>& vals,
                                  double beta) {
  const std::vector<double> w = soft_min_weights(vals, beta);
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(state.total_dim());
  for (std::size_t k = 0; k < bps.size(); ++k) {
    acc += w[k] * m_conj_gradient(state, bps[k]);
  }
  return 2.0 * acc;
}

double real_dot(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return a.dot(b).real();
}

struct RestartOutcome {
  Eigen::VectorXcd best_amps;
  double best_hard_min = -1.0;
  int iterations = 0;
  bool converged = false;
};

RestartOutcome run_restart(const std::vector<int>& dims,
                           const std::vector<Bipartition>& bps,
                           const OptimizerConfig& cfg, std::uint64_t seed) {
  const int n_phases = 4;
  const int phase_len = std::max(1, cfg.max_iters / n_phases);

  AmplitudeTensor state = random_state(dims, seed);
  double beta = cfg.smoothing_beta;
  int phase = 0;
  int accepted = 0;
  double step = cfg.step_init;

  RestartOutcome out;
  {
    const std::vector<double> vals = m_values(state, bps);
    out.best_hard_min = *std::min_element(vals.begin(), vals.end());
    out.best_amps = state.amps;
  }
  double obj = soft_min(m_values(state, bps), beta);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    out.iterations = iter;
    const std::vector<double> vals = m_values(state, bps);
    const Eigen::VectorXcd g = ambient_gradient(state, bps, vals, beta);
    Eigen::VectorXcd g_tan = g - real_dot(state.amps, g) * state.amps;
    const double gnorm = g_tan.norm();

    const auto advance_phase = [&]() {
      ++phase;
      beta *= cfg.beta_growth;
      obj = soft_min(m_values(state, bps), beta);
    };

    if (gnorm <= cfg.tol_grad) {
      if (phase + 1 < n_phases) {
        advance_phase();
        continue;
      }
      out.converged = true;
      break;
    }

    bool found = false;
    double eta = step;
    for (int ls = 0; ls < 45 && !found; ++ls) {
      AmplitudeTensor cand{dims, (state.amps + eta * g_tan).normalized()};
      const double cand_obj = soft_min(m_values(cand, bps), beta);
      if (cand_obj >= obj + 1e-4 * eta * gnorm * gnorm) {
        if (cand_obj + 1e-12 < obj) {
          throw std::logic_error("accepted step decreased the objective");
        }
        state = std::move(cand);
        obj = cand_obj;
        step = std::min(eta * 2.0, cfg.step_init * 8.0);
        found = true;
      } else {
        eta *= 0.5;
      }
    }
    if (!found) {
      // Gradient too small for the arithmetic to register an improvement.
      if (phase + 1 < n_phases) {
        advance_phase();
        continue;
      }
      break;
    }

    ++accepted;
    if (phase + 1 < n_phases && accepted % phase_len == 0) {
      advance_phase();
    }

    const std::vector<double> new_vals = m_values(state, bps);
    const double hard = *std::min_element(new_vals.begin(), new_vals.end());
    if (hard > out.best_hard_min) {
      out.best_hard_min = hard;
      out.best_amps = state.amps;
    }
  }
  return out;
}

}  // namespace

double objective(const AmplitudeTensor& state, double beta,
                 BipartitionSet bp_set) {
  const std::vector<Bipartition> bps =
      selected_bipartitions(state.num_parts(), bp_set);
  return soft_min(m_values(state, bps), beta);
}

OptResult maximize_min_m(const std::vector<int>& dims,
                         const OptimizerConfig& config) {
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (total > 4096) {
    throw DimensionTooLarge("total dimension " + std::to_string(total) +
                            " exceeds 4096");
  }
  if (config.restarts < 1 || config.max_iters < 1) {
    throw NonPositiveTolerance("restarts and max_iters must be >= 1");
  }
  if (!(config.step_init > 0.0) || !(config.smoothing_beta > 0.0) ||
      !(config.tol_grad > 0.0) || !(config.beta_growth > 0.0)) {
    throw NonPositiveTolerance("optimizer reals must be > 0");
  }

  const std::vector<Bipartition> bps =
      selected_bipartitions(static_cast<int>(dims.size()),
                            config.bipartition_set);

  OptResult result;
  int best_restart = -1;
  RestartOutcome best;
  for (int r = 0; r < config.restarts; ++r) {
    RestartOutcome outcome =
        run_restart(dims, bps, config, config.seed + static_cast<std::uint64_t>(r));
    if (outcome.converged) ++result.converged_restarts;
    if (best_restart < 0 || outcome.best_hard_min > best.best_hard_min) {
      best = std::move(outcome);
      best_restart = r;
    }
  }

  result.best_state = AmplitudeTensor{dims, best.best_amps};
  result.per_bipartition_m.reserve(bps.size());
  double mn = 2.0;
  for (const Bipartition& bp : bps) {
    const double m = m_functional(result.best_state, bp);
    result.per_bipartition_m.push_back({bp, m});
    mn = std::min(mn, m);
  }
  result.best_min_m = mn;
  result.iterations_used = best.iterations;
  result.converged = best.converged;
  result.restart_index = best_restart;
  return result;
}

double gradient_check(const AmplitudeTensor& state, double beta, double h) {
  const std::vector<Bipartition> bps =
      selected_bipartitions(state.num_parts(), BipartitionSet::All);
  const std::vector<double> vals = m_values(state, bps);
  const Eigen::VectorXcd g = ambient_gradient(state, bps, vals, beta);
  const Eigen::VectorXcd g_tan =
      g - real_dot(state.amps, g) * state.amps;
  const double denom = g.norm() + 1e-8;

  std::mt19937_64 rng(0x6e7461);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd dir(state.total_dim());
    for (Eigen::Index i = 0; i < dir.size(); ++i) {
      dir[i] = Complex(gauss(rng), gauss(rng));
    }
    dir -= real_dot(state.amps, dir) * state.amps;
    dir.normalize();

    const auto value_at = [&](double t) {
      AmplitudeTensor probe{state.dims, (state.amps + t * dir).normalized()};
      return soft_min(m_values(probe, bps), beta);
    };
    const double numeric = (value_at(h) - value_at(-h)) / (2.0 * h);
    const double analytic = real_dot(g_tan, dir);
    worst = std::max(worst, std::abs(analytic - numeric) / denom);
  }
  return worst;
}

}  // namespace entkit
