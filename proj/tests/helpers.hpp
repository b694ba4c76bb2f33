#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "entkit/ghz.hpp"
#include "entkit/statespace.hpp"

namespace entkit::testing {

inline Eigen::VectorXcd gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = Complex(gauss(rng), gauss(rng));
  }
  return v;
}

/// Haar-random unitary: QR of a Ginibre matrix with the R diagonal phases
/// folded into Q.
inline Eigen::MatrixXcd random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      g(r, c) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) {
      q.col(j) *= diag / std::abs(diag);
    }
  }
  return q;
}

inline LocalUnitaryCircuit random_circuit(const std::vector<int>& dims,
                                          std::mt19937_64& rng) {
  LocalUnitaryCircuit circuit;
  circuit.unitaries.reserve(dims.size());
  for (int d : dims) {
    circuit.unitaries.push_back(random_unitary(d, rng));
  }
  return circuit;
}

/// Random full product state: independent random unit vector per subsystem.
inline AmplitudeTensor random_product_state(const std::vector<int>& dims,
                                            std::mt19937_64& rng) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(1);
  for (int d : dims) {
    Eigen::VectorXcd factor = gaussian_vector(d, rng).normalized();
    Eigen::VectorXcd next(amps.size() * d);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      for (int j = 0; j < d; ++j) {
        next[i * d + j] = amps[i] * factor[j];
      }
    }
    amps = std::move(next);
  }
  return make_state(dims, std::move(amps), /*normalize=*/true);
}

inline AmplitudeTensor w_state() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps[1] = amps[2] = amps[4] = 1.0 / std::sqrt(3.0);
  return make_state({2, 2, 2}, std::move(amps));
}

inline AmplitudeTensor psi_bis_state() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
  return make_state({2, 2, 2}, std::move(amps));
}

inline AmplitudeTensor bell_state() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps[0] = amps[3] = 1.0 / std::sqrt(2.0);
  return make_state({2, 2}, std::move(amps));
}

/// The seven-term genuinely entangled example state
/// (5|000> + 3|010> + 2|001> + 4|011> + 7|101> + |111>) / (2 sqrt(26)).
inline AmplitudeTensor phi_state() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  const double scale = 1.0 / (2.0 * std::sqrt(26.0));
  amps[0] = 5.0 * scale;  // |000>
  amps[1] = 2.0 * scale;  // |001>
  amps[2] = 3.0 * scale;  // |010>
  amps[3] = 4.0 * scale;  // |011>
  amps[5] = 7.0 * scale;  // |101>
  amps[7] = 1.0 * scale;  // |111>
  return make_state({2, 2, 2}, std::move(amps));
}

}  // namespace entkit::testing
