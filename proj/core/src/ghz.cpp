#include "entkit/ghz.hpp"

#include <cmath>
#include <numbers>

#include "entkit/detect.hpp"
#include "svd_gauge.hpp"

namespace entkit {

namespace {

constexpr double kUnitaryTolerance = 1e-10;

Complex expi(double phase) { return std::exp(Complex(0.0, phase)); }

double wrap_phase(double chi) {
  const double two_pi = 2.0 * std::numbers::pi;
  chi = std::fmod(chi, two_pi);
  if (chi < 0.0) chi += two_pi;
  return chi;
}

void require_unitary(const Eigen::MatrixXcd& u, int part) {
  const Eigen::Index d = u.rows();
  const double defect =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (defect > kUnitaryTolerance) {
    throw NonUnitary("factor for subsystem " + std::to_string(part) +
                     " deviates from unitarity by " + std::to_string(defect));
  }
}

}  // namespace

LocalUnitaryCircuit identity_circuit(const std::vector<int>& dims) {
  LocalUnitaryCircuit circuit;
  circuit.unitaries.reserve(dims.size());
  for (int d : dims) {
    circuit.unitaries.push_back(Eigen::MatrixXcd::Identity(d, d));
  }
  return circuit;
}

AmplitudeTensor apply_local_unitary(const AmplitudeTensor& state,
                                    const LocalUnitaryCircuit& circuit) {
  const int n = state.num_parts();
  if (static_cast<int>(circuit.unitaries.size()) != n) {
    throw SizeMismatch("circuit has " +
                       std::to_string(circuit.unitaries.size()) +
                       " factors for " + std::to_string(n) + " subsystems");
  }
  for (int l = 0; l < n; ++l) {
    const auto& u = circuit.unitaries[l];
    if (u.rows() != state.dims[l] || u.cols() != state.dims[l]) {
      throw SizeMismatch("factor " + std::to_string(l) + " is " +
                         std::to_string(u.rows()) + "x" +
                         std::to_string(u.cols()) + ", subsystem dimension is " +
                         std::to_string(state.dims[l]));
    }
    require_unitary(u, l);
  }

  // Contract one axis at a time.
  Eigen::VectorXcd cur = state.amps;
  Eigen::Index inner = state.total_dim();
  for (int l = 0; l < n; ++l) {
    const Eigen::Index d = state.dims[l];
    inner /= d;
    const Eigen::Index outer = state.total_dim() / (d * inner);
    const auto& u = circuit.unitaries[l];
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(state.total_dim());
    for (Eigen::Index o = 0; o < outer; ++o) {
      for (Eigen::Index ip = 0; ip < d; ++ip) {
        Complex* dst = next.data() + (o * d + ip) * inner;
        for (Eigen::Index i = 0; i < d; ++i) {
          const Complex coeff = u(ip, i);
          const Complex* src = cur.data() + (o * d + i) * inner;
          for (Eigen::Index t = 0; t < inner; ++t) dst[t] += coeff * src[t];
        }
      }
    }
    cur.swap(next);
  }
  return AmplitudeTensor{state.dims, std::move(cur)};
}

bool check_maximal(const AmplitudeTensor& state, double eps) {
  if (state.dims != std::vector<int>{2, 2, 2}) {
    throw NotThreeQubits("canonicalization handles dims [2,2,2] only");
  }
  for (int k = 0; k < 3; ++k) {
    if (m_functional(state, Bipartition::single_part(k, 3)) < 1.0 - eps) {
      return false;
    }
  }
  return true;
}

AmplitudeTensor ghz_state() {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps[0] = amps[7] = 1.0 / std::sqrt(2.0);
  return make_state({2, 2, 2}, std::move(amps));
}

std::string to_string(CanonicalBranch branch) {
  switch (branch) {
    case CanonicalBranch::Theta2ZeroTheta3Zero:
      return "Theta2ZeroTheta3Zero";
    case CanonicalBranch::Theta2ZeroTheta3Half:
      return "Theta2ZeroTheta3Half";
    case CanonicalBranch::Theta2ZeroChiEqual:
      return "Theta2ZeroChiEqual";
    case CanonicalBranch::QuarterGeneric:
      return "QuarterGeneric";
    case CanonicalBranch::QuarterTheta2Half:
      return "QuarterTheta2Half";
  }
  return "?";
}

AmplitudeTensor state_from_trace(const CanonicalizationTrace& t) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps[0] = inv_sqrt2 * std::cos(t.theta1);
  amps[3] = inv_sqrt2 * expi(t.chi1) * std::sin(t.theta1);
  const Complex top = inv_sqrt2 * expi(t.chi) * std::cos(t.theta3);
  const Complex bottom =
      inv_sqrt2 * expi(t.chi + t.chi3) * std::sin(t.theta3);
  amps[4] = top * std::cos(t.theta2);
  amps[5] = top * expi(t.chi2) * std::sin(t.theta2);
  amps[6] = bottom * expi(-t.chi2) * std::sin(t.theta2);
  amps[7] = -bottom * std::cos(t.theta2);
  return make_state({2, 2, 2}, std::move(amps));
}

namespace {

// The analysis works in the local Schmidt frames. Extraction:
//   1. Schmidt against qubit 1 gives the frame of qubit 1 and the pair
//      phi0, phi1 on qubits 2,3 (both Schmidt weights are 1/sqrt(2) for a
//      maximal state).
//   2. A second Schmidt decomposition of phi0 gives the qubit-2/qubit-3
//      frames and theta1; the gauge makes both coefficients real, so chi1
//      is identically zero here.
//   3. phi1 expanded in those frames yields (a, b, c, d), which maximality
//      forces into
//        a = e^{i chi} cos t3 cos t2,          b = e^{i chi} cos t3 e^{i chi2} sin t2,
//        c = e^{i (chi+chi3)} sin t3 e^{-i chi2} sin t2,
//        d = -e^{i (chi+chi3)} sin t3 cos t2.
struct Extraction {
  // Local frames; columns are basis vectors.
  Eigen::MatrixXcd b1, b2, b3;
  double theta1;
  Complex a, b, c, d;  // phi1 components in the extracted frames
  double theta2, theta3;
};

Extraction extract_frames(const AmplitudeTensor& state) {
  Extraction e;

  const detail::GaugedSvd top = detail::gauge_fixed_svd(
      matricize(state, Bipartition::make({0}, 3)));
  e.b1 = top.left;
  const Eigen::VectorXcd phi0 = top.right_kets.col(0);
  const Eigen::VectorXcd phi1 = top.right_kets.col(1);

  Eigen::MatrixXcd m0(2, 2);
  m0 << phi0[0], phi0[1], phi0[2], phi0[3];
  const detail::GaugedSvd inner = detail::gauge_fixed_svd(m0);
  e.b2 = inner.left;
  e.b3 = inner.right_kets;
  e.theta1 = std::atan2(inner.sigma[1], inner.sigma[0]);

  const auto component = [&](int j, int k) {
    Complex acc = 0.0;
    for (int jj = 0; jj < 2; ++jj) {
      for (int kk = 0; kk < 2; ++kk) {
        acc += std::conj(e.b2(jj, j) * e.b3(kk, k)) * phi1[2 * jj + kk];
      }
    }
    return acc;
  };
  e.a = component(0, 0);
  e.b = component(0, 1);
  e.c = component(1, 0);
  e.d = component(1, 1);

  const double top_norm = std::hypot(std::abs(e.a), std::abs(e.b));
  const double bottom_norm = std::hypot(std::abs(e.c), std::abs(e.d));
  e.theta3 = std::atan2(bottom_norm, top_norm);
  e.theta2 = top_norm >= bottom_norm
                 ? std::atan2(std::abs(e.b), std::abs(e.a))
                 : std::atan2(std::abs(e.c), std::abs(e.d));
  return e;
}

// Single-qubit map sending the extracted pair (v0, v1) to (|0>, |1>),
// orthonormalized so the emitted factor is exactly unitary.
Eigen::MatrixXcd map_pair_to_basis(Eigen::Vector2cd v0, Eigen::Vector2cd v1) {
  v0.normalize();
  v1 -= v0 * v0.dot(v1);
  const double rest = v1.norm();
  if (rest < 1e-6) {
    throw BranchResolutionFailure(
        "extracted qubit-1 vectors are not independent");
  }
  v1 /= rest;
  Eigen::MatrixXcd u(2, 2);
  u.row(0) = v0.adjoint();
  u.row(1) = v1.adjoint();
  return u;
}

}  // namespace

CanonicalizationResult ghz_canonicalize(const AmplitudeTensor& state,
                                        double eps) {
  if (!(eps > 0.0)) {
    throw NonPositiveTolerance("eps must be > 0");
  }
  if (!check_maximal(state, eps)) {
    throw NotMaximal("all three single-qubit M values must be >= 1 - eps");
  }

  const Extraction e = extract_frames(state);
  // Constraint residuals scale like the square root of the M deviation, so
  // the acceptance window does too.
  const double window = std::max(10.0 * eps, 2.0 * std::sqrt(eps));
  const double quarter = std::numbers::pi / 4.0;
  const double half = std::numbers::pi / 2.0;

  if (std::abs(std::cos(e.theta3) - std::sin(e.theta1)) > window) {
    throw BranchResolutionFailure(
        "normalization constraint cos(theta3) = sin(theta1) violated by " +
        std::to_string(std::abs(std::cos(e.theta3) - std::sin(e.theta1))));
  }

  CanonicalizationTrace trace;
  trace.theta1 = e.theta1;
  trace.theta2 = e.theta2;
  trace.theta3 = e.theta3;

  LocalUnitaryCircuit circuit;
  circuit.unitaries.resize(3);

  const auto orthogonality_residual = [&](double chi3) {
    return std::abs(std::cos(e.theta1) * std::cos(e.theta3) -
                    expi(chi3 - trace.chi1) * std::sin(e.theta1) *
                        std::sin(e.theta3));
  };

  if (e.theta2 <= window) {
    // phi1 lives on |00>,|11> like phi0; regrouping by the qubit-2,3
    // content leaves two qubit-1 vectors that the map sends to |0>, |1>.
    const Eigen::Vector2cd v0(std::cos(e.theta1), e.a);
    const Eigen::Vector2cd v1(std::sin(e.theta1), e.d);

    if (e.theta3 <= window) {
      trace.branch = CanonicalBranch::Theta2ZeroTheta3Zero;
      trace.chi = wrap_phase(std::arg(e.a));
    } else if (e.theta3 >= half - window) {
      trace.branch = CanonicalBranch::Theta2ZeroTheta3Half;
      trace.chi3 = wrap_phase(std::arg(-e.d));
    } else {
      trace.branch = CanonicalBranch::Theta2ZeroChiEqual;
      trace.chi = wrap_phase(std::arg(e.a));
      trace.chi3 = wrap_phase(std::arg(-e.d) - trace.chi);
      if (orthogonality_residual(trace.chi3) > window) {
        throw BranchResolutionFailure(
            "orthogonality constraint fails in the theta2 = 0 case");
      }
    }
    circuit.unitaries[0] = map_pair_to_basis(v0, v1);
    circuit.unitaries[1] = Eigen::MatrixXcd::Identity(2, 2);
    circuit.unitaries[2] = Eigen::MatrixXcd::Identity(2, 2);
  } else if (std::abs(e.theta3 - quarter) <= window) {
    Eigen::MatrixXcd t1(2, 2), t2(2, 2), t3(2, 2);
    if (e.theta2 >= half - window) {
      trace.branch = CanonicalBranch::QuarterTheta2Half;
      trace.chi2 = wrap_phase(std::arg(e.b));
      trace.chi3 = wrap_phase(std::arg(e.c) + trace.chi2);
      // Hadamard-like factors whose column phases reproduce the three
      // Bell-pair amplitudes e^{i chi1}, e^{i(chi+chi2)}, e^{i(chi+chi3-chi2)}.
      const Complex p =
          expi(trace.chi - trace.chi1 / 2.0 + trace.chi3 / 2.0);
      const Complex q =
          expi(trace.chi1 / 2.0 - trace.chi2 + trace.chi3 / 2.0);
      const Complex r =
          expi(trace.chi1 / 2.0 + trace.chi2 - trace.chi3 / 2.0);
      const double s = 1.0 / std::sqrt(2.0);
      t1 << s, s, s * p, -s * p;
      t2 << s, s, s * q, -s * q;
      t3 << s, s, s * r, -s * r;
    } else {
      trace.branch = CanonicalBranch::QuarterGeneric;
      trace.chi = wrap_phase(std::arg(e.a));
      trace.chi2 = wrap_phase(std::arg(e.b) - trace.chi);
      trace.chi3 = wrap_phase(std::arg(-e.d) - trace.chi);
      if (orthogonality_residual(trace.chi3) > window) {
        throw BranchResolutionFailure(
            "orthogonality constraint fails in the theta3 = pi/4 case");
      }
      const double hc = std::cos(e.theta2 / 2.0);
      const double hs = std::sin(e.theta2 / 2.0);
      const double s = 1.0 / std::sqrt(2.0);
      const Complex chi_ph = expi(trace.chi);
      t1 << s, s, s * chi_ph, -s * chi_ph;
      const Complex ph2 = expi(trace.chi1 - trace.chi2);
      t2 << hc, hs, ph2 * hs, -ph2 * hc;
      const Complex ph3 = expi(trace.chi2);
      t3 << hc, hs, ph3 * hs, -ph3 * hc;
    }
    // The t factors map GHZ onto the state in the local frames, so their
    // adjoints canonicalize.
    circuit.unitaries[0] = t1.adjoint();
    circuit.unitaries[1] = t2.adjoint();
    circuit.unitaries[2] = t3.adjoint();
  } else {
    throw BranchResolutionFailure(
        "theta2 = " + std::to_string(e.theta2) + ", theta3 = " +
        std::to_string(e.theta3) + " fit no case of the analysis");
  }

  CanonicalizationResult result;
  result.frame.unitaries = {e.b1, e.b2, e.b3};
  circuit.unitaries[0] *= e.b1.adjoint();
  circuit.unitaries[1] *= e.b2.adjoint();
  circuit.unitaries[2] *= e.b3.adjoint();
  result.circuit = std::move(circuit);
  result.trace = trace;
  return result;
}

}  // namespace entkit
