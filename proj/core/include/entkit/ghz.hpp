#pragma once

#include <string>
#include <vector>

#include "entkit/statespace.hpp"

namespace entkit {

/// One unitary per subsystem, applied as a tensor product.
struct LocalUnitaryCircuit {
  std::vector<Eigen::MatrixXcd> unitaries;
};

/// Returns the identity circuit for the given dims.
LocalUnitaryCircuit identity_circuit(const std::vector<int>& dims);

/// (U_1 (x) ... (x) U_N)|psi>. Throws SizeMismatch when the circuit does not
/// match the state's dims and NonUnitary when any factor fails
/// U^dagger U = I within 1e-10.
AmplitudeTensor apply_local_unitary(const AmplitudeTensor& state,
                                    const LocalUnitaryCircuit& circuit);

/// True iff the three-qubit state has every single-qubit M value >= 1 - eps.
/// Throws NotThreeQubits unless dims == [2,2,2].
bool check_maximal(const AmplitudeTensor& state, double eps = 1e-6);

/// (|000> + |111>)/sqrt(2).
AmplitudeTensor ghz_state();

/// Which case of the maximal-state analysis produced the circuit.
enum class CanonicalBranch {
  Theta2ZeroTheta3Zero,
  Theta2ZeroTheta3Half,
  Theta2ZeroChiEqual,
  QuarterGeneric,
  QuarterTheta2Half,
};

std::string to_string(CanonicalBranch branch);

/// Angles and phases extracted on the way to the canonical form. theta* are
/// in [0, pi/2], chi* in [0, 2pi). chi1 is identically 0 in this
/// implementation: the Schmidt gauge absorbs that phase into the local
/// qubit-3 basis.
struct CanonicalizationTrace {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double chi = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
  double chi3 = 0.0;
  CanonicalBranch branch = CanonicalBranch::Theta2ZeroChiEqual;
};

struct CanonicalizationResult {
  LocalUnitaryCircuit circuit;  // maps the input state to GHZ
  CanonicalizationTrace trace;
  /// Basis change into the local Schmidt frames used during extraction;
  /// column j of frame.unitaries[l] is the j-th extracted basis vector of
  /// qubit l. Exposed so the extraction can be audited against the trace.
  LocalUnitaryCircuit frame;
};

/// Rebuilds the three-qubit state that the trace parameters describe in the
/// local Schmidt frames (the intermediate normal form of the analysis).
AmplitudeTensor state_from_trace(const CanonicalizationTrace& trace);

/// For a maximal three-qubit state, builds the local unitary circuit mapping
/// it to GHZ together with the extracted parameters. Near-maximal states
/// (within eps) are handled best-effort; callers can measure the achieved
/// fidelity by applying the circuit. Throws NotMaximal when check_maximal
/// fails and BranchResolutionFailure when the extracted parameters fit no
/// case of the analysis.
CanonicalizationResult ghz_canonicalize(const AmplitudeTensor& state,
                                        double eps = 1e-6);

}  // namespace entkit
