#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entkit/statespace.hpp"

namespace entkit {

/// A positive function f: C -> R with f(x) >= 0 and f(x) = 0 iff x = 0,
/// applied to the 2x2 minors of an amplitude matricization.
///
/// Built-ins are continuous with f(x) >= c|x|^q near zero, which is what
/// makes tolerance-based zero testing meaningful. User-supplied functions
/// are accepted as-is; zero-detection guarantees then rest on the caller.
struct MinorFunction {
  std::string name;
  std::function<double(Complex)> eval;
};

MinorFunction abs2_functional();           // f(x) = |x|^2
MinorFunction abs_functional();            // f(x) = |x|
MinorFunction abs_pow_functional(double p);  // f(x) = |x|^p, p > 0

/// Looks up a functional by registry name: "abs2", "abs" or "abs_p:<p>".
/// Throws UnknownName otherwise.
MinorFunction minor_function_by_name(const std::string& name);

/// Sum of f over all ordered index tuples (r, c, r', c') of
/// A(r,c)A(r',c') - A(r,c')A(r',c), where A = matricize(state, bp).
/// Tuples with r == r' or c == c' contribute zero and are included.
/// O((m*n)^2); intended for desk-scale systems and as the general-f path.
double minor_sum(const AmplitudeTensor& state, const Bipartition& bp,
                 const MinorFunction& f);

/// The squared-modulus member of the family, computed through the purity of
/// the reduced density operator on the smaller block: 2*(1 - Tr rho^2).
/// Agrees with minor_sum(state, bp, abs2) to ~1e-10 and is the fast path.
double m_functional(const AmplitudeTensor& state, const Bipartition& bp);

/// Factor pair recovered for a factorizable state: unit vectors over the
/// left and right blocks whose product rebuilds the state.
struct FactorizabilityWitness {
  Eigen::VectorXcd left;
  Eigen::VectorXcd right;
};

struct FactorizabilityResult {
  bool factorizable = false;
  double m_value = 0.0;
  std::optional<FactorizabilityWitness> witness;
};

/// Decides factorizability across bp with the scale-aware rule
/// m <= eps * (D-1)/D, D = min(rows, cols) of the matricization. On success
/// the witness is recovered from a maximal-modulus pivot entry:
/// alpha_r = A(r, c0)/A(r0, c0), beta_c = A(r0, c), each renormalized.
FactorizabilityResult is_factorizable(const AmplitudeTensor& state,
                                      const Bipartition& bp, double eps);

enum class SeparabilityClass {
  FullySeparable,
  PartiallySeparable,
  GenuinelyEntangled,
};

std::string to_string(SeparabilityClass c);

struct BipartitionVerdict {
  Bipartition bipartition;
  double m_value = 0.0;
  bool factorizable = false;
};

/// Per-bipartition M values and verdicts plus the overall class.
/// `blocks` is the finest product decomposition found by recursively
/// splitting along factorizable bipartitions (original subsystem indices,
/// each block sorted, blocks ordered by first element).
struct EntanglementReport {
  std::vector<BipartitionVerdict> per_bipartition;
  SeparabilityClass separability_class = SeparabilityClass::GenuinelyEntangled;
  std::vector<std::vector<int>> blocks;
};

/// Evaluates every canonical bipartition. A state is FullySeparable when the
/// decomposition ends in singletons, GenuinelyEntangled when no bipartition
/// is factorizable. For N >= 4 the all-nonzero case is reported as
/// GenuinelyEntangled as well; that is a reporting convention for pure
/// states, not a theorem about every entanglement taxonomy.
EntanglementReport classify(const AmplitudeTensor& state, double eps = 1e-9);

}  // namespace entkit
