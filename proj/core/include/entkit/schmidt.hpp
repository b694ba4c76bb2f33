#pragma once

#include <optional>
#include <vector>

#include "entkit/statespace.hpp"

namespace entkit {

/// Validated density operator: Hermitian (1e-12), unit trace (1e-10),
/// positive semidefinite (eigenvalues >= -1e-10).
struct DensityMatrix {
  Eigen::MatrixXcd entries;
};

/// Checks the DensityMatrix invariants; throws DimensionMismatch on a
/// non-square input, otherwise an Error naming the violated invariant.
DensityMatrix make_density(Eigen::MatrixXcd entries);

enum class Side { Left, Right };

/// Reduced density operator of the state on one block of the bipartition:
/// with A = matricize(state, bp), Left gives A A^dagger, Right A^dagger A.
DensityMatrix reduced_density(const AmplitudeTensor& state,
                              const Bipartition& bp, Side side);

/// Tr(rho^2); equals ||rho||_F^2 for Hermitian rho. Lies in [1/D, 1] for a
/// D-dimensional reduced state of a pure state.
double purity(const DensityMatrix& rho);

/// Schmidt form of a pure state across a bipartition. Coefficients are
/// descending with sum of squares 1; count equals the numerical rank
/// (singular values >= 1e-12). Basis columns are gauge-fixed: the first
/// nonzero component of each left vector is real positive. The state
/// rebuilds as sum_j c_j left_j (x) right_j.
struct SchmidtDecomposition {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd left_basis;    // one column per retained coefficient
  Eigen::MatrixXcd right_basis;   // kets on the right block, same count
  Bipartition bipartition;
};

SchmidtDecomposition schmidt_decompose(const AmplitudeTensor& state,
                                       const Bipartition& bp);

/// Builds a bound-saturating state across bp: D^{-1/2} sum_j e^{i phi_j}
/// |j>_left (x) |Phi_j>_right with D = min(block dims). The left vectors
/// are the first D standard basis states of the left block; right_states
/// defaults to the first D standard basis states of the right block and
/// must otherwise be D orthonormal vectors. The result has
/// m_functional == 2(D-1)/D across bp up to roundoff.
AmplitudeTensor max_entangled_state(
    const std::vector<int>& dims, const Bipartition& bp,
    const std::vector<double>& phases,
    const std::optional<std::vector<Eigen::VectorXcd>>& right_states =
        std::nullopt);

}  // namespace entkit
