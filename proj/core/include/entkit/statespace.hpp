#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "entkit/errors.hpp"

namespace entkit {

using Complex = std::complex<double>;

/// Normalized pure state of a multipartite system.
///
/// `amps` is dense and row-major over the product basis: the LAST subsystem
/// index varies fastest, so for dims [d0,d1,d2] the basis label |i j k> sits
/// at flat index (i*d1 + j)*d2 + k. Immutable by convention after
/// construction through make_state(); all operations below are pure.
struct AmplitudeTensor {
  std::vector<int> dims;   // one entry per subsystem, each >= 2
  Eigen::VectorXcd amps;   // length = product of dims, unit norm

  int num_parts() const { return static_cast<int>(dims.size()); }
  Eigen::Index total_dim() const { return amps.size(); }
};

/// Split of the subsystem indices {0..N-1} into two blocks. Canonical form
/// keeps index 0 in `left`, which removes mirror duplicates.
struct Bipartition {
  std::vector<int> left;   // sorted, contains 0
  std::vector<int> right;  // sorted complement

  /// Builds the canonical bipartition with the given left block; the block
  /// is mirrored if it does not contain index 0.
  static Bipartition make(std::vector<int> left_block, int n_parts);

  /// Canonical bipartition isolating one subsystem from the rest.
  static Bipartition single_part(int part, int n_parts);

  int n_parts() const { return static_cast<int>(left.size() + right.size()); }
  bool isolates_single_part() const {
    return left.size() == 1 || right.size() == 1;
  }
  bool operator==(const Bipartition& other) const = default;
};

/// Validates and builds a state. With normalize=false the input norm must
/// already be 1 within 1e-8; with normalize=true the amplitudes are rescaled.
/// Throws DimensionMismatch, ZeroState or NotNormalized.
AmplitudeTensor make_state(std::vector<int> dims, Eigen::VectorXcd amps,
                           bool normalize = false);

/// Haar-style random state: i.i.d. standard complex Gaussian amplitudes,
/// normalized. Deterministic for a fixed seed.
AmplitudeTensor random_state(const std::vector<int>& dims, std::uint64_t seed);

/// All canonical bipartitions of n_parts subsystems, ordered by left-block
/// size then lexicographically. Exactly 2^(n_parts-1) - 1 entries.
std::vector<Bipartition> enumerate_bipartitions(int n_parts);

/// Reshapes the amplitude tensor into the amplitude matrix of a bipartition:
/// rows are the row-major composite of the left-block indices, columns the
/// row-major composite of the right-block indices. Pure index permutation,
/// so the Frobenius norm equals the state norm exactly.
Eigen::MatrixXcd matricize(const AmplitudeTensor& state, const Bipartition& bp);

/// Inverse of matricize: rebuilds the flat amplitude vector from an
/// amplitude matrix over the given bipartition of `dims`.
Eigen::VectorXcd unmatricize(const Eigen::MatrixXcd& a, const Bipartition& bp,
                             const std::vector<int>& dims);

/// Product of dims over the listed subsystem indices.
Eigen::Index block_dim(const std::vector<int>& dims,
                       const std::vector<int>& parts);

/// <a|b>; both states must share dims.
Complex overlap(const AmplitudeTensor& a, const AmplitudeTensor& b);

/// |<a|b>|^2 (global-phase insensitive).
double fidelity(const AmplitudeTensor& a, const AmplitudeTensor& b);

namespace detail {
/// Checks index-set validity of bp against n_parts; throws BadBipartition.
void require_valid_for(const Bipartition& bp, int n_parts);
}  // namespace detail

}  // namespace entkit
