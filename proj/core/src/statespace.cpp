#include "entkit/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace entkit {

namespace {

constexpr double kNormTolerance = 1e-8;

Eigen::Index checked_total_dim(const std::vector<int>& dims) {
  if (dims.empty()) {
    throw DimensionMismatch("dims must be nonempty");
  }
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 2) {
      throw DimensionMismatch("every subsystem dimension must be >= 2, got " +
                              std::to_string(d));
    }
    total *= d;
  }
  return total;
}

std::string set_to_string(const std::vector<int>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  os << '}';
  return os.str();
}

// Flat row-major composite of the multi-index restricted to `parts`
// (parts sorted ascending; the last listed part varies fastest).
struct BlockIndexer {
  std::vector<int> parts;
  std::vector<Eigen::Index> strides;  // stride of each part within the block

  BlockIndexer(const std::vector<int>& parts_, const std::vector<int>& dims)
      : parts(parts_), strides(parts_.size()) {
    Eigen::Index stride = 1;
    for (std::size_t i = parts.size(); i-- > 0;) {
      strides[i] = stride;
      stride *= dims[parts[i]];
    }
  }

  Eigen::Index compose(const std::vector<int>& multi) const {
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      idx += strides[i] * multi[parts[i]];
    }
    return idx;
  }
};

void decompose(Eigen::Index flat, const std::vector<int>& dims,
               std::vector<int>& multi) {
  for (std::size_t i = dims.size(); i-- > 0;) {
    multi[i] = static_cast<int>(flat % dims[i]);
    flat /= dims[i];
  }
}

}  // namespace

AmplitudeTensor make_state(std::vector<int> dims, Eigen::VectorXcd amps,
                           bool normalize) {
  const Eigen::Index total = checked_total_dim(dims);
  if (amps.size() != total) {
    throw DimensionMismatch("amps has length " + std::to_string(amps.size()) +
                            " but dims require " + std::to_string(total));
  }
  const double norm = amps.norm();
  if (norm < 1e-14) {
    throw ZeroState("all amplitudes are (numerically) zero");
  }
  if (normalize) {
    amps /= norm;
  } else if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "state norm is " << norm << ", expected 1 within " << kNormTolerance;
    throw NotNormalized(os.str());
  }
  return AmplitudeTensor{std::move(dims), std::move(amps)};
}

AmplitudeTensor random_state(const std::vector<int>& dims,
                             std::uint64_t seed) {
  const Eigen::Index total = checked_total_dim(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd amps(total);
  for (Eigen::Index i = 0; i < total; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    amps[i] = Complex(re, im);
  }
  return make_state(dims, std::move(amps), /*normalize=*/true);
}

Bipartition Bipartition::make(std::vector<int> left_block, int n_parts) {
  if (n_parts < 2) {
    throw BadBipartition("need at least 2 parts, got " +
                         std::to_string(n_parts));
  }
  std::sort(left_block.begin(), left_block.end());
  left_block.erase(std::unique(left_block.begin(), left_block.end()),
                   left_block.end());
  if (left_block.empty()) {
    throw BadBipartition("left block is empty");
  }
  for (int p : left_block) {
    if (p < 0 || p >= n_parts) {
      throw BadBipartition("subsystem index " + std::to_string(p) +
                           " out of range for " + std::to_string(n_parts) +
                           " parts");
    }
  }
  std::vector<int> complement;
  complement.reserve(n_parts - left_block.size());
  for (int p = 0; p < n_parts; ++p) {
    if (!std::binary_search(left_block.begin(), left_block.end(), p)) {
      complement.push_back(p);
    }
  }
  if (complement.empty()) {
    throw BadBipartition("left block covers all parts");
  }
  Bipartition bp;
  if (left_block.front() == 0) {
    bp.left = std::move(left_block);
    bp.right = std::move(complement);
  } else {
    bp.left = std::move(complement);
    bp.right = std::move(left_block);
  }
  return bp;
}

Bipartition Bipartition::single_part(int part, int n_parts) {
  return make({part}, n_parts);
}

std::vector<Bipartition> enumerate_bipartitions(int n_parts) {
  if (n_parts < 2) {
    throw TooFewParts("need at least 2 parts, got " + std::to_string(n_parts));
  }
  // Left blocks are exactly the subsets containing index 0, except the full
  // set. Enumerate by bitmask over parts 1..n-1, then order by size and
  // lexicographically by the sorted index list.
  std::vector<Bipartition> result;
  const unsigned count = 1u << (n_parts - 1);
  result.reserve(count - 1);
  for (unsigned mask = 0; mask + 1 < count; ++mask) {
    std::vector<int> left{0};
    for (int p = 1; p < n_parts; ++p) {
      if (mask & (1u << (p - 1))) left.push_back(p);
    }
    result.push_back(Bipartition::make(std::move(left), n_parts));
  }
  std::sort(result.begin(), result.end(),
            [](const Bipartition& a, const Bipartition& b) {
              if (a.left.size() != b.left.size())
                return a.left.size() < b.left.size();
              return a.left < b.left;
            });
  return result;
}

namespace detail {

void require_valid_for(const Bipartition& bp, int n_parts) {
  if (bp.left.empty() || bp.right.empty()) {
    throw BadBipartition("both blocks must be nonempty");
  }
  if (bp.n_parts() != n_parts) {
    throw BadBipartition("bipartition covers " + std::to_string(bp.n_parts()) +
                         " parts but state has " + std::to_string(n_parts));
  }
  std::vector<bool> seen(n_parts, false);
  for (const auto* block : {&bp.left, &bp.right}) {
    for (int p : *block) {
      if (p < 0 || p >= n_parts || seen[p]) {
        throw BadBipartition("blocks " + set_to_string(bp.left) + " | " +
                             set_to_string(bp.right) +
                             " do not partition the subsystems");
      }
      seen[p] = true;
    }
  }
  if (bp.left.front() != 0) {
    throw BadBipartition("canonical form requires index 0 in the left block");
  }
}

}  // namespace detail

Eigen::Index block_dim(const std::vector<int>& dims,
                       const std::vector<int>& parts) {
  Eigen::Index d = 1;
  for (int p : parts) d *= dims[p];
  return d;
}

Eigen::MatrixXcd matricize(const AmplitudeTensor& state,
                           const Bipartition& bp) {
  detail::require_valid_for(bp, state.num_parts());
  const Eigen::Index rows = block_dim(state.dims, bp.left);
  const Eigen::Index cols = block_dim(state.dims, bp.right);
  const BlockIndexer row_indexer(bp.left, state.dims);
  const BlockIndexer col_indexer(bp.right, state.dims);

  Eigen::MatrixXcd a(rows, cols);
  std::vector<int> multi(state.dims.size());
  for (Eigen::Index x = 0; x < state.total_dim(); ++x) {
    decompose(x, state.dims, multi);
    a(row_indexer.compose(multi), col_indexer.compose(multi)) = state.amps[x];
  }
  return a;
}

Eigen::VectorXcd unmatricize(const Eigen::MatrixXcd& a, const Bipartition& bp,
                             const std::vector<int>& dims) {
  detail::require_valid_for(bp, static_cast<int>(dims.size()));
  const Eigen::Index total = checked_total_dim(dims);
  if (a.rows() != block_dim(dims, bp.left) ||
      a.cols() != block_dim(dims, bp.right)) {
    throw BadBipartition("matrix shape does not match the bipartition");
  }
  const BlockIndexer row_indexer(bp.left, dims);
  const BlockIndexer col_indexer(bp.right, dims);

  Eigen::VectorXcd amps(total);
  std::vector<int> multi(dims.size());
  for (Eigen::Index x = 0; x < total; ++x) {
    decompose(x, dims, multi);
    amps[x] = a(row_indexer.compose(multi), col_indexer.compose(multi));
  }
  return amps;
}

Complex overlap(const AmplitudeTensor& a, const AmplitudeTensor& b) {
  if (a.dims != b.dims) {
    throw DimensionMismatch("states live on different subsystem dimensions");
  }
  return a.amps.dot(b.amps);  // Eigen's dot conjugates the left argument
}

double fidelity(const AmplitudeTensor& a, const AmplitudeTensor& b) {
  return std::norm(overlap(a, b));
}

}  // namespace entkit
