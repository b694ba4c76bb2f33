#include "entkit/schmidt.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

#include "svd_gauge.hpp"

namespace entkit {

namespace {
constexpr double kRankCutoff = 1e-12;
}

DensityMatrix make_density(Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw DimensionMismatch("density matrix must be square and nonempty");
  }
  const double herm_defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-12) {
    throw Error("NotHermitian", "max |rho - rho^dagger| = " +
                                    std::to_string(herm_defect));
  }
  const double trace_defect = std::abs(entries.trace() - Complex(1.0, 0.0));
  if (trace_defect > 1e-10) {
    throw Error("TraceNotOne",
                "trace deviates from 1 by " + std::to_string(trace_defect));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      entries, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw Error("NotPositiveSemidefinite",
                "minimum eigenvalue " +
                    std::to_string(solver.eigenvalues().minCoeff()));
  }
  return DensityMatrix{std::move(entries)};
}

DensityMatrix reduced_density(const AmplitudeTensor& state,
                              const Bipartition& bp, Side side) {
  const Eigen::MatrixXcd a = matricize(state, bp);
  Eigen::MatrixXcd rho = side == Side::Left
                             ? Eigen::MatrixXcd(a * a.adjoint())
                             : Eigen::MatrixXcd(a.adjoint() * a);
  // Symmetrize away roundoff so the validated invariants hold exactly.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return make_density(std::move(rho));
}

double purity(const DensityMatrix& rho) {
  return rho.entries.squaredNorm();
}

SchmidtDecomposition schmidt_decompose(const AmplitudeTensor& state,
                                       const Bipartition& bp) {
  const Eigen::MatrixXcd a = matricize(state, bp);
  const detail::GaugedSvd svd = detail::gauge_fixed_svd(a);

  Eigen::Index rank = 0;
  while (rank < svd.sigma.size() && svd.sigma[rank] >= kRankCutoff) ++rank;

  SchmidtDecomposition out;
  out.coefficients = svd.sigma.head(rank);
  out.left_basis = svd.left.leftCols(rank);
  out.right_basis = svd.right_kets.leftCols(rank);
  out.bipartition = bp;
  return out;
}

AmplitudeTensor max_entangled_state(
    const std::vector<int>& dims, const Bipartition& bp,
    const std::vector<double>& phases,
    const std::optional<std::vector<Eigen::VectorXcd>>& right_states) {
  detail::require_valid_for(bp, static_cast<int>(dims.size()));
  const Eigen::Index rows = block_dim(dims, bp.left);
  const Eigen::Index cols = block_dim(dims, bp.right);
  const Eigen::Index d = std::min(rows, cols);

  if (static_cast<Eigen::Index>(phases.size()) != d) {
    throw PhaseCountMismatch("need " + std::to_string(d) + " phases, got " +
                             std::to_string(phases.size()));
  }

  Eigen::MatrixXcd phi(cols, d);
  if (right_states) {
    if (static_cast<Eigen::Index>(right_states->size()) != d) {
      throw NonOrthonormalRightStates("need exactly " + std::to_string(d) +
                                      " right states");
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      if ((*right_states)[j].size() != cols) {
        throw NonOrthonormalRightStates(
            "right state " + std::to_string(j) + " has length " +
            std::to_string((*right_states)[j].size()) + ", expected " +
            std::to_string(cols));
      }
      phi.col(j) = (*right_states)[j];
    }
    const Eigen::MatrixXcd gram = phi.adjoint() * phi;
    const double defect =
        (gram - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
      throw NonOrthonormalRightStates("Gram matrix deviates from identity by " +
                                      std::to_string(defect));
    }
  } else {
    phi = Eigen::MatrixXcd::Identity(cols, d);
  }

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    a.row(j) = scale * std::exp(Complex(0.0, phases[j])) *
               phi.col(j).transpose();
  }
  return make_state(dims, unmatricize(a, bp, dims), /*normalize=*/false);
}

}  // namespace entkit
