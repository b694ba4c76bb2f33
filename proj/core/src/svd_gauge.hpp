#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

namespace entkit::detail {

// Schmidt data of a complex matrix A: A = sum_j sigma_j u_j w_j^T with
// sigma descending, u orthonormal columns of `left`, w orthonormal columns
// of `right_kets` (note: kets, i.e. conj of the usual V columns, so the
// bipartite state rebuilds as sum_j sigma_j u_j (x) w_j without further
// conjugation).
struct GaugedSvd {
  Eigen::VectorXd sigma;
  Eigen::MatrixXcd left;
  Eigen::MatrixXcd right_kets;
};

// Lexicographic comparison of complex vectors by (re, im) pairs,
// "larger first" so standard basis vectors keep their natural order.
inline bool lex_before(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() > b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() > b[i].imag();
  }
  return false;
}

// Full SVD with a deterministic gauge: in each left singular vector the
// first component of modulus > 1e-12 is made real positive, the
// compensating phase moves to the paired right ket. Singular-value ties
// (within 1e-12 absolute) are ordered by lex_before on the gauge-fixed
// left vectors, which makes degenerate decompositions reproducible.
inline GaugedSvd gauge_fixed_svd(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index k = std::min(a.rows(), a.cols());

  GaugedSvd out;
  out.sigma = svd.singularValues();
  out.left = svd.matrixU();
  out.right_kets = svd.matrixV().conjugate();

  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < out.left.rows(); ++i) {
      const std::complex<double> c = out.left(i, j);
      if (std::abs(c) > 1e-12) {
        const std::complex<double> phase = c / std::abs(c);
        out.left.col(j) /= phase;
        out.right_kets.col(j) *= phase;
        break;
      }
    }
  }

  // Reorder tied singular values deterministically.
  std::vector<Eigen::Index> order(k);
  std::iota(order.begin(), order.end(), 0);
  Eigen::Index start = 0;
  while (start < k) {
    Eigen::Index end = start + 1;
    while (end < k && out.sigma[start] - out.sigma[end] <= 1e-12) ++end;
    std::sort(order.begin() + start, order.begin() + end,
              [&](Eigen::Index x, Eigen::Index y) {
                return lex_before(out.left.col(x), out.left.col(y));
              });
    start = end;
  }
  GaugedSvd sorted;
  sorted.sigma.resize(out.sigma.size());
  sorted.left.resize(out.left.rows(), out.left.cols());
  sorted.right_kets.resize(out.right_kets.rows(), out.right_kets.cols());
  for (Eigen::Index j = 0; j < k; ++j) {
    sorted.sigma[j] = out.sigma[order[j]];
    sorted.left.col(j) = out.left.col(order[j]);
    sorted.right_kets.col(j) = out.right_kets.col(order[j]);
  }
  // Columns beyond k (full bases of the larger side) keep Jacobi's order.
  for (Eigen::Index j = k; j < out.left.cols(); ++j) {
    sorted.left.col(j) = out.left.col(j);
  }
  for (Eigen::Index j = k; j < out.right_kets.cols(); ++j) {
    sorted.right_kets.col(j) = out.right_kets.col(j);
  }
  return sorted;
}

}  // namespace entkit::detail
