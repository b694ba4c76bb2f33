#include "entkit/detect.hpp"

#include <algorithm>
#include <cmath>

namespace entkit {

namespace {

void require_positive_eps(double eps) {
  if (!(eps > 0.0)) {
    throw NonPositiveTolerance("eps must be > 0, got " + std::to_string(eps));
  }
}

// Reduced density operator on the smaller block of the matricization.
Eigen::MatrixXcd smaller_side_density(const Eigen::MatrixXcd& a) {
  if (a.rows() <= a.cols()) {
    return a * a.adjoint();
  }
  return a.adjoint() * a;
}

}  // namespace

MinorFunction abs2_functional() {
  return {"abs2", [](Complex x) { return std::norm(x); }};
}

MinorFunction abs_functional() {
  return {"abs", [](Complex x) { return std::abs(x); }};
}

MinorFunction abs_pow_functional(double p) {
  if (!(p > 0.0)) {
    throw NonPositiveTolerance("abs_p exponent must be > 0, got " +
                               std::to_string(p));
  }
  return {"abs_p:" + std::to_string(p),
          [p](Complex x) { return std::pow(std::abs(x), p); }};
}

MinorFunction minor_function_by_name(const std::string& name) {
  if (name == "abs2") return abs2_functional();
  if (name == "abs") return abs_functional();
  if (name.rfind("abs_p:", 0) == 0) {
    const std::string arg = name.substr(6);
    try {
      std::size_t used = 0;
      const double p = std::stod(arg, &used);
      if (used == arg.size()) return abs_pow_functional(p);
    } catch (const std::logic_error&) {
    }
    throw UnknownName("bad abs_p exponent '" + arg + "'");
  }
  throw UnknownName("no minor function named '" + name +
                    "' (try abs2, abs, abs_p:<p>)");
}

double minor_sum(const AmplitudeTensor& state, const Bipartition& bp,
                 const MinorFunction& f) {
  const Eigen::MatrixXcd a = matricize(state, bp);
  double total = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index rp = 0; rp < a.rows(); ++rp) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        for (Eigen::Index cp = 0; cp < a.cols(); ++cp) {
          total += f.eval(a(r, c) * a(rp, cp) - a(r, cp) * a(rp, c));
        }
      }
    }
  }
  return total;
}

double m_functional(const AmplitudeTensor& state, const Bipartition& bp) {
  const Eigen::MatrixXcd a = matricize(state, bp);
  const Eigen::MatrixXcd rho = smaller_side_density(a);
  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
  const double purity = rho.squaredNorm();
  return 2.0 * (1.0 - purity);
}

FactorizabilityResult is_factorizable(const AmplitudeTensor& state,
                                      const Bipartition& bp, double eps) {
  require_positive_eps(eps);
  const Eigen::MatrixXcd a = matricize(state, bp);
  const Eigen::MatrixXcd rho = smaller_side_density(a);
  const double m = 2.0 * (1.0 - rho.squaredNorm());

  const double d = static_cast<double>(std::min(a.rows(), a.cols()));
  FactorizabilityResult result;
  result.m_value = m;
  result.factorizable = m <= eps * (d - 1.0) / d;
  if (!result.factorizable) {
    return result;
  }

  // Witness from the maximal-modulus pivot (r0, c0):
  // alpha_r = A(r, c0) / A(r0, c0), beta_c = A(r0, c).
  Eigen::Index r0 = 0, c0 = 0;
  a.cwiseAbs().maxCoeff(&r0, &c0);
  const Complex pivot = a(r0, c0);
  Eigen::VectorXcd alpha = a.col(c0) / pivot;
  Eigen::VectorXcd beta = a.row(r0).transpose();
  alpha.normalize();
  beta.normalize();
  result.witness = FactorizabilityWitness{std::move(alpha), std::move(beta)};
  return result;
}

std::string to_string(SeparabilityClass c) {
  switch (c) {
    case SeparabilityClass::FullySeparable:
      return "FullySeparable";
    case SeparabilityClass::PartiallySeparable:
      return "PartiallySeparable";
    case SeparabilityClass::GenuinelyEntangled:
      return "GenuinelyEntangled";
  }
  return "?";
}

namespace {

// Recursively splits `state` (whose parts correspond to the original
// subsystem indices in `labels`) along its first factorizable bipartition,
// appending the resulting product blocks in terms of original labels.
void finest_blocks(const AmplitudeTensor& state,
                   const std::vector<int>& labels, double eps,
                   std::vector<std::vector<int>>& out) {
  if (state.num_parts() == 1) {
    out.push_back(labels);
    return;
  }
  for (const Bipartition& bp : enumerate_bipartitions(state.num_parts())) {
    const FactorizabilityResult r = is_factorizable(state, bp, eps);
    if (!r.factorizable) continue;

    const auto sub = [&](const std::vector<int>& parts,
                         const Eigen::VectorXcd& amps) {
      std::vector<int> sub_dims, sub_labels;
      for (int p : parts) {
        sub_dims.push_back(state.dims[p]);
        sub_labels.push_back(labels[p]);
      }
      finest_blocks(make_state(sub_dims, amps, /*normalize=*/true), sub_labels,
                    eps, out);
    };
    sub(bp.left, r.witness->left);
    sub(bp.right, r.witness->right);
    return;
  }
  out.push_back(labels);  // no factorizable split: the block is entangled
}

}  // namespace

EntanglementReport classify(const AmplitudeTensor& state, double eps) {
  require_positive_eps(eps);
  if (state.num_parts() < 2) {
    throw TooFewParts("classification needs at least 2 subsystems");
  }

  EntanglementReport report;
  for (const Bipartition& bp : enumerate_bipartitions(state.num_parts())) {
    const FactorizabilityResult r = is_factorizable(state, bp, eps);
    report.per_bipartition.push_back({bp, r.m_value, r.factorizable});
  }

  std::vector<int> labels(state.num_parts());
  for (int p = 0; p < state.num_parts(); ++p) labels[p] = p;
  finest_blocks(state, labels, eps, report.blocks);
  std::sort(report.blocks.begin(), report.blocks.end());

  if (report.blocks.size() == 1) {
    report.separability_class = SeparabilityClass::GenuinelyEntangled;
  } else if (report.blocks.size() == static_cast<std::size_t>(state.num_parts())) {
    report.separability_class = SeparabilityClass::FullySeparable;
  } else {
    report.separability_class = SeparabilityClass::PartiallySeparable;
  }
  return report;
}

}  // namespace entkit
