#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "entkit/detect.hpp"
#include "entkit/ghz.hpp"
#include "helpers.hpp"

using namespace entkit;
namespace et = entkit::testing;

namespace {

// Frozen expected values for the seven-term example state, derived by hand
// from the reduced densities (integer amplitudes over 104):
//   rho_1 = [[54,18],[18,50]]/104, rho_2 = [[78,30],[30,26]]/104,
//   rho_3 = [[34,22],[22,70]]/104.
constexpr double kPhiM1 = 297.0 / 338.0;  // ~0.8787
constexpr double kPhiM2 = 141.0 / 338.0;  // ~0.4172
constexpr double kPhiM3 = 237.0 / 338.0;  // ~0.7012

double second_singular_value(const AmplitudeTensor& s, const Bipartition& bp) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matricize(s, bp));
  return svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
}

AmplitudeTensor tensor_product(const AmplitudeTensor& a,
                               const AmplitudeTensor& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  Eigen::VectorXcd amps(a.total_dim() * b.total_dim());
  for (Eigen::Index i = 0; i < a.total_dim(); ++i) {
    amps.segment(i * b.total_dim(), b.total_dim()) = a.amps[i] * b.amps;
  }
  return make_state(dims, std::move(amps));
}

}  // namespace

TEST_CASE("minor_sum on the worked examples") {
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(4);
  basis[0] = 1.0;
  const auto product = make_state({2, 2}, basis);
  CHECK(minor_sum(product, Bipartition::make({0}, 2), abs2_functional()) ==
        doctest::Approx(0.0).epsilon(1e-15));

  const auto w = et::w_state();
  const auto ghz = ghz_state();
  for (int k = 0; k < 3; ++k) {
    const auto bp = Bipartition::single_part(k, 3);
    CHECK(std::abs(minor_sum(w, bp, abs2_functional()) - 8.0 / 9.0) < 1e-12);
    CHECK(std::abs(minor_sum(ghz, bp, abs2_functional()) - 1.0) < 1e-12);
  }
}

TEST_CASE("m_functional reproduces the worked examples") {
  const auto psi_bis = et::psi_bis_state();
  CHECK(std::abs(m_functional(psi_bis, Bipartition::make({0}, 3))) < 1e-12);
  CHECK(std::abs(m_functional(psi_bis, Bipartition::make({0, 2}, 3)) - 1.0) <
        1e-12);
  CHECK(std::abs(m_functional(psi_bis, Bipartition::make({0, 1}, 3)) - 1.0) <
        1e-12);

  const auto phi = et::phi_state();
  const double m1 = m_functional(phi, Bipartition::single_part(0, 3));
  const double m2 = m_functional(phi, Bipartition::single_part(1, 3));
  const double m3 = m_functional(phi, Bipartition::single_part(2, 3));
  CHECK(std::abs(m1 - kPhiM1) < 1e-12);
  CHECK(std::abs(m2 - kPhiM2) < 1e-12);
  CHECK(std::abs(m3 - kPhiM3) < 1e-12);
  // Two-decimal values as commonly quoted for this state.
  CHECK(std::abs(m1 - 0.88) < 0.01);
  CHECK(std::abs(m2 - 0.42) < 0.01);
  CHECK(std::abs(m3 - 0.70) < 0.01);
  // Independent route: the brute-force minor sum.
  for (int k = 0; k < 3; ++k) {
    const auto bp = Bipartition::single_part(k, 3);
    CHECK(std::abs(m_functional(phi, bp) -
                   minor_sum(phi, bp, abs2_functional())) < 1e-10);
  }

  const auto bell = et::bell_state();
  CHECK(std::abs(m_functional(bell, Bipartition::make({0}, 2)) - 1.0) < 1e-12);
}

TEST_CASE("purity identity against the brute-force oracle") {
  std::mt19937_64 seed_gen(2024);
  const std::vector<std::vector<int>> dim_sets = {
      {2, 2}, {2, 2, 2}, {2, 3, 2}, {2, 2, 2, 2}};
  for (const auto& dims : dim_sets) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto s = random_state(dims, seed_gen());
      for (const auto& bp :
           enumerate_bipartitions(static_cast<int>(dims.size()))) {
        CHECK(std::abs(minor_sum(s, bp, abs2_functional()) -
                       m_functional(s, bp)) < 1e-10);
      }
    }
  }
}

TEST_CASE("is_factorizable examples and witnesses") {
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(4);
  basis[0] = 1.0;
  const auto product = make_state({2, 2}, basis);
  const auto r = is_factorizable(product, Bipartition::make({0}, 2), 1e-9);
  REQUIRE(r.factorizable);
  REQUIRE(r.witness.has_value());
  CHECK(std::abs(r.witness->left[0]) == doctest::Approx(1.0));
  CHECK(std::abs(r.witness->left[1]) == doctest::Approx(0.0));
  CHECK(std::abs(r.witness->right[0]) == doctest::Approx(1.0));

  const auto ghz = ghz_state();
  CHECK(!is_factorizable(ghz, Bipartition::make({0}, 3), 1e-9).factorizable);

  const auto psi_bis = et::psi_bis_state();
  const auto rb = is_factorizable(psi_bis, Bipartition::make({0}, 3), 1e-9);
  REQUIRE(rb.factorizable);
  REQUIRE(rb.witness.has_value());
  CHECK(std::abs(rb.witness->left[0]) == doctest::Approx(1.0));
  // Right factor is the Bell pair on qubits 2,3.
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(rb.witness->right[0] - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(rb.witness->right[3] - Complex(s, 0)) < 1e-12);

  CHECK_THROWS_AS(is_factorizable(ghz, Bipartition::make({0}, 3), 0.0),
                  NonPositiveTolerance);
}

TEST_CASE("factorizability agrees with the SVD rank-1 oracle") {
  std::mt19937_64 rng(5150);
  std::mt19937_64 seed_gen(77);
  const std::vector<std::vector<int>> dim_sets = {{2, 2}, {2, 2, 2}, {2, 3, 2}};
  for (const auto& dims : dim_sets) {
    for (int trial = 0; trial < 50; ++trial) {
      // One random product state across a random bipartition, one generic.
      const auto bps = enumerate_bipartitions(static_cast<int>(dims.size()));
      const auto& bp = bps[rng() % bps.size()];

      std::vector<int> left_dims, right_dims;
      for (int p : bp.left) left_dims.push_back(dims[p]);
      for (int p : bp.right) right_dims.push_back(dims[p]);
      const Eigen::VectorXcd alpha =
          et::gaussian_vector(block_dim(dims, bp.left), rng).normalized();
      const Eigen::VectorXcd beta =
          et::gaussian_vector(block_dim(dims, bp.right), rng).normalized();
      const Eigen::MatrixXcd a = alpha * beta.transpose();
      const auto product = make_state(dims, unmatricize(a, bp, dims));
      const auto generic = random_state(dims, seed_gen());

      for (const auto& test_bp : bps) {
        for (const auto* state : {&product, &generic}) {
          const bool verdict =
              is_factorizable(*state, test_bp, 1e-9).factorizable;
          const bool oracle = second_singular_value(*state, test_bp) < 1e-7;
          CHECK(verdict == oracle);
        }
      }
    }
  }
}

TEST_CASE("witnesses rebuild the state") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = et::random_product_state({2, 2}, rng);
    const auto b = et::random_product_state({3, 2, 2}, rng);
    for (const auto* state : {&a, &b}) {
      for (const auto& bp :
           enumerate_bipartitions(state->num_parts())) {
        const auto r = is_factorizable(*state, bp, 1e-9);
        if (!r.factorizable) continue;
        REQUIRE(r.witness.has_value());
        const Eigen::MatrixXcd rebuilt_matrix =
            r.witness->left * r.witness->right.transpose();
        const auto rebuilt =
            make_state(state->dims, unmatricize(rebuilt_matrix, bp, state->dims),
                       /*normalize=*/true);
        CHECK(fidelity(*state, rebuilt) >= 1.0 - 1e-8);
      }
    }
  }
}

TEST_CASE("two vanishing M values force the third to vanish") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const auto product = et::random_product_state({2, 2, 2}, rng);
    double m[3];
    for (int k = 0; k < 3; ++k) {
      m[k] = m_functional(product, Bipartition::single_part(k, 3));
    }
    // Full products: all three vanish numerically, so in particular any two
    // being below 1e-12 forces the third below 1e-9.
    CHECK(m[0] < 1e-12);
    CHECK(m[1] < 1e-12);
    CHECK(m[2] < 1e-9);

    // One-part-separable states: exactly one M vanishes, the other two agree.
    const auto pair = random_state({2, 2}, rng());
    const auto split = tensor_product(et::random_product_state({2}, rng), pair);
    CHECK(m_functional(split, Bipartition::single_part(0, 3)) < 1e-12);
    const double m2 = m_functional(split, Bipartition::single_part(1, 3));
    const double m3 = m_functional(split, Bipartition::single_part(2, 3));
    CHECK(std::abs(m2 - m3) < 1e-10);
  }
}

TEST_CASE("M values are invariant under local unitaries") {
  std::mt19937_64 rng(777);
  std::mt19937_64 seed_gen(778);
  const std::vector<std::vector<int>> dim_sets = {{2, 2}, {2, 2, 2}, {2, 3, 2}};
  for (const auto& dims : dim_sets) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = random_state(dims, seed_gen());
      const auto rotated = apply_local_unitary(s, et::random_circuit(dims, rng));
      for (const auto& bp :
           enumerate_bipartitions(static_cast<int>(dims.size()))) {
        CHECK(std::abs(m_functional(s, bp) - m_functional(rotated, bp)) <=
              1e-9);
      }
    }
  }
}

TEST_CASE("M values respect the 2(D-1)/D bound") {
  std::mt19937_64 seed_gen(909);
  const std::vector<std::vector<int>> dim_sets = {{2, 2}, {2, 3, 2}, {3, 3},
                                                  {2, 2, 2, 2}};
  for (const auto& dims : dim_sets) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto s = random_state(dims, seed_gen());
      for (const auto& bp :
           enumerate_bipartitions(static_cast<int>(dims.size()))) {
        const double d = static_cast<double>(
            std::min(block_dim(dims, bp.left), block_dim(dims, bp.right)));
        CHECK(m_functional(s, bp) <= 2.0 * (d - 1.0) / d + 1e-12);
      }
    }
  }
}

TEST_CASE("every built-in functional gives the same verdict") {
  std::mt19937_64 rng(888);
  const std::vector<MinorFunction> family = {
      abs2_functional(), abs_functional(), abs_pow_functional(0.5),
      abs_pow_functional(3.0)};
  for (int trial = 0; trial < 10; ++trial) {
    const auto product = et::random_product_state({2, 2, 2}, rng);
    const auto entangled = ghz_state();
    for (const auto& f : family) {
      for (const auto& bp : enumerate_bipartitions(3)) {
        CHECK(minor_sum(product, bp, f) < 1e-4);
        CHECK(minor_sum(entangled, bp, f) > 1e-2);
      }
    }
  }
}

TEST_CASE("minor function registry") {
  CHECK(minor_function_by_name("abs2").name == "abs2");
  CHECK(minor_function_by_name("abs").name == "abs");
  CHECK(minor_function_by_name("abs_p:2.5").eval(Complex(2, 0)) ==
        doctest::Approx(std::pow(2.0, 2.5)));
  CHECK_THROWS_AS(minor_function_by_name("huh"), UnknownName);
  CHECK_THROWS_AS(minor_function_by_name("abs_p:zzz"), UnknownName);
  CHECK_THROWS_AS(abs_pow_functional(0.0), NonPositiveTolerance);
  CHECK_THROWS_AS(abs_pow_functional(-1.0), NonPositiveTolerance);
}

TEST_CASE("classify sorts the worked examples") {
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(8);
  basis[0] = 1.0;
  const auto triple = make_state({2, 2, 2}, basis);
  const auto full = classify(triple);
  CHECK(full.separability_class == SeparabilityClass::FullySeparable);
  CHECK(full.blocks.size() == 3);

  const auto phi = classify(et::phi_state());
  CHECK(phi.separability_class == SeparabilityClass::GenuinelyEntangled);
  CHECK(phi.blocks == std::vector<std::vector<int>>{{0, 1, 2}});

  const auto bis = classify(et::psi_bis_state());
  CHECK(bis.separability_class == SeparabilityClass::PartiallySeparable);
  REQUIRE(bis.blocks.size() == 2);
  CHECK(bis.blocks[0] == std::vector<int>{0});
  CHECK(bis.blocks[1] == std::vector<int>{1, 2});

  CHECK(bis.per_bipartition.size() == 3);
  CHECK(bis.per_bipartition[0].factorizable);
  CHECK(!bis.per_bipartition[1].factorizable);
  CHECK(!bis.per_bipartition[2].factorizable);

  CHECK_THROWS_AS(classify(triple, 0.0), NonPositiveTolerance);
}

TEST_CASE("classify reports the finest decomposition on four parts") {
  std::mt19937_64 rng(616);
  // (entangled pair on 0,1) x (entangled pair on 2,3)
  const auto left = random_state({2, 2}, 61);
  const auto right = random_state({2, 2}, 62);
  const auto s = tensor_product(left, right);
  const auto report = classify(s);
  CHECK(report.separability_class == SeparabilityClass::PartiallySeparable);
  REQUIRE(report.blocks.size() == 2);
  CHECK(report.blocks[0] == std::vector<int>{0, 1});
  CHECK(report.blocks[1] == std::vector<int>{2, 3});

  // Same pairs but interleaved: blocks {0,2} and {1,3}.
  const auto perm = make_state(
      {2, 2, 2, 2},
      [&] {
        Eigen::VectorXcd amps(16);
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              for (int l = 0; l < 2; ++l)
                amps[((i * 2 + j) * 2 + k) * 2 + l] =
                    left.amps[i * 2 + k] * right.amps[j * 2 + l];
        return amps;
      }());
  const auto report2 = classify(perm);
  CHECK(report2.separability_class == SeparabilityClass::PartiallySeparable);
  REQUIRE(report2.blocks.size() == 2);
  CHECK(report2.blocks[0] == std::vector<int>{0, 2});
  CHECK(report2.blocks[1] == std::vector<int>{1, 3});
}
