#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "capent/measures.hpp"
#include "capent/mixed_capacity.hpp"
#include "oracles.hpp"

using namespace capent;

namespace {

constexpr double kLn2 = std::numbers::ln2;

Matrix random_hermitian(oracle::Rng& rng, int d) {
  oracle::Mat a(d, d);
  for (int j = 0; j < d; ++j) a.col(j) = rng.complex_gaussian(d);
  return 0.5 * (a + a.adjoint());
}

std::vector<double> eigenvalues_of(const DensityOperator& rho) {
  return oracle::hermitian_eigenvalues(rho.matrix());
}

}  // namespace

TEST(Properties, AdditivityUnderTensorProduct) {
  for (int k = 0; k < 50; ++k) {
    const DensityOperator rho = random_density(2 + k % 3, 100 + k);
    const DensityOperator sigma = random_density(2 + k % 2, 200 + k);
    const double joint = capacity_of(tensor_product(rho, sigma), LogBase::Two).capacity;
    const double sum = capacity_of(rho, LogBase::Two).capacity + capacity_of(sigma, LogBase::Two).capacity;
    EXPECT_NEAR(joint, sum, 1e-9);
    EXPECT_NEAR(joint, oracle::capacity_raw(eigenvalues_of(tensor_product(rho, sigma)), kLn2), 1e-9);
  }
}

TEST(Properties, PositivityAndFlatZero) {
  for (int k = 0; k < 200; ++k) {
    const DensityOperator rho = random_density(2 + k % 7, 300 + k);
    EXPECT_GE(capacity_of(rho, LogBase::E).capacity, 0.0);
    const BipartitePureState psi = haar_random_pure(2 + k % 3, 2 + k % 4, 600 + k);
    EXPECT_GE(capacity_pure(psi, LogBase::E).capacity, 0.0);
  }
  for (int d = 1; d <= 12; ++d) {
    const DensityOperator flat = DensityOperator::from_matrix(Matrix::Identity(d, d) / static_cast<double>(d));
    EXPECT_NEAR(capacity_of(flat, LogBase::Two).capacity, 0.0, 1e-10);
  }
}

TEST(Properties, BaseConversion) {
  for (int k = 0; k < 100; ++k) {
    const DensityOperator rho = random_density(2 + k % 5, 900 + k);
    const CapacityResult e = capacity_of(rho, LogBase::E);
    const CapacityResult two = capacity_of(rho, LogBase::Two);
    EXPECT_NEAR(two.capacity * kLn2 * kLn2, e.capacity, 1e-12);
    EXPECT_NEAR(two.entropy * kLn2, e.entropy, 1e-12);
  }
}

TEST(Properties, VarianceUncertaintyIsConvex) {
  oracle::Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 4;
    const Matrix k1 = random_hermitian(rng, d);
    const Matrix k2 = random_hermitian(rng, d);
    const DensityOperator tau = random_density(d, 1200 + k);
    const double p = rng.uniform();
    const double lhs = std::sqrt(observable_variance(p * k1 + (1 - p) * k2, tau));
    const double rhs = p * std::sqrt(observable_variance(k1, tau)) + (1 - p) * std::sqrt(observable_variance(k2, tau));
    EXPECT_LE(lhs, rhs + 1e-12);
  }
}

TEST(Properties, PerturbedModularHamiltonianSpread) {
  oracle::Rng rng(23);
  for (int k = 0; k < 200; ++k) {
    const int d = 2 + k % 4;
    const DensityOperator rho = random_density(d, 1500 + k);
    const Matrix kmod = modular_hamiltonian(rho, LogBase::E).matrix;
    const Matrix v = random_hermitian(rng, d);
    const double x = rng.uniform(-2.0, 2.0);
    const double spread = std::sqrt(observable_variance(kmod + x * v, rho));
    const double bound =
        std::sqrt(observable_variance(kmod, rho)) + std::abs(x) * std::sqrt(observable_variance(v, rho));
    EXPECT_LE(spread, bound + 1e-12);
  }
}

TEST(Properties, PartialTraceOfProduct) {
  for (int k = 0; k < 30; ++k) {
    const DensityOperator rho = random_density(2 + k % 3, 1800 + k);
    const DensityOperator sigma = random_density(2 + k % 2, 1900 + k);
    const DensityOperator joint = tensor_product(rho, sigma);
    EXPECT_LT((partial_trace(joint, Subsystem::A).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((partial_trace(joint, Subsystem::B).matrix() - sigma.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Properties, RelativeEntropyNonNegative) {
  for (int k = 0; k < 100; ++k) {
    const int d = 2 + k % 4;
    const DensityOperator rho = random_density(d, 2100 + k);
    const DensityOperator sigma = random_density(d, 2200 + k);
    const double s = relative_entropy(rho, sigma, LogBase::E);
    EXPECT_GE(s, -1e-12);
    EXPECT_NEAR(s, oracle::relative_entropy_full_rank(rho.matrix(), sigma.matrix()), 1e-9);
    EXPECT_NEAR(relative_entropy(rho, rho, LogBase::E), 0.0, 1e-12);
  }
}

TEST(Properties, MixedCapacityReducesToPure) {
  for (int k = 0; k < 200; ++k) {
    const BipartitePureState psi = haar_random_pure(2, 2, 5000 + k);
    const DensityOperator sigma = closest_separable_pure(psi).sigma_star;
    EXPECT_NEAR(capacity_mixed(density_from_pure(psi), sigma, LogBase::E), capacity_pure(psi, LogBase::E).capacity,
                1e-8);
  }
}
