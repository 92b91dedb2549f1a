#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "capent/dynamics.hpp"
#include "capent/errors.hpp"
#include "capent/measures.hpp"
#include "capent/scalar_search.hpp"
#include "oracles.hpp"

using namespace capent;

namespace {

constexpr BipartiteDims kQubits{2, 2};

BipartitePureState two_term(double p) {
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(p);
  v(3) = std::sqrt(1.0 - p);
  return BipartitePureState::from_amplitudes(v, kQubits);
}

BipartitePureState bell() { return two_term(0.5); }

Qubit ket(Complex a, Complex b) { return Qubit(a, b); }

Eigen::Matrix3d random_rotation(oracle::Rng& rng) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  }
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

std::array<double, 3> sorted_mu(oracle::Rng& rng) {
  std::array<double, 3> mu{rng.uniform(), rng.uniform(), rng.uniform()};
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return mu;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double reduced_weight(const BipartitePureState& psi) {
  return oracle::schmidt_weights(psi.amplitudes(), 2, 2)[1];
}

}  // namespace

TEST(NonlocalHamiltonian, ValidatesCanonicalParameters) {
  EXPECT_THROW(NonlocalHamiltonian({0.5, 1.0, 0.2}), DomainError);
  EXPECT_THROW(NonlocalHamiltonian({1.0, 0.5, -0.2}), DomainError);
  EXPECT_THROW(NonlocalHamiltonian({1.0, 0.5, 0.2}, 0), DomainError);
  EXPECT_THROW(NonlocalHamiltonian({1.0, 0.5, 0.2}).raw_matrix(), ConfigurationError);
}

TEST(NonlocalHamiltonian, MatrixMatchesPauliOracleForBothSigns) {
  for (int sign : {+1, -1}) {
    const NonlocalHamiltonian h({1.0, 0.5, 0.2}, sign);
    EXPECT_LT(max_abs(h.matrix() - oracle::canonical_hamiltonian(1.0, 0.5, 0.2, sign)), 1e-15);
    EXPECT_LT(max_abs(h.matrix() - h.matrix().adjoint()), 1e-15);
  }
}

TEST(CanonicalForm, Examples) {
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  const NonlocalHamiltonian d = canonical_form(zero, zero, Eigen::Vector3d(1, 0.5, 0.2).asDiagonal());
  EXPECT_NEAR(d.mu()[0], 1.0, 1e-15);
  EXPECT_NEAR(d.mu()[1], 0.5, 1e-15);
  EXPECT_NEAR(d.mu()[2], 0.2, 1e-15);
  EXPECT_EQ(d.sign(), +1);

  const NonlocalHamiltonian z = canonical_form(zero, zero, Eigen::Matrix3d::Zero());
  EXPECT_EQ(z.mu(), (std::array<double, 3>{0.0, 0.0, 0.0}));
  EXPECT_EQ(z.sign(), +1);

  oracle::Rng rng(3);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Matrix3d g =
        random_rotation(rng) * Eigen::Vector3d(1, 0.5, 0.2).asDiagonal() * random_rotation(rng).transpose();
    const NonlocalHamiltonian h = canonical_form(zero, zero, g);
    EXPECT_NEAR(h.mu()[0], 1.0, 1e-10);
    EXPECT_NEAR(h.mu()[1], 0.5, 1e-10);
    EXPECT_NEAR(h.mu()[2], 0.2, 1e-10);
    EXPECT_EQ(h.sign(), +1);
  }
  const NonlocalHamiltonian neg =
      canonical_form(zero, zero, Eigen::Vector3d(-1, 0.5, 0.2).asDiagonal());
  EXPECT_EQ(neg.sign(), -1);
}

TEST(CanonicalForm, RawMatrixKeepsLocalTerms) {
  const Eigen::Vector3d alpha(0.1, -0.2, 0.3);
  const Eigen::Vector3d beta(0.0, 0.4, 0.0);
  const Eigen::Matrix3d gamma = Eigen::Vector3d(1, 0.5, 0.2).asDiagonal();
  const NonlocalHamiltonian h = canonical_form(alpha, beta, gamma);
  const oracle::Mat sx = oracle::pauli_x(), sy = oracle::pauli_y(), sz = oracle::pauli_z();
  const oracle::Mat id = oracle::identity(2);
  const oracle::Mat expected = 0.1 * oracle::kron(sx, id) - 0.2 * oracle::kron(sy, id) +
                               0.3 * oracle::kron(sz, id) + 0.4 * oracle::kron(id, sy) +
                               oracle::canonical_hamiltonian(1.0, 0.5, 0.2);
  EXPECT_LT(max_abs(h.raw_matrix() - expected), 1e-15);
}

TEST(EvolveExact, Examples) {
  const NonlocalHamiltonian h({1.0, 0.5, 0.2});
  const BipartitePureState psi = haar_random_pure(2, 2, 1);
  EXPECT_LT((evolve_exact(h, psi, 0.0).amplitudes() - psi.amplitudes()).norm(), 1e-15);

  const NonlocalHamiltonian heis({1.0, 1.0, 1.0});
  for (double t : {0.1, 0.7, 2.3}) {
    const std::vector<double> w = oracle::schmidt_weights(evolve_exact(heis, bell(), t).amplitudes(), 2, 2);
    EXPECT_NEAR(w[0], 0.5, 1e-12);
    EXPECT_NEAR(w[1], 0.5, 1e-12);
  }
  EXPECT_THROW(evolve_exact(h, haar_random_pure(2, 3, 1), 0.1), DomainError);
}

TEST(EvolveExact, MatchesPadeExponentialAndPreservesNorm) {
  oracle::Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const std::array<double, 3> mu = sorted_mu(rng);
    const int sign = k % 2 ? -1 : +1;
    const NonlocalHamiltonian h(mu, sign);
    const BipartitePureState psi = haar_random_pure(2, 2, 100 + k);
    const double t = rng.uniform(-3.0, 3.0);
    const Vector expected = oracle::expm_minus_i(h.matrix(), t) * psi.amplitudes();
    const BipartitePureState out = evolve_exact(h, psi, t);
    EXPECT_LT((out.amplitudes() - expected).norm(), 1e-12);
    EXPECT_NEAR(out.amplitudes().norm(), 1.0, 1e-12);
  }
}

TEST(EvolveExact, FamilySpectrumFollowsClosedForm) {
  oracle::Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const std::array<double, 3> mu = sorted_mu(rng);
    const NonlocalHamiltonian h(mu);
    const double p = rng.uniform();
    const double t = rng.uniform(0.0, 5.0);
    const std::vector<double> w = oracle::schmidt_weights(evolve_exact(h, two_term(p), t).amplitudes(), 2, 2);
    const auto [l1, l2] = evolved_schmidt_weights(p, h.theta(), t);
    EXPECT_NEAR(std::min(l1, l2), w[1], 1e-10);
    EXPECT_NEAR(std::max(l1, l2), w[0], 1e-10);
  }
}

TEST(EvolvedSchmidtWeights, Examples) {
  const auto [a1, a2] = evolved_schmidt_weights(0.3, 0.7, 0.0);
  EXPECT_NEAR(a1, 0.3, 1e-15);
  EXPECT_NEAR(a2, 0.7, 1e-15);
  const auto [b1, b2] = evolved_schmidt_weights(1.0, 0.5, M_PI / 2.0);
  EXPECT_NEAR(b1, 0.5, 1e-15);
  EXPECT_NEAR(b2, 0.5, 1e-15);
  for (double t : {0.0, 1.0, 9.0}) {
    const auto [c1, c2] = evolved_schmidt_weights(0.5, 1.0, t);
    EXPECT_EQ(c1, 0.5);
    EXPECT_EQ(c2, 0.5);
  }
}

TEST(Orthocomplement, IsOrthogonalAndUnit) {
  oracle::Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const Qubit q = bloch_qubit(rng.uniform(0.0, M_PI), rng.uniform(0.0, 2 * M_PI));
    const Qubit qp = orthocomplement(q);
    EXPECT_NEAR(std::abs(q.dot(qp)), 0.0, 1e-15);
    EXPECT_NEAR(qp.norm(), 1.0, 1e-15);
  }
}

TEST(SchmidtWeightRate, Examples) {
  const Matrix zz = oracle::kron(oracle::pauli_z(), oracle::pauli_z());
  const Qubit zero = ket(1, 0), one = ket(0, 1);
  EXPECT_NEAR(schmidt_weight_rate(zz, zero, zero, one, one, 0.3), 0.0, 1e-15);

  const Matrix hp = NonlocalHamiltonian({1.0, 0.5, 0.2}).matrix();
  EXPECT_NEAR(schmidt_weight_rate(hp, zero, one, one, ket(Complex(0, 1), 0), 0.5), 1.5, 1e-14);
  EXPECT_NEAR(schmidt_weight_rate(hp, zero, one, one, ket(Complex(0, 1), 0), 0.0), 0.0, 0.0);
  EXPECT_NEAR(schmidt_weight_rate(hp, zero, one, one, ket(Complex(0, 1), 0), 1.0), 0.0, 0.0);
  EXPECT_THROW(schmidt_weight_rate(hp, zero, one, zero, zero, 0.5), DomainError);
}

TEST(SchmidtWeightRate, AgreesWithFiniteDifferences) {
  oracle::Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const NonlocalHamiltonian h(sorted_mu(rng));
    const BipartitePureState psi = haar_random_pure(2, 2, 300 + k);
    const SchmidtDecomposition sd = schmidt_decompose(psi);
    if (sd.weights(0) - sd.weights(1) < 1e-3) continue;
    const Qubit phi = sd.basis_a.col(1);
    const Qubit chi = sd.basis_b.col(1);
    const Qubit phi_perp = sd.basis_a.col(0);
    const Qubit chi_perp = sd.basis_b.col(0);
    const double rate = schmidt_weight_rate(h.matrix(), phi, chi, phi_perp, chi_perp, sd.weights(1));
    const double step = 1e-6;
    const double fd = (reduced_weight(evolve_exact(h, psi, step)) -
                       reduced_weight(evolve_exact(h, psi, -step))) /
                      (2.0 * step);
    EXPECT_NEAR(rate, fd, 1e-5);
  }
}

TEST(HElement, Examples) {
  const Qubit zero = ket(1, 0), one = ket(0, 1);
  const NonlocalHamiltonian h({1.0, 0.5, 0.2});
  EXPECT_NEAR(std::abs(h_element(h.matrix(), zero, one)), 1.5, 1e-14);
  EXPECT_NEAR(std::abs(h_element(Matrix::Zero(4, 4), zero, one)), 0.0, 0.0);
  const Eigen::Vector3d alpha(0.3, 0.1, -0.4), beta(-0.2, 0.5, 0.1);
  const NonlocalHamiltonian local = canonical_form(alpha, beta, Eigen::Matrix3d::Zero());
  oracle::Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const Qubit phi = bloch_qubit(rng.uniform(0.0, M_PI), rng.uniform(0.0, 2 * M_PI));
    const Qubit chi = bloch_qubit(rng.uniform(0.0, M_PI), rng.uniform(0.0, 2 * M_PI));
    EXPECT_NEAR(std::abs(h_element(local.raw_matrix(), phi, chi, rng.uniform(0.0, 6.0))), 0.0, 1e-14);
  }
}

TEST(HMax, ClosedFormAndNumericSearch) {
  EXPECT_EQ(h_max(NonlocalHamiltonian({1.0, 0.5, 0.2})), 1.5);
  EXPECT_EQ(h_max(NonlocalHamiltonian({0.0, 0.0, 0.0})), 0.0);
  const HMaxSearch s = h_max_numeric(NonlocalHamiltonian({1.0, 0.5, 0.2}).matrix());
  EXPECT_NEAR(s.value, 1.5, 1e-6);
  EXPECT_LE(s.grid_value, s.value + 1e-12);
  oracle::Rng rng(23);
  for (int k = 0; k < 5; ++k) {
    const NonlocalHamiltonian h(sorted_mu(rng));
    EXPECT_NEAR(h_max_numeric(h.matrix()).value, h_max(h), 1e-6);
  }
}

TEST(HMax, BoundsEveryMatrixElement) {
  oracle::Rng rng(29);
  for (int k = 0; k < 5; ++k) {
    const NonlocalHamiltonian h(sorted_mu(rng), k % 2 ? -1 : 1);
    const Matrix hm = h.matrix();
    for (int j = 0; j < 10000; ++j) {
      const Qubit phi = bloch_qubit(rng.uniform(0.0, M_PI), rng.uniform(0.0, 2 * M_PI));
      const Qubit chi = bloch_qubit(rng.uniform(0.0, M_PI), rng.uniform(0.0, 2 * M_PI));
      ASSERT_LE(std::abs(h_element(hm, phi, chi, rng.uniform(0.0, 2 * M_PI))), h_max(h) + 1e-9);
    }
  }
}

TEST(RateFactorF, ValuesLimitsAndShape) {
  EXPECT_NEAR(rate_factor_f(0.5, LogBase::E), 0.0, 1e-15);
  EXPECT_EQ(rate_factor_f(0.0, LogBase::E), 0.0);
  EXPECT_EQ(rate_factor_f(1.0, LogBase::E), 0.0);
  EXPECT_LT(std::abs(rate_factor_f(1e-20, LogBase::E)), 1e-6);

  // Independent evaluation of 2 sqrt(p(1-p)) dC/dp by a centered difference.
  for (double p : {0.0045, 0.1, 0.3, 0.8}) {
    const double h = 1e-6;
    const double dcdp = (oracle::capacity_raw({p + h, 1 - p - h}, 1.0) -
                         oracle::capacity_raw({p - h, 1 - p + h}, 1.0)) /
                        (2 * h);
    EXPECT_NEAR(rate_factor_f(p, LogBase::E), 2 * std::sqrt(p * (1 - p)) * dcdp, 1e-5);
  }
  EXPECT_NEAR(rate_factor_f(0.0045, LogBase::E), 2.42, 5e-3);

  const auto [p0, f0] = oracle::brent_max([](double p) { return rate_factor_f(p, LogBase::E); },
                                          1e-9, 0.5);
  EXPECT_NEAR(p0, 0.0045, 5e-5);
  EXPECT_NEAR(f0, 2 * 1.2108, 1e-3);

  const GridScan g =
      grid_scan_max([](double p) { return rate_factor_f(p, LogBase::E); }, 0.0, 0.5, 100001);
  EXPECT_EQ(g.local_maxima, 1u);
}

TEST(RateFactorF, BaseTwoIsTheExactDerivative) {
  const double ln2 = std::numbers::ln2;
  for (double p : {0.01, 0.2, 0.7}) {
    const double h = 1e-6;
    const double dcdp = (oracle::capacity_raw({p + h, 1 - p - h}, ln2) -
                         oracle::capacity_raw({p - h, 1 - p + h}, ln2)) /
                        (2 * h);
    EXPECT_NEAR(rate_factor_f(p, LogBase::Two), 2 * std::sqrt(p * (1 - p)) * dcdp, 1e-5);
  }
}

TEST(EntropyRateFactor, MatchesDerivativeOfBinaryEntropy) {
  for (double p : {0.05, 0.25, 0.6}) {
    const double h = 1e-6;
    const double ds = (oracle::binary_entropy(p + h, 1.0) - oracle::binary_entropy(p - h, 1.0)) / (2 * h);
    EXPECT_NEAR(entropy_rate_factor(p, LogBase::E), 2 * std::sqrt(p * (1 - p)) * ds, 1e-6);
  }
}

TEST(AncillaRateFactor, Examples) {
  EXPECT_NEAR(ancilla_rate_factor(0.25, LogBase::E), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ancilla_rate_factor(0.6036, LogBase::E)), 1.4459, 1e-3);
  const auto [p0, f0] =
      oracle::brent_max([](double p) { return ancilla_rate_factor(p, LogBase::E); }, 1e-9, 1 - 1e-9);
  EXPECT_NEAR(p0, 0.6036, 5e-4);
  EXPECT_NEAR(f0, 1.4459, 1e-3);
  const double r = (1 - p0) / 3;
  EXPECT_NEAR(oracle::capacity_raw({p0, r, r, r}, 1.0), 0.5523, 1e-3);
}

TEST(HTildeMax, Examples) {
  EXPECT_NEAR(h_tilde_max(NonlocalHamiltonian({1.0, 0.5, 0.2})), 1.7, 1e-15);
  const NonlocalHamiltonian flat({1.0, 0.5, 0.0});
  EXPECT_EQ(h_tilde_max(flat), h_max(flat));
  EXPECT_EQ(h_tilde_max(NonlocalHamiltonian({1.0, 1.0, 1.0})), 3.0);
}

TEST(GammaCMax, ExamplesAndFiniteDifferenceAtMaxRateState) {
  EXPECT_NEAR(gamma_c_max(0.5, 1.0, 1.0, LogBase::E), 0.0, 1e-15);
  EXPECT_NEAR(gamma_c_max(0.0045, 1.0, 1.0, LogBase::E), 2.0 * rate_factor_f(0.0045, LogBase::E),
              1e-14);

  const BipartitePureState s = max_rate_state(0.3);
  EXPECT_NEAR(std::norm(s.amplitudes()(1)), 0.3, 1e-15);
  EXPECT_NEAR(std::norm(s.amplitudes()(2)), 0.7, 1e-15);

  oracle::Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const std::array<double, 3> mu = sorted_mu(rng);
    const double p = rng.uniform(0.01, 0.99);
    const NonlocalHamiltonian h(mu);
    const double step = 1e-6;
    auto cap = [&](double t) {
      return oracle::capacity_raw(oracle::schmidt_weights(evolve_exact(h, max_rate_state(p), t).amplitudes(), 2, 2), 1.0);
    };
    const double fd = (cap(step) - cap(-step)) / (2 * step);
    EXPECT_NEAR(fd, gamma_c_max(p, mu[0], mu[1], LogBase::E), 1e-5);
  }
}

TEST(CapacityRate, ChainRuleAgreesWithPairwiseFormAndTrajectory) {
  oracle::Rng rng(43);
  for (int k = 0; k < 30; ++k) {
    const NonlocalHamiltonian h(sorted_mu(rng));
    const BipartitePureState psi = haar_random_pure(2, 2, 500 + k);
    const SchmidtDecomposition sd = schmidt_decompose(psi);
    const RealVector rates = schmidt_weight_rates(h.matrix(), sd, kQubits);
    EXPECT_NEAR(rates.sum(), 0.0, 1e-12);
    const std::span<const double> w(sd.weights.data(), static_cast<std::size_t>(sd.weights.size()));
    const std::span<const double> r(rates.data(), static_cast<std::size_t>(rates.size()));
    const double direct = capacity_rate(w, r, LogBase::E);
    EXPECT_NEAR(direct, capacity_rate_pairwise(w, r, LogBase::E), 1e-10);
    const std::vector<double> t0{0.0};
    const Trajectory traj = simulate_trajectory(h.matrix(), psi, t0, LogBase::E);
    EXPECT_NEAR(direct, traj.samples[0].gamma_c, 1e-5);
  }
}

TEST(Trajectory, SamplesAreSelfConsistent) {
  const NonlocalHamiltonian h({1.0, 0.4, 0.1});
  const std::vector<double> times{0.0, 0.2, 0.5, 1.0, 2.0};
  const Trajectory traj = simulate_trajectory(h, two_term(0.2), times, LogBase::Two);
  ASSERT_EQ(traj.samples.size(), times.size());
  double c_max = 0.0;
  for (int i = 1; i < 1000; ++i) c_max = std::max(c_max, capacity_two_qubit_closed(i / 1000.0, LogBase::Two));
  for (const TrajectorySample& s : traj.samples) {
    EXPECT_NEAR(s.schmidt_weights.sum(), 1.0, 1e-10);
    std::vector<double> w(s.schmidt_weights.data(), s.schmidt_weights.data() + s.schmidt_weights.size());
    EXPECT_NEAR(s.capacity, oracle::capacity_raw(w, std::numbers::ln2), 1e-10);
    EXPECT_NEAR(s.entropy, oracle::shannon(w, std::numbers::ln2), 1e-10);
    EXPECT_GE(s.entropy, 0.0);
    EXPECT_LE(s.entropy, 1.0 + 1e-12);
    EXPECT_LE(s.capacity, c_max + 1e-6);
    const double theta = h.theta();
    const double eta = 0.6 * std::cos(2 * theta * s.time);
    const double ds_dt =
        std::atanh(eta) / std::numbers::ln2 * 0.6 * 2 * theta * std::sin(2 * theta * s.time);
    EXPECT_NEAR(s.gamma, ds_dt, 1e-6);
    EXPECT_NEAR(s.delta_h, theta * 0.6, 1e-12);
  }
}
