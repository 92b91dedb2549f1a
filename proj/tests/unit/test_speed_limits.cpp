#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "capent/errors.hpp"
#include "capent/measures.hpp"
#include "capent/speed_limits.hpp"
#include "oracles.hpp"

using namespace capent;

namespace {

constexpr double kLn2 = std::numbers::ln2;

BipartitePureState two_term(double p) {
  Vector v = Vector::Zero(4);
  v(0) = std::sqrt(p);
  v(3) = std::sqrt(1.0 - p);
  return BipartitePureState::from_amplitudes(v, {2, 2});
}

// H+ with mu1 - mu2 = theta.
Matrix family_hamiltonian(double theta) { return NonlocalHamiltonian({theta + 0.3, 0.3, 0.1}).matrix(); }

// Independent time average of sqrt(C) for the family: Simpson's rule on a
// graded grid t = T u^3, which is exact to far below the test tolerances.
double mean_sqrt_capacity_oracle(double p, double theta, double T, double ln_base) {
  const int n = 200000;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = static_cast<double>(i) / n;
    const double t = T * u * u * u;
    const double f = std::sqrt(oracle::family_from_eta(p, theta, t, ln_base).capacity) * 3 * u * u;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * f;
  }
  return acc / (3.0 * n);
}

}  // namespace

TEST(HamiltonianFluctuation, Examples) {
  const Matrix h = NonlocalHamiltonian({1.0, 0.5, 0.2}).matrix();
  const Spectrum s = hermitian_spectrum(h);
  const BipartitePureState eig = BipartitePureState::normalized(s.eigenvectors.col(0), {2, 2});
  EXPECT_NEAR(hamiltonian_fluctuation(h, eig), 0.0, 1e-7);
  EXPECT_NEAR(hamiltonian_fluctuation(family_hamiltonian(1.0), two_term(0.0)), 1.0, 1e-14);
  EXPECT_NEAR(hamiltonian_fluctuation(family_hamiltonian(1.0), two_term(0.5)), 0.0, 1e-7);
  for (double p : {0.1, 0.7, 0.95}) {
    EXPECT_NEAR(hamiltonian_fluctuation(family_hamiltonian(0.8), two_term(p)), 0.8 * std::abs(1 - 2 * p),
                1e-12);
  }
}

TEST(FubiniStudySpeed, ExamplesAndOverlapOracle) {
  EXPECT_NEAR(fubini_study_speed(family_hamiltonian(1.0), two_term(0.0)), 2.0, 1e-14);
  for (int k = 0; k < 20; ++k) {
    oracle::Rng rng(70 + k);
    oracle::Mat a(4, 4);
    for (int j = 0; j < 4; ++j) a.col(j) = rng.complex_gaussian(4);
    const Matrix h = 0.5 * (a + a.adjoint());
    const BipartitePureState psi = haar_random_pure(2, 2, 900 + k);
    const double dt = 1e-3;
    const Complex ov = psi.amplitudes().dot(oracle::expm_minus_i(h, dt) * psi.amplitudes());
    const double ds = std::sqrt(4.0 * (1.0 - std::norm(ov)));
    const double v = fubini_study_speed(h, psi);
    EXPECT_NEAR(ds / dt, v, 1e-5 * v);
  }
}

TEST(RateBoundCheck, BellIsTrivialAndFamilyHasNoViolations) {
  const NonlocalHamiltonian heis({1.0, 1.0, 1.0});
  const std::vector<double> times{0.0, 0.3, 0.9};
  for (const RateBoundSample& s :
       rate_bound_check(heis.matrix(), simulate_trajectory(heis, two_term(0.5), times, LogBase::E))) {
    EXPECT_NEAR(s.gamma, 0.0, 1e-8);
    EXPECT_FALSE(s.violated);
  }
  std::vector<double> grid;
  for (int i = 0; i <= 45; ++i) grid.push_back(0.01 * i);
  const NonlocalHamiltonian h({0.8, 0.3, 0.1});
  for (const RateBoundSample& s :
       rate_bound_check(h.matrix(), simulate_trajectory(h, two_term(1.0), grid, LogBase::Two))) {
    EXPECT_FALSE(s.violated) << "t = " << s.time;
  }
}

TEST(RateBoundCheck, HaarEnsembleHasNoViolations) {
  oracle::Rng rng(12);
  const std::vector<double> times{0.0, 0.5, 1.3};
  for (int k = 0; k < 300; ++k) {
    std::array<double, 3> mu{rng.uniform(), rng.uniform(), rng.uniform()};
    std::sort(mu.begin(), mu.end(), std::greater<>());
    const NonlocalHamiltonian h(mu, k % 2 ? -1 : 1);
    const Trajectory traj = simulate_trajectory(h, haar_random_pure(2, 2, 4000 + k), times, LogBase::E);
    for (const RateBoundSample& s : rate_bound_check(h.matrix(), traj)) ASSERT_FALSE(s.violated);
  }
}

TEST(QslTimeIndependent, ScalarFormAndErrors) {
  EXPECT_EQ(qsl_time_independent(0.0, 0.0, 0.0), 0.0);
  EXPECT_NEAR(qsl_time_independent(0.6, 1.5, 0.4), 0.6 / (2 * 1.5 * 0.4), 1e-15);
  EXPECT_NEAR(qsl_time_independent(-0.6, 1.5, 0.4), 0.5, 1e-15);
  EXPECT_THROW(qsl_time_independent(0.6, 0.0, 0.4), InconsistencyError);
  EXPECT_THROW(qsl_time_independent(0.6, 1.0, 0.0), InconsistencyError);
}

TEST(QslFamily, FigureTwoConfiguration) {
  const QslReport r = qsl_family(1.0, 1.0, 0.2, LogBase::Two);
  EXPECT_LE(r.T_qsl, 0.2 + 1e-9);
  EXPECT_GE(r.T_qsl / 0.2, 0.95);
  EXPECT_EQ(r.samples, 10000);
  // Aggregates recomputed from an independent quadrature.
  EXPECT_NEAR(r.mean_sqrt_capacity, mean_sqrt_capacity_oracle(1.0, 1.0, 0.2, kLn2), 1e-8);
  EXPECT_NEAR(r.mean_fluctuation, 1.0, 1e-15);
  EXPECT_NEAR(r.entropy_change, oracle::family_from_eta(1.0, 1.0, 0.2, kLn2).entropy, 1e-12);

  // Smaller theta moves entanglement more slowly, so at equal T the bound is
  // attained for both couplings but the entropy change differs.
  const QslReport half = qsl_family(1.0, 0.5, 0.2, LogBase::Two);
  EXPECT_LT(half.entropy_change, r.entropy_change);
  EXPECT_NEAR(half.T_qsl / 0.2, 1.0, 1e-6);
}

TEST(QslFamily, ValidOnGridAndTightAtPEqualsOne) {
  for (int ip = 0; ip < 20; ++ip) {
    const double p = ip / 19.0;
    for (double theta : {0.5, 1.0}) {
      double previous = 0.0;
      for (int it = 1; it <= 45; ++it) {
        const double T = 0.01 * it;
        const QslReport r = qsl_family(p, theta, T, LogBase::Two);
        ASSERT_LE(r.T_qsl, T + 1e-9) << "p " << p << " theta " << theta << " T " << T;
        if (ip == 19) {
          EXPECT_GE(r.T_qsl / T, 0.95);
          EXPECT_GT(r.T_qsl, previous);
          previous = r.T_qsl;
        }
      }
    }
  }
}

TEST(QslFamily, QuadratureConverges) {
  for (double T : {0.05, 0.2, 0.45}) {
    const double a = qsl_family(1.0, 1.0, T, LogBase::Two, 10000).T_qsl;
    const double b = qsl_family(1.0, 1.0, T, LogBase::Two, 20000).T_qsl;
    EXPECT_LT(std::abs(a - b), 1e-6);
  }
}

TEST(QslFamily, ZeroDurationAndFrozenDynamics) {
  EXPECT_EQ(qsl_family(1.0, 1.0, 0.0, LogBase::Two).T_qsl, 0.0);
  EXPECT_EQ(qsl_family(0.5, 1.0, 0.3, LogBase::Two).T_qsl, 0.0);
  EXPECT_EQ(qsl_family(0.3, 0.0, 0.3, LogBase::Two).T_qsl, 0.0);
}

TEST(QslTimeIndependent, GenericPathAgreesWithFamily) {
  for (double p : {0.2, 0.9, 1.0}) {
    const QslReport generic = qsl_time_independent(family_hamiltonian(1.0), two_term(p), 0.3, LogBase::Two);
    const QslReport family = qsl_family(p, 1.0, 0.3, LogBase::Two);
    EXPECT_NEAR(generic.entropy_change, family.entropy_change, 1e-10);
    EXPECT_NEAR(generic.mean_fluctuation, family.mean_fluctuation, 1e-12);
    EXPECT_NEAR(generic.mean_sqrt_capacity, family.mean_sqrt_capacity, 1e-6);
    EXPECT_LE(generic.T_qsl, 0.3 + 1e-6);
  }
}

TEST(QslTimeDependent, ConstantAndModulatedHamiltonians) {
  const Matrix h = family_hamiltonian(1.0);
  EXPECT_EQ(qsl_time_dependent([&](double) { return h; }, two_term(0.5), 0.3, LogBase::Two).T_qsl, 0.0);
  for (int ip = 0; ip < 10; ++ip) {
    const double p = 0.05 + 0.1 * ip;
    for (double T : {0.1, 0.3, 0.45}) {
      const QslReport r = qsl_time_dependent([&](double) { return h; }, two_term(p), T, LogBase::Two, 2000);
      EXPECT_LE(r.T_qsl, T + 1e-6) << "p " << p << " T " << T;
      EXPECT_NEAR(r.entropy_change, qsl_family(p, 1.0, T, LogBase::Two).entropy_change, 1e-8);
    }
  }
  for (int k = 0; k < 10; ++k) {
    const BipartitePureState psi = haar_random_pure(2, 2, 60 + k);
    const QslReport r = qsl_time_dependent([&](double t) -> Matrix { return std::sin(t) * h; }, psi, 1.0,
                                           LogBase::Two, 4000);
    EXPECT_LE(r.T_qsl, 1.0 + 1e-6);
  }
}

TEST(ClosedFormFamily, ExamplesAndSpectrumOracle) {
  const FamilyValues flat = closed_form_family(1.0, 0.5, M_PI / 2.0, LogBase::Two);
  EXPECT_NEAR(flat.capacity, 0.0, 1e-15);
  EXPECT_NEAR(flat.entropy, 1.0, 1e-15);
  const FamilyValues start = closed_form_family(1.0, 1.0, 0.0, LogBase::Two);
  EXPECT_EQ(start.eta, -1.0);
  EXPECT_EQ(start.capacity, 0.0);
  EXPECT_EQ(start.entropy, 0.0);
  const FamilyValues v = closed_form_family(1.0, 1.0, 0.3, LogBase::Two);
  const auto o = oracle::family_from_eta(1.0, 1.0, 0.3, kLn2);
  EXPECT_NEAR(v.eta, o.eta, 1e-15);
  EXPECT_NEAR(v.capacity, o.capacity, 1e-12);
  EXPECT_NEAR(v.entropy, o.entropy, 1e-12);
  EXPECT_NEAR(v.delta_h, 1.0, 1e-15);
  EXPECT_NEAR(closed_form_family(0.8, 2.0, 0.1, LogBase::Two).delta_h, 2.0 * 0.6, 1e-15);
}

TEST(ClosedFormFamily, EndpointsStayFinite) {
  for (double p : {0.0, 1.0}) {
    for (double t : {0.0, M_PI, 2 * M_PI}) {
      const FamilyValues v = closed_form_family(p, 1.0, t, LogBase::E);
      EXPECT_TRUE(std::isfinite(v.capacity));
      EXPECT_NEAR(v.capacity, 0.0, 1e-12);
    }
  }
}
