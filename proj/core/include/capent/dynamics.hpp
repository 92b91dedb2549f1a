#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "capent/log_base.hpp"
#include "capent/qstate.hpp"

namespace capent {

/// Pauli matrices; index 0 is the identity, 1..3 are x, y, z.
const Eigen::Matrix2cd& pauli(int k);

/// Coefficients of a general two-qubit Hamiltonian
///   alpha.sigma (x) I + I (x) beta.sigma + sum_ij gamma_ij sigma_i (x) sigma_j.
struct RawCoefficients {
  Eigen::Vector3d alpha = Eigen::Vector3d::Zero();
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
  Eigen::Matrix3d gamma = Eigen::Matrix3d::Zero();
};

/// Two-qubit interaction in canonical form
///   H(+/-) = mu1 X(x)X +/- mu2 Y(x)Y + mu3 Z(x)Z,  mu1 >= mu2 >= mu3 >= 0.
class NonlocalHamiltonian {
 public:
  /// Throws DomainError unless mu is non-negative and descending and sign is +1 or -1.
  NonlocalHamiltonian(std::array<double, 3> mu, int sign = +1,
                      std::optional<RawCoefficients> raw = std::nullopt);

  const std::array<double, 3>& mu() const noexcept { return mu_; }
  int sign() const noexcept { return sign_; }
  const std::optional<RawCoefficients>& raw() const noexcept { return raw_; }

  /// mu1 - mu2: the oscillation frequency of the Schmidt weights under H+.
  double theta() const noexcept { return mu_[0] - mu_[1]; }

  /// Canonical 4x4 matrix.
  Matrix matrix() const;

  /// Full matrix from the raw coefficients, local terms included. Throws
  /// ConfigurationError when no raw form was recorded.
  Matrix raw_matrix() const;

 private:
  std::array<double, 3> mu_;
  int sign_;
  std::optional<RawCoefficients> raw_;
};

Matrix raw_hamiltonian_matrix(const RawCoefficients& raw);

/// mu = singular values of gamma (descending), sign = sign(det gamma) with 0
/// counted as +. The raw coefficients are kept; local terms do not enter mu.
NonlocalHamiltonian canonical_form(const Eigen::Vector3d& alpha, const Eigen::Vector3d& beta,
                                   const Eigen::Matrix3d& gamma);

/// exp(-i H t)|psi0>. Throws DomainError when H does not act on the state's space.
BipartitePureState evolve_exact(const Matrix& hamiltonian, const BipartitePureState& psi0, double t);

/// Two-qubit overload; throws DomainError unless psi0 is 2x2.
BipartitePureState evolve_exact(const NonlocalHamiltonian& h, const BipartitePureState& psi0,
                                double t);

/// (lambda1, lambda2) = ((1 - (1-2p) cos 2 theta t)/2, (1 + (1-2p) cos 2 theta t)/2):
/// weights of |00>, |11> for sqrt(p)|00> + sqrt(1-p)|11> under H+.
std::pair<double, double> evolved_schmidt_weights(double p, double theta, double t);

/// (-conj(b), conj(a)) for the qubit (a, b).
Qubit orthocomplement(const Qubit& q);

/// dp/dt = 2 sqrt(p(1-p)) Im <phi,chi|H|phi_perp,chi_perp>.
/// Throws DomainError unless <phi|phi_perp> = <chi|chi_perp> = 0 within 1e-10
/// and p is in [0, 1].
double schmidt_weight_rate(const Matrix& hamiltonian, const Qubit& phi, const Qubit& chi,
                           const Qubit& phi_perp, const Qubit& chi_perp, double p);

/// h = <phi,chi|H| e^{i phase} phi_perp,chi_perp> with the canonical
/// orthocomplements. Inputs are normalized first.
Complex h_element(const Matrix& hamiltonian, const Qubit& phi, const Qubit& chi,
                  double phase = 0.0);

/// mu1 + mu2.
double h_max(const NonlocalHamiltonian& h);

struct HMaxSearch {
  double value = 0.0;
  std::array<double, 4> angles{};  // (theta_A, phi_A, theta_B, phi_B) Bloch angles
  double grid_value = 0.0;
};

/// Numerical max of |h_element| over both Bloch spheres: a grid^4 angle scan
/// followed by Nelder-Mead refinement from the best node.
HMaxSearch h_max_numeric(const Matrix& hamiltonian, int grid = 64);

Qubit bloch_qubit(double polar, double azimuth);

/// 2 sqrt(p(1-p)) dS/dp for the two-qubit entropy.
double entropy_rate_factor(double p, LogBase base);

/// 2 sqrt(p(1-p)) dC/dp with dC/dp = (1-2p) L^2 + 2L/ln(b), L = log_b(p/(1-p)).
/// Returns 0 at p in {0, 1}.
double rate_factor_f(double p, LogBase base);

/// Four-level version with spectrum (p, (1-p)/3 x3):
/// 2 sqrt(p(1-p)/3) [(1-2p) L^2 + 2L/ln(b)], L = log_b(3p/(1-p)).
double ancilla_rate_factor(double p, LogBase base);

/// mu1 + mu2 + mu3.
double h_tilde_max(const NonlocalHamiltonian& h);

/// (mu1 + mu2) * rate_factor_f(p): rate of capacity from max_rate_state(p).
double gamma_c_max(double p, double mu1, double mu2, LogBase base);

/// sqrt(p)|01> + i sqrt(1-p)|10>.
BipartitePureState max_rate_state(double p);

/// dC/dlambda_n treating the Schmidt weights as independent variables; zero
/// for vanishing weights.
RealVector capacity_gradient(std::span<const double> weights, LogBase base);

/// d lambda_n / dt = 2 sum_m sqrt(lambda_n lambda_m) Im <phi_n,chi_n|H|phi_m,chi_m>.
RealVector schmidt_weight_rates(const Matrix& hamiltonian, const SchmidtDecomposition& sd,
                                BipartiteDims dims);

/// sum_n dC/dlambda_n d lambda_n/dt.
double capacity_rate(std::span<const double> weights, std::span<const double> rates, LogBase base);

/// (1/N) sum_{n,m} [dC/dlambda_n - dC/dlambda_m] d lambda_n/dt. Agrees with
/// capacity_rate whenever the rates sum to zero.
double capacity_rate_pairwise(std::span<const double> weights, std::span<const double> rates,
                              LogBase base);

struct TrajectorySample {
  double time = 0.0;
  Vector state;
  RealVector schmidt_weights;
  double entropy = 0.0;
  double capacity = 0.0;
  double gamma = 0.0;    // dS/dt, centered difference
  double gamma_c = 0.0;  // dC/dt, centered difference
  double delta_h = 0.0;
};

struct Trajectory {
  BipartiteDims dims;
  LogBase base = LogBase::E;
  double fd_step = 1e-6;
  std::vector<TrajectorySample> samples;
};

/// Samples exp(-iHt)|psi0> on `times` (ascending).
Trajectory simulate_trajectory(const Matrix& hamiltonian, const BipartitePureState& psi0,
                               std::span<const double> times, LogBase base, double fd_step = 1e-6);

/// Uses the step max(1e-6, 1e-8/theta) (1e-6 when theta = 0).
Trajectory simulate_trajectory(const NonlocalHamiltonian& h, const BipartitePureState& psi0,
                               std::span<const double> times, LogBase base);

}  // namespace capent
