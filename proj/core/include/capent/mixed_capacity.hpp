#pragma once

#include <string_view>
#include <vector>

#include "capent/log_base.hpp"
#include "capent/qstate.hpp"

namespace capent {

/// Transposes the indices of the `side` factor.
Matrix partial_transpose(const Matrix& m, BipartiteDims dims, Subsystem side);

/// Throws ConfigurationError when rho carries no bipartite split.
Matrix partial_transpose(const DensityOperator& rho, Subsystem side = Subsystem::B);

/// Smallest eigenvalue of the partial transpose is >= -tol.
bool is_ppt(const DensityOperator& rho, double tol = 1e-8);

/// lambda |phi+><phi+| + (1 - lambda) |01><01|.
DensityOperator family1_state(double lambda);

/// lambda |phi+><phi+| + (1 - lambda) |00><00|.
DensityOperator family2_state(double lambda);

enum class SeparableMethod { AnalyticFamily1, AnalyticFamily2, AnalyticPure, NumericPpt };

std::string_view to_string(SeparableMethod method) noexcept;

struct SeparableApproximation {
  DensityOperator sigma_star;
  double relative_entropy = 0.0;
  int iterations = 0;
  double final_step_norm = 0.0;
  SeparableMethod method = SeparableMethod::NumericPpt;
  bool converged = true;
  std::vector<double> objective_trace;  // accepted objective values, numeric solver only
};

/// Dephasing in the Schmidt basis; E_R equals the entanglement entropy.
SeparableApproximation closest_separable_pure(const BipartitePureState& state,
                                              LogBase base = LogBase::E);

/// Closest separable states of the two analytic families. Throw DomainError
/// unless lambda is in [0, 1].
SeparableApproximation closest_separable_family1(double lambda, LogBase base = LogBase::E);
SeparableApproximation closest_separable_family2(double lambda, LogBase base = LogBase::E);

/// (lambda - 2) ln(1 - lambda/2) + (1 - lambda) ln(1 - lambda), natural log.
double family1_relative_entropy_closed(double lambda);

/// s+ ln s+ + s- ln s- - 2 (1 - lambda/2) ln(1 - lambda/2) with
/// s+- = (1 +- sqrt(1 - 2 lambda (1 - lambda/2)))/2, evaluated literally.
double family2_relative_entropy_printed(double lambda);

/// S(sigma*) - S(rho) for family 2, natural log:
/// s+ ln s+ + s- ln s- - (1 - lambda/2) ln(1 - lambda/2) - (lambda/2) ln(lambda/2),
/// s+- = (1 +- sqrt(1 - 2 lambda (1 - lambda)))/2 the nonzero eigenvalues of rho.
double family2_relative_entropy_corrected(double lambda);

enum class PptAlgorithm {
  // Log-barrier on det(sigma) and det(sigma^T_B) with damped Newton steps.
  Barrier,
  // Armijo projected gradient with Dykstra projection onto the PPT states.
  ProjectedGradient,
};

struct PptSolverOptions {
  PptAlgorithm algorithm = PptAlgorithm::Barrier;
  int max_iter = 20000;  // total accepted steps
  double tol = 1e-11;    // projected gradient: Frobenius norm of the accepted step
  double step = 1.0;     // projected gradient: initial trial step of each search
  int projection_iter = 500;
  double projection_tol = 1e-14;
  double mu_start = 1e-1;  // barrier weight schedule mu_start, mu_start * mu_factor, ...
  double mu_min = 1e-10;
  double mu_factor = 0.1;
  double newton_tol = 1e-13;  // squared Newton decrement ending a barrier stage
};

/// min S(rho || sigma) over two-qubit PPT density operators, starting from
/// (1 - 1e-3) diag(rho) + 1e-3 I/4. The barrier result exceeds the minimum by
/// at most 8 mu_min. objective_trace holds -tr(rho ln sigma) for projected
/// gradient and the barrier-augmented objective for the barrier method; both
/// are non-increasing. Throws DomainError unless rho is 2x2-split.
SeparableApproximation closest_separable_numeric(const DensityOperator& rho,
                                                 const PptSolverOptions& opts = {},
                                                 LogBase base = LogBase::E);

/// Projection of a Hermitian 4x4 matrix onto unit-trace PSD operators with a
/// PSD partial transpose.
Matrix project_ppt_states(const Matrix& m, int max_iter = 500, double tol = 1e-14);

/// K - K* = -log rho + log sigma*, both logs on their supports.
Matrix shifted_modular_hamiltonian(const DensityOperator& rho, const DensityOperator& sigma_star,
                                   LogBase base);

/// Variance of the shifted modular Hamiltonian in rho. Throws DomainError
/// when supp(rho) is not contained in supp(sigma*).
double capacity_mixed(const DensityOperator& rho, const DensityOperator& sigma_star, LogBase base);

}  // namespace capent
