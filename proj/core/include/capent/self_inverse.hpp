#pragma once

#include "capent/log_base.hpp"
#include "capent/qstate.hpp"
#include "capent/scalar_search.hpp"

namespace capent {

/// H = X_A (x) X_B with X_A, X_B Hermitian involutions, so H^2 = I.
class SelfInverseHamiltonian {
 public:
  const Matrix& x_a() const noexcept { return x_a_; }
  const Matrix& x_b() const noexcept { return x_b_; }
  const Matrix& matrix() const noexcept { return h_; }
  BipartiteDims dims() const noexcept {
    return {static_cast<int>(x_a_.rows()), static_cast<int>(x_b_.rows())};
  }

 private:
  friend SelfInverseHamiltonian build_self_inverse(const Matrix& x_a, const Matrix& x_b);
  SelfInverseHamiltonian(Matrix x_a, Matrix x_b);

  Matrix x_a_;
  Matrix x_b_;
  Matrix h_;
};

/// Throws DomainError naming X_A or X_B when a factor is not square,
/// Hermitian, or involutory within 1e-10.
SelfInverseHamiltonian build_self_inverse(const Matrix& x_a, const Matrix& x_b);

/// (cos t I - i sin t H)|psi0>.
BipartitePureState evolve_self_inverse(const SelfInverseHamiltonian& h,
                                       const BipartitePureState& psi0, double t);

/// -i [H, rho].
Matrix liouville_rhs(const Matrix& hamiltonian, const DensityOperator& rho);

/// -i tr_{other}[H, rho]: time derivative of the reduced state on `keep`.
Matrix liouville_rhs_reduced(const Matrix& hamiltonian, const DensityOperator& rho, Subsystem keep);

struct BetaSearch {
  double value = 0.0;  // beta
  double x = 0.0;      // maximizer of the magnitude
  ScalarMaximum search;
};

/// beta = 2 max_x sqrt(x(1-x)) |log(x/(1-x))| on [0, 1] by a 10^6-point grid
/// and golden-section refinement.
BetaSearch beta_search(LogBase base);
double beta_constant(LogBase base);

struct RateBoundInputs {
  double gamma = 0.0;     // entanglement rate
  double capacity = 0.0;  // C_E
  double speed = 0.0;     // Fubini-Study speed 2 Delta H
  double op_norm = 0.0;   // ||H||
  double c = 1.0;         // Bravyi constant in [0, 1]
  int d = 2;              // min(d_A, d_B)
};

struct CapacityRateBounds {
  double from_rate = 0.0;          // |2 Gamma (1 + log d_A)|
  double from_speed = 0.0;         // 2 sqrt(C) V (1 + log d_A)
  double from_norm = 0.0;          // 2 c ||H|| log d (1 + log d_A)
  double from_self_inverse = 0.0;  // 2 beta (1 + log d)
};

/// Throws DomainError on negative inputs, c outside [0, 1], or d_A, d < 1.
CapacityRateBounds capacity_rate_bounds(int d_a, const RateBoundInputs& in, LogBase base);

/// Largest absolute eigenvalue of a Hermitian matrix.
double operator_norm(const Matrix& hermitian);

}  // namespace capent
