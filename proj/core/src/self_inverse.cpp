#include "capent/self_inverse.hpp"

#include <cmath>
#include <string>

#include "capent/errors.hpp"

namespace capent {

namespace {

void require_involution(const Matrix& x, const char* name) {
  const std::string label(name);
  if (x.rows() != x.cols() || x.rows() < 1) throw DomainError(label + " is not square");
  if ((x - x.adjoint()).cwiseAbs().maxCoeff() > tolerance::kInvolution) {
    throw DomainError(label + " is not Hermitian");
  }
  const Matrix residual = x * x - Matrix::Identity(x.rows(), x.cols());
  if (residual.cwiseAbs().maxCoeff() > tolerance::kInvolution) {
    throw DomainError(label + " is not involutory");
  }
}

}  // namespace

SelfInverseHamiltonian::SelfInverseHamiltonian(Matrix x_a, Matrix x_b)
    : x_a_(std::move(x_a)), x_b_(std::move(x_b)), h_(kron(x_a_, x_b_)) {}

SelfInverseHamiltonian build_self_inverse(const Matrix& x_a, const Matrix& x_b) {
  require_involution(x_a, "X_A");
  require_involution(x_b, "X_B");
  return SelfInverseHamiltonian(x_a, x_b);
}

BipartitePureState evolve_self_inverse(const SelfInverseHamiltonian& h,
                                       const BipartitePureState& psi0, double t) {
  if (h.dims() != psi0.dims()) throw DomainError("Hamiltonian and state splits differ");
  const Vector& v = psi0.amplitudes();
  Vector out = std::cos(t) * v - Complex(0.0, std::sin(t)) * (h.matrix() * v);
  return BipartitePureState::normalized(std::move(out), psi0.dims());
}

Matrix liouville_rhs(const Matrix& hamiltonian, const DensityOperator& rho) {
  if (hamiltonian.rows() != rho.dim() || hamiltonian.cols() != rho.dim()) {
    throw DomainError("Hamiltonian and state dimensions differ");
  }
  const Matrix& r = rho.matrix();
  return Complex(0.0, -1.0) * (hamiltonian * r - r * hamiltonian);
}

Matrix liouville_rhs_reduced(const Matrix& hamiltonian, const DensityOperator& rho, Subsystem keep) {
  return partial_trace(liouville_rhs(hamiltonian, rho), rho.require_dims(), keep);
}

BetaSearch beta_search(LogBase base) {
  auto f = [base](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return 2.0 * std::sqrt(x * (1.0 - x)) * std::abs(log_in(base, x / (1.0 - x)));
  };
  BetaSearch out;
  out.search = maximize_scalar(f, 0.0, 1.0, 1e-12);
  out.value = out.search.value;
  out.x = out.search.x;
  return out;
}

double beta_constant(LogBase base) { return beta_search(base).value; }

CapacityRateBounds capacity_rate_bounds(int d_a, const RateBoundInputs& in, LogBase base) {
  if (d_a < 1 || in.d < 1) throw DomainError("dimensions must be positive");
  if (in.capacity < 0.0 || in.speed < 0.0 || in.op_norm < 0.0) {
    throw DomainError("capacity, speed and norm must be non-negative");
  }
  if (!(in.c >= 0.0 && in.c <= 1.0)) throw DomainError("c must lie in [0, 1]");
  const double factor_a = 1.0 + log_in(base, static_cast<double>(d_a));
  const double log_d = log_in(base, static_cast<double>(in.d));
  CapacityRateBounds b;
  b.from_rate = std::abs(2.0 * in.gamma * factor_a);
  b.from_speed = 2.0 * std::sqrt(in.capacity) * in.speed * factor_a;
  b.from_norm = 2.0 * in.c * in.op_norm * log_d * factor_a;
  static const double beta_two = beta_constant(LogBase::Two);
  static const double beta_e = beta_constant(LogBase::E);
  const double beta = base == LogBase::Two ? beta_two : beta_e;
  b.from_self_inverse = 2.0 * beta * (1.0 + log_d);
  return b;
}

double operator_norm(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) throw DomainError("operator norm needs a square matrix");
  if (hermitian.size() == 0) return 0.0;
  return hermitian_spectrum(hermitian).eigenvalues.cwiseAbs().maxCoeff();
}

}  // namespace capent
