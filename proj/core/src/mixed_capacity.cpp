#include "capent/mixed_capacity.hpp"

#include <algorithm>
#include <cmath>

#include "capent/errors.hpp"

namespace capent {

namespace {

constexpr BipartiteDims kTwoQubits{2, 2};

void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

Matrix phi_plus_projector() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

SeparableApproximation analytic(const DensityOperator& rho, const Matrix& sigma,
                                SeparableMethod method, LogBase base) {
  DensityOperator s = DensityOperator::from_matrix(sigma, rho.dims());
  if (!is_ppt(s)) throw InconsistencyError("analytic closest separable state is not PPT");
  const double er = relative_entropy(rho, s, base);
  if (!std::isfinite(er)) throw InconsistencyError("analytic closest separable state misses supp(rho)");
  return SeparableApproximation{std::move(s), er, 0, 0.0, method, true, {}};
}

double null_weight(const DensityOperator& rho, const DensityOperator& sigma) {
  const Matrix null = Matrix::Identity(sigma.dim(), sigma.dim()) - support_projector(sigma.spectrum());
  return (null * rho.matrix()).trace().real();
}

}  // namespace

Matrix partial_transpose(const Matrix& m, BipartiteDims dims, Subsystem side) {
  const int n = dims.total();
  if (m.rows() != n || m.cols() != n) throw DomainError("matrix does not match the split");
  Matrix out(n, n);
  for (int ia = 0; ia < dims.a; ++ia)
    for (int ib = 0; ib < dims.b; ++ib)
      for (int ja = 0; ja < dims.a; ++ja)
        for (int jb = 0; jb < dims.b; ++jb) {
          const int r = ia * dims.b + ib;
          const int c = ja * dims.b + jb;
          const int rt = side == Subsystem::A ? ja * dims.b + ib : ia * dims.b + jb;
          const int ct = side == Subsystem::A ? ia * dims.b + jb : ja * dims.b + ib;
          out(rt, ct) = m(r, c);
        }
  return out;
}

Matrix partial_transpose(const DensityOperator& rho, Subsystem side) {
  return partial_transpose(rho.matrix(), rho.require_dims(), side);
}

bool is_ppt(const DensityOperator& rho, double tol) {
  const Spectrum s = hermitian_spectrum(partial_transpose(rho, Subsystem::B));
  return s.eigenvalues.minCoeff() >= -tol;
}

DensityOperator family1_state(double lambda) {
  require_lambda(lambda);
  Matrix m = lambda * phi_plus_projector();
  m(1, 1) += 1.0 - lambda;
  return DensityOperator::from_matrix(m, kTwoQubits);
}

DensityOperator family2_state(double lambda) {
  require_lambda(lambda);
  Matrix m = lambda * phi_plus_projector();
  m(0, 0) += 1.0 - lambda;
  return DensityOperator::from_matrix(m, kTwoQubits);
}

std::string_view to_string(SeparableMethod method) noexcept {
  switch (method) {
    case SeparableMethod::AnalyticFamily1:
      return "analytic-family-1";
    case SeparableMethod::AnalyticFamily2:
      return "analytic-family-2";
    case SeparableMethod::AnalyticPure:
      return "analytic-pure";
    case SeparableMethod::NumericPpt:
      return "numeric-ppt";
  }
  return "unknown";
}

SeparableApproximation closest_separable_pure(const BipartitePureState& state, LogBase base) {
  const SchmidtDecomposition sd = schmidt_decompose(state);
  const BipartiteDims dims = state.dims();
  Matrix sigma = Matrix::Zero(dims.total(), dims.total());
  for (Eigen::Index n = 0; n < sd.weights.size(); ++n) {
    const Matrix v = kron(Matrix(sd.basis_a.col(n)), Matrix(sd.basis_b.col(n)));
    sigma += sd.weights(n) * v * v.adjoint();
  }
  return analytic(density_from_pure(state), sigma, SeparableMethod::AnalyticPure, base);
}

SeparableApproximation closest_separable_family1(double lambda, LogBase base) {
  require_lambda(lambda);
  const double half = 0.5 * lambda;
  const double a = half * (1.0 - half);
  Matrix sigma = Matrix::Zero(4, 4);
  sigma(0, 0) = sigma(0, 3) = sigma(3, 0) = sigma(3, 3) = a;
  sigma(1, 1) = (1.0 - half) * (1.0 - half);
  sigma(2, 2) = half * half;
  return analytic(family1_state(lambda), sigma, SeparableMethod::AnalyticFamily1, base);
}

SeparableApproximation closest_separable_family2(double lambda, LogBase base) {
  require_lambda(lambda);
  Matrix sigma = Matrix::Zero(4, 4);
  sigma(0, 0) = 1.0 - 0.5 * lambda;
  sigma(3, 3) = 0.5 * lambda;
  return analytic(family2_state(lambda), sigma, SeparableMethod::AnalyticFamily2, base);
}

double family1_relative_entropy_closed(double lambda) {
  require_lambda(lambda);
  return (lambda - 2.0) * std::log(1.0 - 0.5 * lambda) + xlogx(1.0 - lambda);
}

double family2_relative_entropy_printed(double lambda) {
  require_lambda(lambda);
  const double root = std::sqrt(std::max(1.0 - 2.0 * lambda * (1.0 - 0.5 * lambda), 0.0));
  const double sp = 0.5 * (1.0 + root);
  const double sm = 0.5 * (1.0 - root);
  return xlogx(sp) + xlogx(sm) - 2.0 * xlogx(1.0 - 0.5 * lambda);
}

double family2_relative_entropy_corrected(double lambda) {
  require_lambda(lambda);
  const double root = std::sqrt(std::max(1.0 - 2.0 * lambda * (1.0 - lambda), 0.0));
  const double sp = 0.5 * (1.0 + root);
  const double sm = 0.5 * (1.0 - root);
  return xlogx(sp) + xlogx(sm) - xlogx(1.0 - 0.5 * lambda) - xlogx(0.5 * lambda);
}

Matrix shifted_modular_hamiltonian(const DensityOperator& rho, const DensityOperator& sigma_star,
                                   LogBase base) {
  if (rho.dim() != sigma_star.dim()) throw DomainError("state dimensions differ");
  return log_on_support(sigma_star, base) - log_on_support(rho, base);
}

double capacity_mixed(const DensityOperator& rho, const DensityOperator& sigma_star, LogBase base) {
  if (rho.dim() != sigma_star.dim()) throw DomainError("state dimensions differ");
  if (null_weight(rho, sigma_star) > tolerance::kSpectrumSum) {
    throw DomainError("supp(rho) is not contained in supp(sigma*)");
  }
  const Matrix k = shifted_modular_hamiltonian(rho, sigma_star, base);
  const Matrix rk = rho.matrix() * k;
  const double mean = rk.trace().real();
  const double var = (rk * k).trace().real() - mean * mean;
  return var < 0.0 && var >= -1e-12 ? 0.0 : var;
}

}  // namespace capent
