#pragma once

#include <span>
#include <vector>

#include "capent/log_base.hpp"
#include "capent/qstate.hpp"

namespace capent {

/// K = -log rho on the support of rho.
struct ModularHamiltonian {
  Matrix matrix;
  LogBase base;
  Matrix support_projector;
};

/// Capacity of entanglement (variance of K) together with the entropy (mean
/// of K) and the spectrum both were computed from.
struct CapacityResult {
  double capacity = 0.0;  // squared units of the log base
  double entropy = 0.0;
  Spectrum spectrum;
};

ModularHamiltonian modular_hamiltonian(const DensityOperator& rho, LogBase base);

/// Capacity of entanglement of a pure bipartite state from its Schmidt weights.
CapacityResult capacity_pure(const BipartitePureState& state, LogBase base);

/// Same quantity computed from the reduced state on `side`.
CapacityResult capacity_pure(const BipartitePureState& state, Subsystem side, LogBase base);

/// Variance of -log rho in rho, for any density operator.
CapacityResult capacity_of(const DensityOperator& rho, LogBase base);

/// sum w log^2 w - S^2 with 0 log^2 0 = 0, evaluated in the centered form
/// sum w (-log w - S)^2. Throws DomainError for negative weights or a sum
/// off 1 by more than 1e-10.
CapacityResult capacity_from_spectrum(std::span<const double> weights, LogBase base);

/// p(1-p) log^2(p/(1-p)); 0 at p in {0, 1}.
double capacity_two_qubit_closed(double p, LogBase base);

/// True iff every eigenvalue above the support cutoff equals the largest one
/// to relative tolerance `tol`.
bool is_flat(std::span<const double> spectrum, double tol = 1e-9);

/// tr(rho O^2) - tr(rho O)^2, clamped at 0 for round-off down to -1e-12.
double observable_variance(const Matrix& observable, const DensityOperator& rho);

struct MaxVarianceSpectrum {
  double r = 0.0;
  double residual = 0.0;
  RealVector spectrum;  // (1 - r, r/(d-1), ..., r/(d-1))
};

/// Spectrum of maximal capacity in dimension d: r in (0, 1/2) solving
/// (1 - 2r) ln((1 - r)(d - 1)/r) = 2 by bisection.
MaxVarianceSpectrum solve_max_variance_spectrum(long long d);

/// Smallest xi with |C(rho) - C(rho')|^2 <= xi log^2(d) D(rho, rho') over all
/// pairs in the sample. Reports an empirical constant; nothing is asserted.
double estimate_continuity_constant(std::span<const DensityOperator> states, LogBase base);

/// Smallest chi with C(rho) <= C(rho_A) + C(rho_B) + chi log^2(d) f(I) over the
/// sample, f(x) = max(x^{1/4}, x^2). States with zero mutual information are
/// skipped.
double estimate_subadditivity_constant(std::span<const DensityOperator> bipartite_states,
                                       LogBase base);

}  // namespace capent
