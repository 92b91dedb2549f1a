#pragma once

#include <functional>
#include <span>
#include <vector>

#include "capent/dynamics.hpp"
#include "capent/log_base.hpp"
#include "capent/qstate.hpp"

namespace capent {

/// sqrt(<H^2> - <H>^2) in |psi>, clamped at 0 for round-off.
double hamiltonian_fluctuation(const Matrix& hamiltonian, const BipartitePureState& psi);

/// Fubini-Study speed 2 Delta H (hbar = 1).
double fubini_study_speed(const Matrix& hamiltonian, const BipartitePureState& psi);

struct RateBoundSample {
  double time = 0.0;
  double gamma = 0.0;  // |dS/dt|
  double bound = 0.0;  // 2 sqrt(C) Delta H
  bool violated = false;
};

/// Compares |Gamma| with 2 sqrt(C) Delta H at every trajectory sample. A
/// sample is a violation when |Gamma| > bound + margin. Delta H is recomputed
/// from `hamiltonian` and the stored state.
std::vector<RateBoundSample> rate_bound_check(const Matrix& hamiltonian, const Trajectory& traj,
                                              double margin = 1e-8);

/// |dS| / (2 Delta H <sqrt C>). Returns 0 when dS = 0. Throws
/// InconsistencyError when the denominator vanishes while dS does not.
double qsl_time_independent(double entropy_change, double delta_h, double mean_sqrt_capacity);

struct QslReport {
  double T = 0.0;
  double T_qsl = 0.0;
  double entropy_change = 0.0;
  double mean_sqrt_capacity = 0.0;
  double mean_fluctuation = 0.0;
  int samples = 0;
};

/// Closed-form values for sqrt(p)|00> + sqrt(1-p)|11> under H+ with
/// theta = mu1 - mu2.
struct FamilyValues {
  double eta = 0.0;  // (1-2p) cos(2 theta t)
  double capacity = 0.0;
  double entropy = 0.0;
  double delta_h = 0.0;  // theta |1-2p|
};

FamilyValues closed_form_family(double p, double theta, double t, LogBase base);

/// Composite trapezoid with uniform spacing h.
double trapezoid(std::span<const double> values, double h);

/// Time-independent bound for the closed-form family on [0, T]. The time
/// average of sqrt(C) uses `samples` trapezoid nodes uniform in u, t = T u^2.
/// T = 0 gives T_qsl = 0.
QslReport qsl_family(double p, double theta, double T, LogBase base, int samples = 10'000);

/// Time-independent bound along exact evolution under a constant Hamiltonian.
QslReport qsl_time_independent(const Matrix& hamiltonian, const BipartitePureState& psi0, double T,
                               LogBase base, int samples = 10'000);

using TimeDependentHamiltonian = std::function<Matrix(double)>;

/// |dS| / (2 <Delta H(t)> sqrt(<sqrt C>)), time averages over [0, T]. The
/// state is propagated with exponential-midpoint steps between the
/// quadrature nodes. Only sqrt(<sqrt C>) enters, not <sqrt C> itself, so the
/// result does not reduce to qsl_time_independent for constant H; units with
/// hbar = 1.
QslReport qsl_time_dependent(const TimeDependentHamiltonian& hamiltonian,
                             const BipartitePureState& psi0, double T, LogBase base,
                             int samples = 10'000);

}  // namespace capent
