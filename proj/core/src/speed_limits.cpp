#include "capent/speed_limits.hpp"

#include <algorithm>
#include <cmath>

#include "capent/errors.hpp"
#include "capent/measures.hpp"

namespace capent {

namespace {

void require_samples(int samples) {
  if (samples < 2) throw DomainError("quadrature needs at least 2 samples");
}

void require_duration(double T) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("duration must be finite and >= 0");
}

CapacityResult schmidt_capacity(const BipartitePureState& psi, LogBase base) {
  const SchmidtDecomposition sd = schmidt_decompose(psi);
  const std::vector<double> w(sd.weights.data(), sd.weights.data() + sd.weights.size());
  return capacity_from_spectrum(w, base);
}

}  // namespace

double hamiltonian_fluctuation(const Matrix& hamiltonian, const BipartitePureState& psi) {
  if (hamiltonian.rows() != psi.dim() || hamiltonian.cols() != psi.dim()) {
    throw DomainError("Hamiltonian dimension does not match the state");
  }
  const Vector hpsi = hamiltonian * psi.amplitudes();
  const double mean = psi.amplitudes().dot(hpsi).real();
  const double var = hpsi.squaredNorm() - mean * mean;
  return std::sqrt(std::max(var, 0.0));
}

double fubini_study_speed(const Matrix& hamiltonian, const BipartitePureState& psi) {
  return 2.0 * hamiltonian_fluctuation(hamiltonian, psi);
}

std::vector<RateBoundSample> rate_bound_check(const Matrix& hamiltonian, const Trajectory& traj,
                                              double margin) {
  std::vector<RateBoundSample> out;
  out.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples) {
    const BipartitePureState psi = BipartitePureState::normalized(s.state, traj.dims);
    RateBoundSample r;
    r.time = s.time;
    r.gamma = std::abs(s.gamma);
    r.bound = 2.0 * std::sqrt(std::max(s.capacity, 0.0)) * hamiltonian_fluctuation(hamiltonian, psi);
    r.violated = r.gamma > r.bound + margin;
    out.push_back(r);
  }
  return out;
}

double qsl_time_independent(double entropy_change, double delta_h, double mean_sqrt_capacity) {
  if (delta_h < 0.0 || mean_sqrt_capacity < 0.0) {
    throw DomainError("fluctuation and mean sqrt capacity must be non-negative");
  }
  const double ds = std::abs(entropy_change);
  if (ds == 0.0) return 0.0;
  const double denom = 2.0 * delta_h * mean_sqrt_capacity;
  if (denom == 0.0) {
    throw InconsistencyError("entropy changed although Delta H * <sqrt C> vanishes");
  }
  return ds / denom;
}

FamilyValues closed_form_family(double p, double theta, double t, LogBase base) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  FamilyValues v;
  v.eta = (1.0 - 2.0 * p) * std::cos(2.0 * theta * t);
  v.delta_h = std::abs(theta) * std::abs(1.0 - 2.0 * p);
  const double ln_b = ln_of_base(base);
  const double a = std::abs(v.eta);
  if (a >= 1.0) {
    // Pure product Schmidt spectrum: both quantities vanish in the limit.
    return v;
  }
  const double at = std::atanh(v.eta);
  v.capacity = (1.0 - v.eta * v.eta) * at * at / (ln_b * ln_b);
  const double prod = 0.25 * (1.0 - v.eta) * (1.0 + v.eta);
  v.entropy = -0.5 * std::log(prod) / ln_b - v.eta * at / ln_b;
  return v;
}

double trapezoid(std::span<const double> values, double h) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * h;
}

QslReport qsl_family(double p, double theta, double T, LogBase base, int samples) {
  require_samples(samples);
  require_duration(T);
  QslReport r;
  r.T = T;
  r.samples = samples;
  const FamilyValues start = closed_form_family(p, theta, 0.0, base);
  r.mean_fluctuation = start.delta_h;
  if (T == 0.0) {
    r.mean_sqrt_capacity = std::sqrt(start.capacity);
    return r;
  }
  // Trapezoid in u with t = T u^2: sqrt(C) ~ t |ln t| at a degenerate start,
  // which a uniform grid in t only resolves to O(h^2 ln h).
  const double h = 1.0 / (samples - 1);
  std::vector<double> integrand(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double u = i * h;
    const double c = closed_form_family(p, theta, T * u * u, base).capacity;
    integrand[static_cast<std::size_t>(i)] = std::sqrt(c) * 2.0 * u;
  }
  r.mean_sqrt_capacity = trapezoid(integrand, h);
  r.entropy_change = closed_form_family(p, theta, T, base).entropy - start.entropy;
  r.T_qsl = qsl_time_independent(r.entropy_change, r.mean_fluctuation, r.mean_sqrt_capacity);
  return r;
}

QslReport qsl_time_independent(const Matrix& hamiltonian, const BipartitePureState& psi0, double T,
                               LogBase base, int samples) {
  require_samples(samples);
  require_duration(T);
  QslReport r;
  r.T = T;
  r.samples = samples;
  r.mean_fluctuation = hamiltonian_fluctuation(hamiltonian, psi0);
  const CapacityResult c0 = schmidt_capacity(psi0, base);
  if (T == 0.0) {
    r.mean_sqrt_capacity = std::sqrt(c0.capacity);
    return r;
  }
  const double h = T / (samples - 1);
  const Matrix step = unitary_propagator(hamiltonian, h);
  std::vector<double> root_c(static_cast<std::size_t>(samples));
  Vector v = psi0.amplitudes();
  double s_end = c0.entropy;
  root_c[0] = std::sqrt(c0.capacity);
  for (int i = 1; i < samples; ++i) {
    v = step * v;
    v.normalize();
    const CapacityResult c = schmidt_capacity(BipartitePureState::normalized(v, psi0.dims()), base);
    root_c[static_cast<std::size_t>(i)] = std::sqrt(c.capacity);
    s_end = c.entropy;
  }
  r.mean_sqrt_capacity = trapezoid(root_c, h) / T;
  r.entropy_change = s_end - c0.entropy;
  r.T_qsl = qsl_time_independent(r.entropy_change, r.mean_fluctuation, r.mean_sqrt_capacity);
  return r;
}

QslReport qsl_time_dependent(const TimeDependentHamiltonian& hamiltonian,
                             const BipartitePureState& psi0, double T, LogBase base, int samples) {
  require_samples(samples);
  require_duration(T);
  QslReport r;
  r.T = T;
  r.samples = samples;
  const CapacityResult c0 = schmidt_capacity(psi0, base);
  if (T == 0.0) {
    r.mean_fluctuation = hamiltonian_fluctuation(hamiltonian(0.0), psi0);
    r.mean_sqrt_capacity = std::sqrt(c0.capacity);
    return r;
  }
  const double h = T / (samples - 1);
  std::vector<double> root_c(static_cast<std::size_t>(samples));
  std::vector<double> fluct(static_cast<std::size_t>(samples));
  Vector v = psi0.amplitudes();
  root_c[0] = std::sqrt(c0.capacity);
  fluct[0] = hamiltonian_fluctuation(hamiltonian(0.0), psi0);
  double s_end = c0.entropy;
  for (int i = 1; i < samples; ++i) {
    const double t_mid = (i - 0.5) * h;
    v = unitary_propagator(hamiltonian(t_mid), h) * v;
    v.normalize();
    const BipartitePureState psi = BipartitePureState::normalized(v, psi0.dims());
    const CapacityResult c = schmidt_capacity(psi, base);
    root_c[static_cast<std::size_t>(i)] = std::sqrt(c.capacity);
    fluct[static_cast<std::size_t>(i)] = hamiltonian_fluctuation(hamiltonian(i * h), psi);
    s_end = c.entropy;
  }
  r.mean_sqrt_capacity = trapezoid(root_c, h) / T;
  r.mean_fluctuation = trapezoid(fluct, h) / T;
  r.entropy_change = s_end - c0.entropy;
  const double ds = std::abs(r.entropy_change);
  if (ds == 0.0) return r;
  const double denom = 2.0 * r.mean_fluctuation * std::sqrt(r.mean_sqrt_capacity);
  if (denom == 0.0) {
    throw InconsistencyError("entropy changed although the time-averaged bound vanishes");
  }
  r.T_qsl = ds / denom;
  return r;
}

}  // namespace capent
