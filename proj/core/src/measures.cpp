#include "capent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "capent/errors.hpp"

namespace capent {

namespace {

// Centered second moment of -log w; stable against the cancellation in
// sum w log^2 w - S^2.
double centered_capacity(std::span<const double> weights, double entropy, LogBase base) {
  double c = 0.0;
  for (double w : weights) {
    if (w > 0.0) {
      const double dev = -log_in(base, w) - entropy;
      c += w * dev * dev;
    }
  }
  return c;
}

std::vector<double> to_std(const RealVector& v) { return {v.data(), v.data() + v.size()}; }

CapacityResult from_spectrum_unchecked(Spectrum spectrum, LogBase base) {
  std::vector<double> w = to_std(spectrum.eigenvalues);
  for (double& x : w) x = std::max(x, 0.0);
  const double cut = tolerance::kSupportCutoff * (w.empty() ? 0.0 : w.front());
  for (double& x : w) {
    if (x <= cut) x = 0.0;
  }
  CapacityResult out;
  out.entropy = shannon_entropy(w, base);
  out.capacity = centered_capacity(w, out.entropy, base);
  out.spectrum = std::move(spectrum);
  return out;
}

}  // namespace

ModularHamiltonian modular_hamiltonian(const DensityOperator& rho, LogBase base) {
  return ModularHamiltonian{-log_on_support(rho, base), base, support_projector(rho.spectrum())};
}

CapacityResult capacity_pure(const BipartitePureState& state, LogBase base) {
  const SchmidtDecomposition sd = schmidt_decompose(state);
  CapacityResult out = capacity_from_spectrum(to_std(sd.weights), base);
  out.spectrum.eigenvectors = sd.basis_a;
  return out;
}

CapacityResult capacity_pure(const BipartitePureState& state, Subsystem side, LogBase base) {
  return capacity_of(partial_trace(density_from_pure(state), side), base);
}

CapacityResult capacity_of(const DensityOperator& rho, LogBase base) {
  return from_spectrum_unchecked(rho.spectrum(), base);
}

CapacityResult capacity_from_spectrum(std::span<const double> weights, LogBase base) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("spectrum has a negative or NaN weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > tolerance::kSpectrumSum) {
    throw DomainError("spectrum sums to " + std::to_string(sum) + ", expected 1");
  }

  const auto n = static_cast<Eigen::Index>(weights.size());
  std::vector<Eigen::Index> order(weights.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return weights[i] > weights[j]; });

  Spectrum s{RealVector(n), Matrix::Zero(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.eigenvalues(k) = weights[order[k]];
    s.eigenvectors(order[k], k) = 1.0;
  }

  CapacityResult out;
  out.entropy = shannon_entropy(weights, base);
  out.capacity = centered_capacity(weights, out.entropy, base);
  out.spectrum = std::move(s);
  return out;
}

double capacity_two_qubit_closed(double p, LogBase base) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  const double l = log_in(base, p / (1.0 - p));
  return p * (1.0 - p) * l * l;
}

bool is_flat(std::span<const double> spectrum, double tol) {
  if (spectrum.empty()) return true;
  const double top = *std::max_element(spectrum.begin(), spectrum.end());
  if (!(top > 0.0)) return true;
  const double cut = tolerance::kSupportCutoff * top;
  return std::all_of(spectrum.begin(), spectrum.end(), [&](double x) {
    return x <= cut || std::abs(x - top) <= tol * top;
  });
}

double observable_variance(const Matrix& observable, const DensityOperator& rho) {
  if (observable.rows() != rho.dim() || observable.cols() != rho.dim()) {
    throw DomainError("observable and state dimensions differ");
  }
  const Matrix ro = rho.matrix() * observable;
  const double mean = ro.trace().real();
  const double second = (ro * observable).trace().real();
  const double var = second - mean * mean;
  if (var < 0.0 && var >= -1e-12) return 0.0;
  return var;
}

MaxVarianceSpectrum solve_max_variance_spectrum(long long d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
  const double dm1 = static_cast<double>(d - 1);
  auto g = [dm1](double r) { return (1.0 - 2.0 * r) * std::log((1.0 - r) / r * dm1) - 2.0; };

  // g decreases from +inf at r -> 0 to -2 at r = 1/2.
  double lo = 0.0;
  double hi = 0.5;
  for (int it = 0; it < 2000 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  MaxVarianceSpectrum out;
  out.r = std::abs(g(lo)) < std::abs(g(hi)) ? lo : hi;
  out.residual = std::abs(g(out.r));
  out.spectrum = RealVector::Constant(static_cast<Eigen::Index>(d), out.r / dm1);
  out.spectrum(0) = 1.0 - out.r;
  return out;
}

double estimate_continuity_constant(std::span<const DensityOperator> states, LogBase base) {
  double xi = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double ci = capacity_of(states[i], base).capacity;
    const double logd = log_in(base, static_cast<double>(states[i].dim()));
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (states[j].dim() != states[i].dim()) continue;
      const double dist = trace_distance(states[i], states[j]);
      if (dist <= 1e-12 || logd <= 0.0) continue;
      const double dc = ci - capacity_of(states[j], base).capacity;
      xi = std::max(xi, dc * dc / (logd * logd * dist));
    }
  }
  return xi;
}

double estimate_subadditivity_constant(std::span<const DensityOperator> bipartite_states,
                                       LogBase base) {
  double chi = 0.0;
  for (const DensityOperator& rho : bipartite_states) {
    const DensityOperator ra = partial_trace(rho, Subsystem::A);
    const DensityOperator rb = partial_trace(rho, Subsystem::B);
    const double mutual = von_neumann_entropy(ra, base) + von_neumann_entropy(rb, base) -
                          von_neumann_entropy(rho, base);
    if (mutual <= 1e-12) continue;
    const double excess = capacity_of(rho, base).capacity - capacity_of(ra, base).capacity -
                          capacity_of(rb, base).capacity;
    const double logd = log_in(base, static_cast<double>(rho.dim()));
    const double f = std::max(std::pow(mutual, 0.25), mutual * mutual);
    chi = std::max(chi, excess / (logd * logd * f));
  }
  return chi;
}

}  // namespace capent
