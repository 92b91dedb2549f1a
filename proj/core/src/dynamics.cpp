#include "capent/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "capent/errors.hpp"
#include "capent/measures.hpp"
#include "capent/scalar_search.hpp"
#include "capent/speed_limits.hpp"

namespace capent {

namespace {

constexpr Complex kI(0.0, 1.0);

std::array<Eigen::Matrix2cd, 4> make_paulis() {
  std::array<Eigen::Matrix2cd, 4> p;
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, -kI, kI, 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

Matrix kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return kron(Matrix(a), Matrix(b));
}

Vector kron_vec(const Qubit& a, const Qubit& b) {
  Vector out(4);
  out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return out;
}

void require_two_qubits(const BipartitePureState& psi) {
  if (psi.dims() != BipartiteDims{2, 2}) {
    throw DomainError("two-qubit operation applied to a " + std::to_string(psi.dims().a) + "x" +
                      std::to_string(psi.dims().b) + " state");
  }
}

void require_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

// Two-level split with log ratio l between the weights; shared by the
// two-qubit and ancilla rate factors.
double rate_bracket(double p, double l, LogBase base) {
  return (1.0 - 2.0 * p) * l * l + 2.0 * l / ln_of_base(base);
}

TrajectorySample sample_at(const Matrix& hamiltonian, const BipartitePureState& psi0, double t,
                           LogBase base) {
  const BipartitePureState psi = evolve_exact(hamiltonian, psi0, t);
  const SchmidtDecomposition sd = schmidt_decompose(psi);
  const std::vector<double> w(sd.weights.data(), sd.weights.data() + sd.weights.size());
  const CapacityResult cr = capacity_from_spectrum(w, base);

  TrajectorySample s;
  s.time = t;
  s.state = psi.amplitudes();
  s.schmidt_weights = sd.weights;
  s.entropy = cr.entropy;
  s.capacity = cr.capacity;
  s.delta_h = hamiltonian_fluctuation(hamiltonian, psi);
  return s;
}

}  // namespace

const Eigen::Matrix2cd& pauli(int k) {
  static const std::array<Eigen::Matrix2cd, 4> paulis = make_paulis();
  if (k < 0 || k > 3) throw DomainError("Pauli index must be 0..3");
  return paulis[static_cast<std::size_t>(k)];
}

NonlocalHamiltonian::NonlocalHamiltonian(std::array<double, 3> mu, int sign,
                                         std::optional<RawCoefficients> raw)
    : mu_(mu), sign_(sign), raw_(std::move(raw)) {
  if (!(mu_[0] >= mu_[1] && mu_[1] >= mu_[2] && mu_[2] >= 0.0)) {
    throw DomainError("canonical coefficients must satisfy mu1 >= mu2 >= mu3 >= 0");
  }
  if (sign_ != 1 && sign_ != -1) throw DomainError("sign must be +1 or -1");
}

Matrix NonlocalHamiltonian::matrix() const {
  return mu_[0] * kron2(pauli(1), pauli(1)) +
         static_cast<double>(sign_) * mu_[1] * kron2(pauli(2), pauli(2)) +
         mu_[2] * kron2(pauli(3), pauli(3));
}

Matrix NonlocalHamiltonian::raw_matrix() const {
  if (!raw_) throw ConfigurationError("Hamiltonian has no raw coefficient form");
  return raw_hamiltonian_matrix(*raw_);
}

Matrix raw_hamiltonian_matrix(const RawCoefficients& raw) {
  Matrix h = Matrix::Zero(4, 4);
  for (int k = 1; k <= 3; ++k) {
    h += raw.alpha(k - 1) * kron2(pauli(k), pauli(0));
    h += raw.beta(k - 1) * kron2(pauli(0), pauli(k));
    for (int j = 1; j <= 3; ++j) h += raw.gamma(k - 1, j - 1) * kron2(pauli(k), pauli(j));
  }
  return h;
}

NonlocalHamiltonian canonical_form(const Eigen::Vector3d& alpha, const Eigen::Vector3d& beta,
                                   const Eigen::Matrix3d& gamma) {
  if (!gamma.allFinite()) throw DomainError("gamma has non-finite entries");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(gamma);
  const Eigen::Vector3d sv = svd.singularValues();
  const int sign = gamma.determinant() < 0.0 ? -1 : 1;
  return NonlocalHamiltonian({sv(0), sv(1), sv(2)}, sign, RawCoefficients{alpha, beta, gamma});
}

BipartitePureState evolve_exact(const Matrix& hamiltonian, const BipartitePureState& psi0,
                                double t) {
  if (hamiltonian.rows() != psi0.dim() || hamiltonian.cols() != psi0.dim()) {
    throw DomainError("Hamiltonian dimension does not match the state");
  }
  if (t == 0.0) return psi0;
  return BipartitePureState::from_amplitudes(unitary_propagator(hamiltonian, t) * psi0.amplitudes(),
                                             psi0.dims());
}

BipartitePureState evolve_exact(const NonlocalHamiltonian& h, const BipartitePureState& psi0,
                                double t) {
  require_two_qubits(psi0);
  return evolve_exact(h.matrix(), psi0, t);
}

std::pair<double, double> evolved_schmidt_weights(double p, double theta, double t) {
  require_p(p);
  const double eta = (1.0 - 2.0 * p) * std::cos(2.0 * theta * t);
  return {0.5 * (1.0 - eta), 0.5 * (1.0 + eta)};
}

Qubit orthocomplement(const Qubit& q) {
  return Qubit(-std::conj(q(1)), std::conj(q(0)));
}

double schmidt_weight_rate(const Matrix& hamiltonian, const Qubit& phi, const Qubit& chi,
                           const Qubit& phi_perp, const Qubit& chi_perp, double p) {
  require_p(p);
  if (hamiltonian.rows() != 4 || hamiltonian.cols() != 4) {
    throw DomainError("two-qubit Hamiltonian must be 4x4");
  }
  if (std::abs(phi.dot(phi_perp)) > tolerance::kOrthogonality ||
      std::abs(chi.dot(chi_perp)) > tolerance::kOrthogonality) {
    throw DomainError("Schmidt basis vectors are not orthogonal");
  }
  const Complex element =
      kron_vec(phi, chi).dot(hamiltonian * kron_vec(phi_perp, chi_perp));
  return 2.0 * std::sqrt(p * (1.0 - p)) * element.imag();
}

Complex h_element(const Matrix& hamiltonian, const Qubit& phi, const Qubit& chi, double phase) {
  if (hamiltonian.rows() != 4 || hamiltonian.cols() != 4) {
    throw DomainError("two-qubit Hamiltonian must be 4x4");
  }
  const Qubit a = phi.normalized();
  const Qubit b = chi.normalized();
  const Vector ket = std::polar(1.0, phase) * kron_vec(orthocomplement(a), orthocomplement(b));
  return kron_vec(a, b).dot(hamiltonian * ket);
}

double h_max(const NonlocalHamiltonian& h) { return h.mu()[0] + h.mu()[1]; }

Qubit bloch_qubit(double polar, double azimuth) {
  return Qubit(std::cos(0.5 * polar), std::polar(std::sin(0.5 * polar), azimuth));
}

HMaxSearch h_max_numeric(const Matrix& hamiltonian, int grid) {
  if (hamiltonian.rows() != 4 || hamiltonian.cols() != 4) {
    throw DomainError("two-qubit Hamiltonian must be 4x4");
  }
  if (grid < 4) throw DomainError("angle grid needs at least 4 points per axis");

  struct Node {
    double polar;
    double azimuth;
    Qubit q;
    Qubit perp;
  };
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(grid * grid));
  for (int i = 0; i < grid; ++i) {
    const double polar = std::numbers::pi * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      const double azimuth = 2.0 * std::numbers::pi * j / grid;
      const Qubit q = bloch_qubit(polar, azimuth);
      nodes.push_back({polar, azimuth, q, orthocomplement(q)});
    }
  }

  // h = sum_{jl} conj(chi_j) chi_perp_l * B_{jl}(phi), B contracted over A indices.
  std::vector<Eigen::Matrix2cd> b_side(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    Eigen::Matrix2cd bm = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int ip = 0; ip < 2; ++ip) {
        const Complex w = std::conj(n.q(i)) * n.perp(ip);
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l) bm(j, l) += w * hamiltonian(i * 2 + j, ip * 2 + l);
      }
    b_side[k] = bm;
  }
  std::vector<Eigen::Matrix2cd> products(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    products[k] = nodes[k].q.conjugate() * nodes[k].perp.transpose();
  }

  double best = -1.0;
  std::size_t best_a = 0;
  std::size_t best_b = 0;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Eigen::Matrix2cd& bm = b_side[a];
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      const Complex h = bm.cwiseProduct(products[b]).sum();
      const double m = std::norm(h);
      if (m > best) {
        best = m;
        best_a = a;
        best_b = b;
      }
    }
  }

  auto objective = [&](const std::vector<double>& x) {
    return std::abs(h_element(hamiltonian, bloch_qubit(x[0], x[1]), bloch_qubit(x[2], x[3])));
  };
  std::vector<double> start{nodes[best_a].polar, nodes[best_a].azimuth, nodes[best_b].polar,
                            nodes[best_b].azimuth};
  double step = std::numbers::pi / grid;
  SimplexMaximum refined = nelder_mead_max(objective, start, step);
  for (int restart = 0; restart < 3; ++restart) {
    step *= 0.1;
    SimplexMaximum again = nelder_mead_max(objective, refined.x, step);
    if (again.value <= refined.value) break;
    refined = std::move(again);
  }

  HMaxSearch out;
  out.grid_value = std::sqrt(best);
  out.value = std::max(refined.value, out.grid_value);
  for (std::size_t k = 0; k < 4; ++k) out.angles[k] = refined.value >= out.grid_value ? refined.x[k] : start[k];
  return out;
}

double entropy_rate_factor(double p, LogBase base) {
  require_p(p);
  if (p == 0.0 || p == 1.0) return 0.0;
  return 2.0 * std::sqrt(p * (1.0 - p)) * log_in(base, (1.0 - p) / p);
}

double rate_factor_f(double p, LogBase base) {
  require_p(p);
  if (p == 0.0 || p == 1.0) return 0.0;
  const double l = log_in(base, p / (1.0 - p));
  return 2.0 * std::sqrt(p * (1.0 - p)) * rate_bracket(p, l, base);
}

double ancilla_rate_factor(double p, LogBase base) {
  require_p(p);
  if (p == 0.0 || p == 1.0) return 0.0;
  const double l = log_in(base, 3.0 * p / (1.0 - p));
  return 2.0 * std::sqrt(p * (1.0 - p) / 3.0) * rate_bracket(p, l, base);
}

double h_tilde_max(const NonlocalHamiltonian& h) { return h.mu()[0] + h.mu()[1] + h.mu()[2]; }

double gamma_c_max(double p, double mu1, double mu2, LogBase base) {
  return (mu1 + mu2) * rate_factor_f(p, base);
}

BipartitePureState max_rate_state(double p) {
  require_p(p);
  Vector v = Vector::Zero(4);
  v(1) = std::sqrt(p);
  v(2) = kI * std::sqrt(1.0 - p);
  return BipartitePureState::normalized(std::move(v), BipartiteDims{2, 2});
}

RealVector capacity_gradient(std::span<const double> weights, LogBase base) {
  const double inv_ln = 1.0 / ln_of_base(base);
  const double s = shannon_entropy(weights, base);
  RealVector g = RealVector::Zero(static_cast<Eigen::Index>(weights.size()));
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double w = weights[n];
    if (w <= 0.0) continue;
    const double l = log_in(base, w);
    g(static_cast<Eigen::Index>(n)) = l * l + 2.0 * inv_ln * l + 2.0 * s * (l + inv_ln);
  }
  return g;
}

RealVector schmidt_weight_rates(const Matrix& hamiltonian, const SchmidtDecomposition& sd,
                                BipartiteDims dims) {
  if (hamiltonian.rows() != dims.total() || hamiltonian.cols() != dims.total()) {
    throw DomainError("Hamiltonian dimension does not match the split");
  }
  const Eigen::Index r = sd.weights.size();
  std::vector<Vector> products;
  products.reserve(static_cast<std::size_t>(r));
  for (Eigen::Index n = 0; n < r; ++n) {
    products.push_back(kron(Matrix(sd.basis_a.col(n)), Matrix(sd.basis_b.col(n))));
  }
  RealVector rates = RealVector::Zero(r);
  for (Eigen::Index n = 0; n < r; ++n) {
    const Vector hn = hamiltonian.adjoint() * products[static_cast<std::size_t>(n)];
    for (Eigen::Index m = 0; m < r; ++m) {
      const double amp = std::sqrt(std::max(sd.weights(n), 0.0) * std::max(sd.weights(m), 0.0));
      if (amp == 0.0) continue;
      const Complex element = hn.dot(products[static_cast<std::size_t>(m)]);
      rates(n) += 2.0 * amp * element.imag();
    }
  }
  return rates;
}

double capacity_rate(std::span<const double> weights, std::span<const double> rates, LogBase base) {
  if (weights.size() != rates.size()) throw DomainError("weights and rates differ in length");
  const RealVector g = capacity_gradient(weights, base);
  double out = 0.0;
  for (std::size_t n = 0; n < rates.size(); ++n) out += g(static_cast<Eigen::Index>(n)) * rates[n];
  return out;
}

double capacity_rate_pairwise(std::span<const double> weights, std::span<const double> rates,
                              LogBase base) {
  if (weights.size() != rates.size()) throw DomainError("weights and rates differ in length");
  const RealVector g = capacity_gradient(weights, base);
  const auto n_levels = static_cast<Eigen::Index>(weights.size());
  double out = 0.0;
  for (Eigen::Index n = 0; n < n_levels; ++n)
    for (Eigen::Index m = 0; m < n_levels; ++m)
      out += (g(n) - g(m)) * rates[static_cast<std::size_t>(n)];
  return out / static_cast<double>(n_levels);
}

Trajectory simulate_trajectory(const Matrix& hamiltonian, const BipartitePureState& psi0,
                               std::span<const double> times, LogBase base, double fd_step) {
  if (!(fd_step > 0.0)) throw DomainError("finite-difference step must be positive");
  Trajectory traj;
  traj.dims = psi0.dims();
  traj.base = base;
  traj.fd_step = fd_step;
  traj.samples.reserve(times.size());
  for (double t : times) {
    TrajectorySample s = sample_at(hamiltonian, psi0, t, base);
    const TrajectorySample fwd = sample_at(hamiltonian, psi0, t + fd_step, base);
    const TrajectorySample bwd = sample_at(hamiltonian, psi0, t - fd_step, base);
    s.gamma = (fwd.entropy - bwd.entropy) / (2.0 * fd_step);
    s.gamma_c = (fwd.capacity - bwd.capacity) / (2.0 * fd_step);
    traj.samples.push_back(std::move(s));
  }
  return traj;
}

Trajectory simulate_trajectory(const NonlocalHamiltonian& h, const BipartitePureState& psi0,
                               std::span<const double> times, LogBase base) {
  require_two_qubits(psi0);
  const double theta = h.theta();
  const double step = theta > 0.0 ? std::max(1e-6, 1e-8 / theta) : 1e-6;
  return simulate_trajectory(h.matrix(), psi0, times, base, step);
}

}  // namespace capent
