#include "capent/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "capent/errors.hpp"

namespace capent {

namespace {

std::string dims_text(BipartiteDims dims) {
  return std::to_string(dims.a) + "x" + std::to_string(dims.b);
}

void check_dims(const Vector& amplitudes, BipartiteDims dims) {
  if (dims.a < 1 || dims.b < 1) {
    throw DomainError("subsystem dimensions must be positive, got " + dims_text(dims));
  }
  if (amplitudes.size() != dims.total()) {
    throw DomainError("amplitude vector of length " + std::to_string(amplitudes.size()) +
                      " does not match dimensions " + dims_text(dims));
  }
}

double max_hermitian_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double support_threshold(const RealVector& descending) {
  if (descending.size() == 0) return 0.0;
  return tolerance::kSupportCutoff * std::max(descending(0), 0.0);
}

Matrix apply_spectral(const Spectrum& s, const RealVector& values) {
  return s.eigenvectors * values.asDiagonal() * s.eigenvectors.adjoint();
}

std::mt19937_64 seeded_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

Vector complex_gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

BipartitePureState BipartitePureState::from_amplitudes(Vector amplitudes, BipartiteDims dims) {
  check_dims(amplitudes, dims);
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tolerance::kNorm) {
    throw DomainError("state has squared norm " + std::to_string(norm2) + ", expected 1");
  }
  return BipartitePureState(std::move(amplitudes), dims);
}

BipartitePureState BipartitePureState::normalized(Vector amplitudes, BipartiteDims dims) {
  check_dims(amplitudes, dims);
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw DomainError("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return BipartitePureState(std::move(amplitudes), dims);
}

Spectrum hermitian_spectrum(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigendecomposition failed");
  }
  const Eigen::Index n = hermitian.rows();
  Spectrum s{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    s.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    s.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return s;
}

DensityOperator DensityOperator::from_matrix(const Matrix& m, std::optional<BipartiteDims> dims) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError("density operator must be a non-empty square matrix");
  }
  if (dims && dims->total() != m.rows()) {
    throw ConfigurationError("split " + dims_text(*dims) + " does not match dimension " +
                             std::to_string(m.rows()));
  }
  if (!m.allFinite()) throw DomainError("density operator has non-finite entries");
  const double herm_dev = max_hermitian_deviation(m);
  if (herm_dev > tolerance::kHermitian) {
    throw DomainError("matrix is not Hermitian (deviation " + std::to_string(herm_dev) + ")");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tolerance::kTrace) {
    throw DomainError("trace is " + std::to_string(tr) + ", expected 1");
  }

  Matrix h = 0.5 * (m + m.adjoint());
  Spectrum s = hermitian_spectrum(h);
  const double min_eig = s.eigenvalues.minCoeff();
  if (min_eig < -tolerance::kNegativeEigenvalue) {
    throw DomainError("matrix is not positive semidefinite (eigenvalue " +
                      std::to_string(min_eig) + ")");
  }
  if (min_eig < 0.0) {
    s.eigenvalues = s.eigenvalues.cwiseMax(0.0);
    s.eigenvalues /= s.eigenvalues.sum();
    h = apply_spectral(s, s.eigenvalues);
  }
  return DensityOperator(std::move(h), std::move(s), dims);
}

BipartiteDims DensityOperator::require_dims() const {
  if (!dims_) throw ConfigurationError("operation requires a bipartite split");
  return *dims_;
}

DensityOperator density_from_pure(const BipartitePureState& state) {
  const Vector& v = state.amplitudes();
  return DensityOperator::from_matrix(v * v.adjoint(), state.dims());
}

Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem keep) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw ConfigurationError("operator size does not match split " + dims_text(dims));
  }
  const int a = dims.a;
  const int b = dims.b;
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(a, a);
    for (int i = 0; i < a; ++i)
      for (int j = 0; j < a; ++j)
        for (int k = 0; k < b; ++k) out(i, j) += m(i * b + k, j * b + k);
    return out;
  }
  Matrix out = Matrix::Zero(b, b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j)
      for (int k = 0; k < a; ++k) out(i, j) += m(k * b + i, k * b + j);
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep) {
  const BipartiteDims dims = rho.require_dims();
  return DensityOperator::from_matrix(partial_trace(rho.matrix(), dims, keep));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

DensityOperator tensor_product(const DensityOperator& rho, const DensityOperator& sigma) {
  return DensityOperator::from_matrix(kron(rho.matrix(), sigma.matrix()),
                                      BipartiteDims{rho.dim(), sigma.dim()});
}

SchmidtDecomposition schmidt_decompose(const BipartitePureState& state) {
  const BipartiteDims dims = state.dims();
  Matrix coeffs(dims.a, dims.b);
  for (int i = 0; i < dims.a; ++i)
    for (int j = 0; j < dims.b; ++j) coeffs(i, j) = state.amplitudes()(i * dims.b + j);

  Eigen::JacobiSVD<Matrix> svd(coeffs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  const Eigen::Index r = sv.size();

  SchmidtDecomposition out;
  out.weights = sv.array().square();
  out.weights /= out.weights.sum();
  out.basis_a = svd.matrixU().leftCols(r);
  out.basis_b = svd.matrixV().leftCols(r).conjugate();
  return out;
}

Matrix support_projector(const Spectrum& spectrum) {
  const double cut = support_threshold(spectrum.eigenvalues);
  RealVector mask = (spectrum.eigenvalues.array() > cut).cast<double>();
  return apply_spectral(spectrum, mask);
}

Matrix log_on_support(const Matrix& psd, LogBase base) {
  const Spectrum s = hermitian_spectrum(0.5 * (psd + psd.adjoint()));
  const double cut = support_threshold(s.eigenvalues);
  RealVector logs(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < logs.size(); ++i) {
    const double x = s.eigenvalues(i);
    logs(i) = x > cut ? log_in(base, x) : 0.0;
  }
  return apply_spectral(s, logs);
}

Matrix log_on_support(const DensityOperator& rho, LogBase base) {
  const Spectrum& s = rho.spectrum();
  const double cut = support_threshold(s.eigenvalues);
  RealVector logs(s.eigenvalues.size());
  for (Eigen::Index i = 0; i < logs.size(); ++i) {
    const double x = s.eigenvalues(i);
    logs(i) = x > cut ? log_in(base, x) : 0.0;
  }
  return apply_spectral(s, logs);
}

Matrix matrix_log_integral(const DensityOperator& rho, double s_max, int n_points) {
  const double lambda_min = rho.spectrum().eigenvalues.minCoeff();
  if (lambda_min <= 1e-8) {
    throw DomainError("integral logarithm needs a full-rank operator (min eigenvalue " +
                      std::to_string(lambda_min) + ")");
  }
  if (!(s_max > 0.0)) throw DomainError("s_max must be positive");
  if (n_points < 10) throw DomainError("n_points must be at least 10");

  const int n = rho.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix& r = rho.matrix();

  // Node 0 sits at s = 0; the remaining nodes are log-spaced from s_lo to s_max.
  const double s_lo = std::min(1e-4 * std::min(1.0, lambda_min), 0.5 * s_max);
  const double log_ratio = std::log(s_max / s_lo);
  auto node = [&](int k) {
    if (k == 0) return 0.0;
    return s_lo * std::exp(log_ratio * (k - 1) / (n_points - 2));
  };
  auto integrand = [&](double s) -> Matrix {
    return id / (s + 1.0) - (s * id + r).inverse();
  };

  Matrix acc = Matrix::Zero(n, n);
  double s_prev = node(0);
  Matrix f_prev = integrand(s_prev);
  for (int k = 1; k < n_points; ++k) {
    const double s = node(k);
    Matrix f = integrand(s);
    acc += 0.5 * (s - s_prev) * (f_prev + f);
    s_prev = s;
    f_prev = std::move(f);
  }
  acc += (r - id) / s_max;
  return 0.5 * (acc + acc.adjoint());
}

double shannon_entropy(std::span<const double> weights, LogBase base) {
  double s = 0.0;
  for (double w : weights) {
    if (w > 0.0) s -= w * log_in(base, w);
  }
  return s;
}

double von_neumann_entropy(const DensityOperator& rho, LogBase base) {
  const RealVector& ev = rho.spectrum().eigenvalues;
  const double cut = support_threshold(ev);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) s -= ev(i) * log_in(base, ev(i));
  }
  return std::max(s, 0.0);
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma, LogBase base) {
  if (rho.dim() != sigma.dim()) {
    throw DomainError("relative entropy needs equal dimensions");
  }
  const Spectrum& ss = sigma.spectrum();
  const Matrix null_sigma = Matrix::Identity(sigma.dim(), sigma.dim()) - support_projector(ss);
  const double leaked = (null_sigma * rho.matrix()).trace().real();
  if (leaked > tolerance::kSpectrumSum) {
    return std::numeric_limits<double>::infinity();
  }
  const Matrix diff = log_on_support(rho, base) - log_on_support(sigma, base);
  const double value = (rho.matrix() * diff).trace().real();
  // Round-off below zero is clamped; anything larger would indicate a bug upstream.
  return (value < 0.0 && value > -1e-12) ? 0.0 : value;
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw DomainError("trace distance needs equal dimensions");
  const Matrix d = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Matrix unitary_propagator(const Matrix& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (hamiltonian + hamiltonian.adjoint()));
  const RealVector& e = solver.eigenvalues();
  Vector phases(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) phases(i) = std::polar(1.0, -e(i) * t);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

BipartitePureState haar_random_pure(int dim_a, int dim_b, std::uint64_t seed) {
  if (dim_a < 2 || dim_b < 2) throw DomainError("Haar sampling needs both dimensions >= 2");
  auto rng = seeded_engine(seed);
  return BipartitePureState::normalized(complex_gaussian(rng, dim_a * dim_b),
                                        BipartiteDims{dim_a, dim_b});
}

DensityOperator random_density(int dim, std::uint64_t seed, std::optional<BipartiteDims> dims) {
  auto rng = seeded_engine(seed);
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j) g.col(j) = complex_gaussian(rng, dim);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityOperator::from_matrix(0.5 * (m + m.adjoint()), dims);
}

}  // namespace capent
