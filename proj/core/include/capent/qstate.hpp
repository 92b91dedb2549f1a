#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "capent/log_base.hpp"
#include "capent/types.hpp"

namespace capent {

/// Subsystem dimensions of a bipartite Hilbert space H_A (x) H_B. Composite
/// basis index is i_A * b + i_B.
struct BipartiteDims {
  int a = 0;
  int b = 0;

  int total() const noexcept { return a * b; }
  bool operator==(const BipartiteDims&) const = default;
};

enum class Subsystem { A, B };

/// Unit-norm state vector on H_A (x) H_B.
class BipartitePureState {
 public:
  /// Throws DomainError unless |amplitudes| = 1 within 1e-12 and the length is a*b.
  static BipartitePureState from_amplitudes(Vector amplitudes, BipartiteDims dims);

  /// Rescales to unit norm. Throws DomainError on a zero vector or size mismatch.
  static BipartitePureState normalized(Vector amplitudes, BipartiteDims dims);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  BipartiteDims dims() const noexcept { return dims_; }
  int dim() const noexcept { return dims_.total(); }

 private:
  BipartitePureState(Vector amplitudes, BipartiteDims dims)
      : amplitudes_(std::move(amplitudes)), dims_(dims) {}

  Vector amplitudes_;
  BipartiteDims dims_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct Spectrum {
  RealVector eigenvalues;
  Matrix eigenvectors;  // columns
};

Spectrum hermitian_spectrum(const Matrix& hermitian);

/// Hermitian, positive semidefinite, unit-trace matrix with an optional
/// bipartite split.
///
/// Construction validates hermiticity (max abs deviation 1e-12) and trace
/// (1e-12). Eigenvalues in [-1e-10, 0) are clamped to zero and the matrix is
/// rebuilt and renormalized; anything more negative is rejected.
class DensityOperator {
 public:
  static DensityOperator from_matrix(const Matrix& m, std::optional<BipartiteDims> dims = {});

  const Matrix& matrix() const noexcept { return matrix_; }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  std::optional<BipartiteDims> dims() const noexcept { return dims_; }

  /// Throws ConfigurationError when no split was attached.
  BipartiteDims require_dims() const;

 private:
  DensityOperator(Matrix m, Spectrum s, std::optional<BipartiteDims> dims)
      : matrix_(std::move(m)), spectrum_(std::move(s)), dims_(dims) {}

  Matrix matrix_;
  Spectrum spectrum_;
  std::optional<BipartiteDims> dims_;
};

DensityOperator density_from_pure(const BipartitePureState& state);

/// Partial trace of an arbitrary operator on H_A (x) H_B; `keep` names the
/// surviving factor.
Matrix partial_trace(const Matrix& m, BipartiteDims dims, Subsystem keep);

DensityOperator partial_trace(const DensityOperator& rho, Subsystem keep);

Matrix kron(const Matrix& a, const Matrix& b);

/// rho (x) sigma, carrying the split (dim rho, dim sigma).
DensityOperator tensor_product(const DensityOperator& rho, const DensityOperator& sigma);

struct SchmidtDecomposition {
  RealVector weights;  // descending, sums to 1; length min(a, b)
  Matrix basis_a;      // column n is |psi_n>
  Matrix basis_b;      // column n is |phi_n>
};

/// |Psi> = sum_n sqrt(weights_n) |psi_n> (x) |phi_n>, via SVD of the a x b
/// coefficient matrix.
SchmidtDecomposition schmidt_decompose(const BipartitePureState& state);

/// log of a PSD matrix restricted to its support: eigenvalues above
/// 1e-12 * max map to their log, the rest to 0.
Matrix log_on_support(const Matrix& psd, LogBase base);
Matrix log_on_support(const DensityOperator& rho, LogBase base);

/// Orthogonal projector onto the support (same cutoff as log_on_support).
Matrix support_projector(const Spectrum& spectrum);

/// Natural log of a full-rank density operator from the resolvent integral
///   ln rho = int_0^inf ds [ I/(s+1) - (sI + rho)^{-1} ]
/// using composite trapezoid on a log-spaced grid up to s_max, plus the
/// leading-order tail (rho - I)/s_max.
/// Throws DomainError if the smallest eigenvalue is <= 1e-8, s_max <= 0 or
/// n_points < 10.
Matrix matrix_log_integral(const DensityOperator& rho, double s_max, int n_points);

/// -sum w log w with 0 log 0 = 0.
double shannon_entropy(std::span<const double> weights, LogBase base);

double von_neumann_entropy(const DensityOperator& rho, LogBase base);

/// Umegaki relative entropy. Returns +infinity when supp(rho) is not contained
/// in supp(sigma). Throws DomainError on dimension mismatch.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma, LogBase base);

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// exp(-i H t) for Hermitian H via its eigendecomposition.
Matrix unitary_propagator(const Matrix& hamiltonian, double t);

/// Complex standard-normal vector, normalized. Deterministic in `seed`.
BipartitePureState haar_random_pure(int dim_a, int dim_b, std::uint64_t seed);

/// G G^dagger / tr for a complex Ginibre matrix G (Hilbert-Schmidt measure).
DensityOperator random_density(int dim, std::uint64_t seed, std::optional<BipartiteDims> dims = {});

}  // namespace capent
