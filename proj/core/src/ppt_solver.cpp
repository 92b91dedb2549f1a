#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "capent/errors.hpp"
#include "capent/mixed_capacity.hpp"

namespace capent {

namespace {

using M4 = Eigen::Matrix4cd;
using Solver4 = Eigen::SelfAdjointEigenSolver<M4>;
using Coords = Eigen::Matrix<double, 15, 1>;
using Hessian = Eigen::Matrix<double, 15, 15>;

constexpr double kEigenFloor = 1e-15;
constexpr double kSupportWeight = 1e-13;
constexpr double kRelevantWeight = 1e-10;
constexpr double kFloorShrink = 0.5;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr double kInitialMixing = 1e-3;

M4 hermitize(const M4& m) { return 0.5 * (m + m.adjoint()); }

M4 transpose_b(const M4& m) {
  M4 out;
  for (int ia = 0; ia < 2; ++ia)
    for (int ib = 0; ib < 2; ++ib)
      for (int ja = 0; ja < 2; ++ja)
        for (int jb = 0; jb < 2; ++jb) out(ia * 2 + jb, ja * 2 + ib) = m(ia * 2 + ib, ja * 2 + jb);
  return out;
}

double inner(const M4& a, const M4& b) { return (a.adjoint() * b).trace().real(); }

// Euclidean projection of v onto the probability simplex.
Eigen::Vector4d project_simplex(const Eigen::Vector4d& v) {
  std::array<double, 4> u{v(0), v(1), v(2), v(3)};
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) shift = candidate;
  }
  return (v.array() - shift).cwiseMax(0.0);
}

M4 project_states(const M4& m) {
  Solver4 es(hermitize(m));
  const Eigen::Vector4d w = project_simplex(es.eigenvalues());
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

M4 project_ppt_side(const M4& m) { return transpose_b(project_states(transpose_b(m))); }

// Dykstra alternating projection onto {states} and {states with PSD partial transpose}.
M4 dykstra(const M4& start, int max_iter, double tol) {
  M4 x = start;
  M4 p = M4::Zero();
  M4 q = M4::Zero();
  for (int it = 0; it < max_iter; ++it) {
    const M4 y = project_states(x + p);
    p = x + p - y;
    const M4 next = project_ppt_side(y + q);
    q = y + q - next;
    const double change = (next - x).norm();
    x = next;
    if (change < tol && (x - y).norm() < tol) break;
  }
  return hermitize(x);
}

struct Evaluation {
  double objective = 0.0;
  double support_floor = 1.0;  // smallest eigenvalue of sigma that rho weights
  M4 gradient;
};

// f(sigma) = -tr(rho ln sigma) and its gradient -U (G o U^dag rho U) U^dag,
// G the divided differences of ln on the spectrum of sigma.
Evaluation evaluate(const M4& rho, const M4& sigma, bool with_gradient) {
  Solver4 es(sigma);
  const Eigen::Vector4d s = es.eigenvalues().cwiseMax(kEigenFloor);
  const Eigen::Vector4d ls = s.array().log();
  const M4& u = es.eigenvectors();
  const M4 r = u.adjoint() * rho * u;
  Evaluation e;
  for (int i = 0; i < 4; ++i) {
    // A clipped eigenvalue carrying weight of rho leaves the domain of S(rho||.).
    if (es.eigenvalues()(i) <= kEigenFloor && r(i, i).real() > kSupportWeight) {
      e.objective = std::numeric_limits<double>::infinity();
      return e;
    }
    e.objective -= r(i, i).real() * ls(i);
    if (r(i, i).real() > kRelevantWeight) e.support_floor = std::min(e.support_floor, s(i));
  }
  if (!with_gradient) return e;
  M4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double diff = s(i) - s(j);
      const double kernel = std::abs(diff) > 1e-14 * std::max(s(i), s(j))
                                ? (ls(i) - ls(j)) / diff
                                : 2.0 / (s(i) + s(j));
      g(i, j) = -kernel * r(i, j);
    }
  e.gradient = hermitize(u * g * u.adjoint());
  return e;
}

M4 initial_point(const M4& rho) {
  const M4 dephased = rho.diagonal().real().cast<Complex>().asDiagonal();
  return (1.0 - kInitialMixing) * dephased + kInitialMixing * 0.25 * M4::Identity();
}

struct SolverRun {
  M4 sigma;
  int iterations = 0;
  double step_norm = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

SolverRun projected_gradient(const M4& r, const PptSolverOptions& opts) {
  SolverRun run;
  run.sigma = dykstra(initial_point(r), opts.projection_iter, opts.projection_tol);
  Evaluation current = evaluate(r, run.sigma, true);
  run.trace.push_back(current.objective);
  run.step_norm = std::numeric_limits<double>::infinity();
  for (; run.iterations < opts.max_iter; ++run.iterations) {
    double t = opts.step;
    bool accepted = false;
    M4 candidate;
    for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
      candidate = dykstra(run.sigma - t * current.gradient, opts.projection_iter, opts.projection_tol);
      const Evaluation trial = evaluate(r, candidate, false);
      const double decrease = inner(current.gradient, candidate - run.sigma);
      // Steps that collapse an eigenvalue rho relies on leave the objective
      // ill-conditioned; they are treated like a failed Armijo test.
      if (std::isfinite(trial.objective) &&
          trial.support_floor >= kFloorShrink * current.support_floor &&
          trial.objective <= current.objective + kArmijo * decrease) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No admissible descent within the backtracking budget.
      run.step_norm = 0.0;
      run.converged = true;
      break;
    }
    run.step_norm = (candidate - run.sigma).norm();
    run.sigma = candidate;
    current = evaluate(r, run.sigma, true);
    run.trace.push_back(current.objective);
    if (run.step_norm < opts.tol) {
      run.converged = true;
      ++run.iterations;
      break;
    }
  }
  return run;
}

// Orthonormal (Hilbert-Schmidt) basis of traceless Hermitian 4x4 matrices.
const std::array<M4, 15>& traceless_basis() {
  static const std::array<M4, 15> basis = [] {
    std::array<M4, 15> b;
    std::size_t k = 0;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        M4 sym = M4::Zero();
        sym(i, j) = sym(j, i) = inv_sqrt2;
        b[k++] = sym;
        M4 anti = M4::Zero();
        anti(i, j) = Complex(0.0, -inv_sqrt2);
        anti(j, i) = Complex(0.0, inv_sqrt2);
        b[k++] = anti;
      }
    for (int l = 1; l < 4; ++l) {
      M4 d = M4::Zero();
      const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
      for (int i = 0; i < l; ++i) d(i, i) = norm;
      d(l, l) = -l * norm;
      b[k++] = d;
    }
    return b;
  }();
  return basis;
}

M4 from_coords(const Coords& x) {
  M4 m = 0.25 * M4::Identity();
  const auto& basis = traceless_basis();
  for (int k = 0; k < 15; ++k) m += x(k) * basis[static_cast<std::size_t>(k)];
  return m;
}

Coords to_coords(const M4& m) {
  Coords x;
  const auto& basis = traceless_basis();
  for (int k = 0; k < 15; ++k) x(k) = inner(basis[static_cast<std::size_t>(k)], m);
  return x;
}

struct BarrierPoint {
  bool feasible = false;
  double value = 0.0;  // f - mu (ln det sigma + ln det sigma^T_B)
  double min_eigenvalue = 0.0;
  M4 sigma_inv;
  M4 partial_inv;  // (sigma^T_B)^{-1}
};

BarrierPoint barrier_point(const M4& r, const M4& sigma, double mu) {
  BarrierPoint b;
  Solver4 es(sigma);
  Solver4 pt(transpose_b(sigma));
  const double lo = std::min(es.eigenvalues().minCoeff(), pt.eigenvalues().minCoeff());
  if (!(lo > 0.0)) return b;
  const Evaluation f = evaluate(r, sigma, false);
  if (!std::isfinite(f.objective)) return b;
  b.feasible = true;
  b.min_eigenvalue = lo;
  const double log_det = es.eigenvalues().array().log().sum() + pt.eigenvalues().array().log().sum();
  b.value = f.objective - mu * log_det;
  b.sigma_inv = es.eigenvectors() * es.eigenvalues().cwiseInverse().cast<Complex>().asDiagonal() *
                es.eigenvectors().adjoint();
  b.partial_inv = pt.eigenvectors() * pt.eigenvalues().cwiseInverse().cast<Complex>().asDiagonal() *
                  pt.eigenvectors().adjoint();
  return b;
}

Coords barrier_gradient(const M4& r, const M4& sigma, const BarrierPoint& b, double mu) {
  const M4 g = evaluate(r, sigma, true).gradient - mu * (b.sigma_inv + transpose_b(b.partial_inv));
  return to_coords(hermitize(g));
}

Hessian barrier_hessian(const M4& r, const Coords& x, const BarrierPoint& b, double mu) {
  const auto& basis = traceless_basis();
  Hessian h;
  // Objective part by central differences of the analytic gradient.
  const double step = 1e-3 * b.min_eigenvalue;
  for (int l = 0; l < 15; ++l) {
    Coords xp = x;
    Coords xm = x;
    xp(l) += step;
    xm(l) -= step;
    const Coords gp = to_coords(evaluate(r, from_coords(xp), true).gradient);
    const Coords gm = to_coords(evaluate(r, from_coords(xm), true).gradient);
    h.col(l) = (gp - gm) / (2.0 * step);
  }
  // Barrier part analytically: mu tr(S^-1 B_k S^-1 B_l) for both determinants.
  std::array<M4, 15> a;
  std::array<M4, 15> c;
  for (std::size_t k = 0; k < 15; ++k) {
    a[k] = b.sigma_inv * basis[k];
    c[k] = b.partial_inv * transpose_b(basis[k]);
  }
  for (std::size_t k = 0; k < 15; ++k)
    for (std::size_t l = 0; l < 15; ++l) {
      h(static_cast<int>(k), static_cast<int>(l)) +=
          mu * ((a[k] * a[l]).trace().real() + (c[k] * c[l]).trace().real());
    }
  return 0.5 * (h + h.transpose());
}

SolverRun barrier_newton(const M4& r, const PptSolverOptions& opts) {
  SolverRun run;
  Coords x = to_coords(initial_point(r));
  run.converged = true;
  double mu = opts.mu_start;
  BarrierPoint point = barrier_point(r, from_coords(x), mu);
  if (!point.feasible) throw InconsistencyError("barrier start is not strictly PPT");
  run.trace.push_back(point.value);
  while (true) {
    point = barrier_point(r, from_coords(x), mu);
    bool stage_done = false;
    while (!stage_done && run.iterations < opts.max_iter) {
      const Coords g = barrier_gradient(r, from_coords(x), point, mu);
      const Hessian h = barrier_hessian(r, x, point, mu);
      Coords dx = h.ldlt().solve(-g);
      double slope = g.dot(dx);
      if (!dx.allFinite() || !(slope < 0.0)) {
        dx = -g;
        slope = -g.squaredNorm();
      }
      if (-slope <= opts.newton_tol) {
        stage_done = true;
        break;
      }
      double t = 1.0;
      bool accepted = false;
      BarrierPoint next;
      for (int bt = 0; bt < kMaxBacktracks; ++bt, t *= 0.5) {
        next = barrier_point(r, from_coords(x + t * dx), mu);
        if (next.feasible && next.value <= point.value + kArmijo * t * slope) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // Round-off floor of the stage: no representable decrease left.
        stage_done = true;
        break;
      }
      run.step_norm = (t * dx).norm();
      x += t * dx;
      point = next;
      run.trace.push_back(point.value);
      ++run.iterations;
    }
    if (!stage_done) {
      run.converged = false;
      break;
    }
    if (mu <= opts.mu_min) break;
    mu = std::max(mu * opts.mu_factor, opts.mu_min);
    // Lowering mu lowers the barrier-augmented value, keeping the trace monotone.
    run.trace.push_back(barrier_point(r, from_coords(x), mu).value);
  }
  run.sigma = hermitize(from_coords(x));
  return run;
}

}  // namespace

Matrix project_ppt_states(const Matrix& m, int max_iter, double tol) {
  if (m.rows() != 4 || m.cols() != 4) throw DomainError("PPT projection is implemented for 4x4");
  return Matrix(dykstra(M4(m), max_iter, tol));
}

SeparableApproximation closest_separable_numeric(const DensityOperator& rho,
                                                 const PptSolverOptions& opts, LogBase base) {
  if (rho.dims() != std::optional<BipartiteDims>(BipartiteDims{2, 2})) {
    throw DomainError("numeric PPT solver needs a two-qubit state");
  }
  if (opts.max_iter < 1 || !(opts.tol > 0.0) || !(opts.step > 0.0) || !(opts.mu_min > 0.0) ||
      !(opts.mu_start >= opts.mu_min) || !(opts.mu_factor > 0.0 && opts.mu_factor < 1.0) ||
      !(opts.newton_tol > 0.0)) {
    throw ConfigurationError("invalid PPT solver options");
  }
  const M4 r = rho.matrix();
  SolverRun run = opts.algorithm == PptAlgorithm::Barrier ? barrier_newton(r, opts)
                                                          : projected_gradient(r, opts);
  DensityOperator sigma_star = DensityOperator::from_matrix(Matrix(run.sigma), BipartiteDims{2, 2});
  const double er = relative_entropy(rho, sigma_star, base);
  return SeparableApproximation{std::move(sigma_star), er,           run.iterations,
                                run.step_norm,         SeparableMethod::NumericPpt,
                                run.converged,         std::move(run.trace)};
}

}  // namespace capent
