#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace capent {

using ScalarFunction = std::function<double(double)>;

struct GridScan {
  double x = 0.0;
  double value = 0.0;
  double spacing = 0.0;
  std::size_t index = 0;
  std::size_t local_maxima = 0;  // strict interior local maxima on the grid
};

/// Evaluates f on `points` equally spaced nodes of [lo, hi] (endpoints
/// included). Throws DomainError on a non-finite evaluation.
GridScan grid_scan_max(const ScalarFunction& f, double lo, double hi, std::size_t points);

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  GridScan grid;            // the oracle scan that located the bracket
  bool grid_agrees = true;  // |x - grid.x| <= max(10 tol, grid spacing)
};

/// Golden-section maximization on [lo, hi] to bracket width `tol`. Assumes
/// the function is unimodal on the interval.
ScalarMaximum golden_section_max(const ScalarFunction& f, double lo, double hi, double tol);

/// Grid scan followed by golden-section refinement inside the bracket around
/// the best node. The grid result is kept as an oracle in the return value.
ScalarMaximum maximize_scalar(const ScalarFunction& f, double lo, double hi, double tol,
                              std::size_t grid_points = 1'000'000);

using VectorFunction = std::function<double(const std::vector<double>&)>;

struct SimplexMaximum {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead maximization from `start` with per-coordinate initial step.
/// Stops when the spread of simplex values falls below `ftol`.
SimplexMaximum nelder_mead_max(const VectorFunction& f, std::vector<double> start, double step,
                               double ftol = 1e-14, int max_iter = 20000);

}  // namespace capent
