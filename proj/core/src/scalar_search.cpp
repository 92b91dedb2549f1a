#include "capent/scalar_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "capent/errors.hpp"

namespace capent {

namespace {

double checked(const ScalarFunction& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw DomainError("objective is not finite at x = " + std::to_string(x));
  }
  return v;
}

}  // namespace

GridScan grid_scan_max(const ScalarFunction& f, double lo, double hi, std::size_t points) {
  if (!(lo < hi)) throw DomainError("grid scan needs lo < hi");
  if (points < 3) throw DomainError("grid scan needs at least 3 points");

  GridScan out;
  out.spacing = (hi - lo) / static_cast<double>(points - 1);
  double prev2 = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + out.spacing * static_cast<double>(i);
    const double v = checked(f, x);
    if (i == 0 || v > out.value) {
      out.value = v;
      out.x = x;
      out.index = i;
    }
    if (i >= 2 && prev > prev2 && prev > v) ++out.local_maxima;
    prev2 = prev;
    prev = v;
  }
  return out;
}

ScalarMaximum golden_section_max(const ScalarFunction& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw DomainError("golden section needs lo < hi");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = checked(f, c);
  double fd = checked(f, d);

  ScalarMaximum out;
  while (b - a > tol && out.iterations < 500) {
    ++out.iterations;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = checked(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = checked(f, d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = checked(f, mid);
  out.x = mid;
  out.value = fm;
  if (fc > out.value) {
    out.x = c;
    out.value = fc;
  }
  if (fd > out.value) {
    out.x = d;
    out.value = fd;
  }
  return out;
}

ScalarMaximum maximize_scalar(const ScalarFunction& f, double lo, double hi, double tol,
                              std::size_t grid_points) {
  const GridScan grid = grid_scan_max(f, lo, hi, grid_points);
  const double a = std::max(lo, grid.x - grid.spacing);
  const double b = std::min(hi, grid.x + grid.spacing);

  ScalarMaximum out = golden_section_max(f, a, b, tol);
  if (grid.value > out.value) {
    out.x = grid.x;
    out.value = grid.value;
  }
  out.grid = grid;
  out.grid_agrees = std::abs(out.x - grid.x) <= std::max(10.0 * tol, grid.spacing);
  return out;
}

SimplexMaximum nelder_mead_max(const VectorFunction& f, std::vector<double> start, double step,
                               double ftol, int max_iter) {
  const std::size_t n = start.size();
  if (n == 0) throw DomainError("Nelder-Mead needs at least one coordinate");

  // Internally minimizes g = -f.
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = -f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexMaximum out;
  for (; out.iterations < max_iter; ++out.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best]))) {
      out.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return p;
    };

    std::vector<double> xr = along(-1.0);
    const double fr = -f(xr);
    if (fr < vals[best]) {
      std::vector<double> xe = along(-2.0);
      const double fe = -f(xe);
      if (fe < fr) {
        pts[worst] = std::move(xe);
        vals[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = std::move(xr);
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    std::vector<double> xc = along(outside ? -0.5 : 0.5);
    const double fcon = -f(xc);
    if (fcon < (outside ? fr : vals[worst])) {
      pts[worst] = std::move(xc);
      vals[worst] = fcon;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      vals[i] = -f(pts[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  out.x = pts[best];
  out.value = -vals[best];
  return out;
}

}  // namespace capent
