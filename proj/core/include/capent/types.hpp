#pragma once

#include <complex>

#include <Eigen/Dense>

namespace capent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Qubit = Eigen::Vector2cd;

// Numerical thresholds shared across modules.
namespace tolerance {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNegativeEigenvalue = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;  // relative to the largest eigenvalue
inline constexpr double kSpectrumSum = 1e-10;
inline constexpr double kOrthogonality = 1e-10;
inline constexpr double kInvolution = 1e-10;
}  // namespace tolerance

}  // namespace capent
