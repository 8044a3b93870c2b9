#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace dholo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces an angle into (-pi, pi].
double wrap_angle(double angle);

// Kronecker product a (x) b, with a's index most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Frobenius norm of U^dagger U - I.
double unitarity_defect(const ComplexMatrix& u);

// z^k for integer k >= 0 by repeated squaring. std::pow(complex, int) goes
// through exp/log and loses exactness at z = 0.
Complex ipow(Complex z, int k);

}  // namespace dholo
