#include "dholo/linalg.hpp"

#include <cmath>

namespace dholo {

double wrap_angle(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k)
      out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
  return out;
}

double unitarity_defect(const ComplexMatrix& u) {
  const auto n = u.cols();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm();
}

Complex ipow(Complex z, int k) {
  Complex result{1.0, 0.0};
  while (k > 0) {
    if (k & 1) result *= z;
    z *= z;
    k >>= 1;
  }
  return result;
}

}  // namespace dholo
