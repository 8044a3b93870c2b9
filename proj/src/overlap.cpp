#include "dholo/overlap.hpp"

#include <cmath>

#include "dholo/errors.hpp"

namespace dholo {

RSCoefficients rs_coefficients(SpinJ j, const Direction& a, const Direction& b) {
  const double half_dtheta = 0.5 * (a.theta() - b.theta());
  const double half_stheta = 0.5 * (a.theta() + b.theta());
  const double half_dphi = 0.5 * (a.phi() - b.phi());
  const Complex r_base{std::cos(half_dtheta) * std::cos(half_dphi),
                       std::cos(half_stheta) * std::sin(half_dphi)};
  const Complex s_base{std::sin(half_dtheta) * std::cos(half_dphi),
                       -std::sin(half_stheta) * std::sin(half_dphi)};
  return {ipow(r_base, j.twice_j()), ipow(s_base, j.twice_j()), j, a, b};
}

PolarDecomposition polar_unitary(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "polar decomposition needs a square matrix");
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  if (!(sigma(sigma.size() - 1) > 1e-12))
    throw Error(ErrorKind::SingularInput,
                "smallest singular value " + std::to_string(sigma(sigma.size() - 1)) + " <= 1e-12");
  const ComplexMatrix& w = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  return {w * sigma.cast<Complex>().asDiagonal() * w.adjoint(), w * v.adjoint()};
}

OverlapMatrix assemble_overlap(const RSCoefficients& rs, Complex xi, double conj_sign) {
  OverlapMatrix out;
  out.m << rs.r, xi * rs.s, conj_sign * std::conj(xi) * std::conj(rs.s), std::conj(rs.r);
  const double w = std::norm(rs.r) + std::norm(xi * rs.s);
  out.kappa = 1.0 / std::sqrt(w);
  try {
    out.u = polar_unitary(out.m).unitary;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularInput) throw;
    out.u = Matrix2::Zero();
    out.scalar_times_unitary = false;
    return out;
  }
  // M^dagger M is a multiple of the identity exactly when conj_sign = -1 (or xi = 0).
  const Matrix2 gram = out.m.adjoint() * out.m;
  out.scalar_times_unitary = (gram - w * Matrix2::Identity()).norm() <= 1e-10 * std::max(1.0, w);
  return out;
}

OverlapMatrix overlap_matrix(SpinJ j, const Direction& a, const Direction& b) {
  const double sign = (j.twice_j() % 2 == 0) ? 1.0 : -1.0;
  return assemble_overlap(rs_coefficients(j, a, b), Complex{1.0, 0.0}, sign);
}

Matrix2 overlap_bruteforce(SpinJ j, const Direction& a, const Direction& b) {
  const ComplexMatrix fa = scs_frame(j, a);
  const ComplexMatrix fb = scs_frame(j, b);
  return fa.adjoint() * fb;
}

}  // namespace dholo
